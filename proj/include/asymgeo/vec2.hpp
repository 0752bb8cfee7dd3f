#pragma once

#include <array>
#include <cmath>

namespace asymgeo {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double k) const { return {k * x, k * y}; }
    constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double k, Vec2 v) { return {k * v.x, k * v.y}; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double norm_inf(Vec2 v) { return std::max(std::fabs(v.x), std::fabs(v.y)); }

inline Vec2 normalized(Vec2 v) {
    const double n = norm(v);
    return {v.x / n, v.y / n};
}

inline bool finite(Vec2 v) { return std::isfinite(v.x) && std::isfinite(v.y); }

// Lexicographic order, used for deterministic tie-breaking.
constexpr bool lex_less(Vec2 a, Vec2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
}

// {x : dot(normal, x) <= offset}, normal of unit Euclidean length.
struct HalfPlane {
    Vec2 normal;
    double offset = 0.0;

    double eval(Vec2 p) const { return dot(normal, p) - offset; }
};

// Row-major 2x2 matrix for linear maps of bodies.
struct Mat2 {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    constexpr Vec2 apply(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    constexpr double det() const { return a * d - b * c; }
};

}  // namespace asymgeo

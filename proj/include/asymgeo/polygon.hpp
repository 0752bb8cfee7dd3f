#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "asymgeo/errors.hpp"
#include "asymgeo/vec2.hpp"

namespace asymgeo {

// Cross-product threshold on normalized edge vectors below which three
// consecutive vertices count as collinear.
inline constexpr double kCollinearTol = 1e-10;
// Relative distance below which two hull points are merged into one.
inline constexpr double kClusterTol = 1e-12;

namespace detail {

inline double chain_cross(Vec2 o, Vec2 a, Vec2 b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Exact monotone chain. Strictly convex turns are kept no matter how small
// the cross product is; cluster merging and collinearity removal happen in a
// separate normalization pass (tolerance-popping here can cut true corners
// when inputs contain coordinate clusters from Minkowski sums).
inline std::vector<Vec2> raw_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n < 3) throw DegenerateInput("fewer than 3 distinct points");
    std::vector<Vec2> h(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && chain_cross(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
        while (k >= t && chain_cross(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

inline double coord_scale(std::span<const Vec2> v) {
    double m = 1.0;
    for (Vec2 p : v) m = std::max(m, norm_inf(p));
    return m;
}

}  // namespace detail

// Full-dimensional convex polygon, vertices in counter-clockwise order with
// no duplicates and no three consecutive collinear vertices. Facets (minimal
// H-representation, unit outward normals) are computed once on construction.
class ConvexPolygon {
  public:
    static ConvexPolygon make(std::span<const Vec2> points) {
        for (Vec2 p : points)
            if (!finite(p)) throw DegenerateInput("non-finite coordinate");
        if (points.size() < 3) throw DegenerateInput("fewer than 3 points");
        std::vector<Vec2> v = detail::raw_hull({points.begin(), points.end()});

        const double eps = kClusterTol * detail::coord_scale(v);
        // Merge clusters of nearly identical vertices (cyclically).
        std::vector<Vec2> merged;
        for (Vec2 p : v) {
            if (!merged.empty() && norm_inf(p - merged.back()) <= eps) continue;
            merged.push_back(p);
        }
        while (merged.size() >= 2 && norm_inf(merged.front() - merged.back()) <= eps)
            merged.pop_back();

        // Drop vertices whose adjacent edges are collinear within tolerance.
        bool changed = true;
        while (changed && merged.size() >= 3) {
            changed = false;
            std::vector<Vec2> kept;
            const std::size_t m = merged.size();
            for (std::size_t i = 0; i < m; ++i) {
                const Vec2 a = merged[(i + m - 1) % m], b = merged[i], c = merged[(i + 1) % m];
                const Vec2 e1 = b - a, e2 = c - b;
                if (cross(e1, e2) / (norm(e1) * norm(e2)) <= kCollinearTol)
                    changed = true;
                else
                    kept.push_back(b);
            }
            merged.swap(kept);
        }
        if (merged.size() < 3) throw DegenerateInput("hull is lower-dimensional");

        // Canonical rotation: start at the lexicographically smallest vertex.
        auto it = std::min_element(merged.begin(), merged.end(), lex_less);
        std::rotate(merged.begin(), it, merged.end());
        return ConvexPolygon(std::move(merged));
    }

    const std::vector<Vec2>& vertices() const { return verts_; }
    const std::vector<HalfPlane>& facets() const { return facets_; }
    std::size_t size() const { return verts_.size(); }
    Vec2 vertex(std::size_t i) const { return verts_[i % verts_.size()]; }

    double area() const {
        double a = 0.0;
        for (std::size_t i = 0; i < verts_.size(); ++i)
            a += cross(verts_[i], verts_[(i + 1) % verts_.size()]);
        return 0.5 * a;
    }

    double coord_scale() const { return detail::coord_scale(verts_); }

    // Signed distance of p to the boundary in facet form: <= 0 inside.
    double facet_slack(Vec2 p) const {
        double worst = -1e300;
        for (const HalfPlane& h : facets_) worst = std::max(worst, h.eval(p));
        return worst;
    }

    bool contains(Vec2 p, double tol) const { return facet_slack(p) <= tol; }

    bool contains(const ConvexPolygon& other, double tol) const {
        for (Vec2 v : other.vertices())
            if (!contains(v, tol)) return false;
        return true;
    }

  private:
    explicit ConvexPolygon(std::vector<Vec2> verts) : verts_(std::move(verts)) {
        facets_.reserve(verts_.size());
        for (std::size_t i = 0; i < verts_.size(); ++i) {
            const Vec2 e = verts_[(i + 1) % verts_.size()] - verts_[i];
            const Vec2 n = normalized(Vec2{e.y, -e.x});
            facets_.push_back({n, dot(n, verts_[i])});
        }
    }

    std::vector<Vec2> verts_;
    std::vector<HalfPlane> facets_;
};

inline ConvexPolygon make_polygon(std::span<const Vec2> points) {
    return ConvexPolygon::make(points);
}

inline ConvexPolygon make_polygon(std::initializer_list<Vec2> points) {
    return ConvexPolygon::make(std::span<const Vec2>(points.begin(), points.size()));
}

inline double support(const ConvexPolygon& k, Vec2 u) {
    if (norm(u) < 1e-300) throw ZeroDirection();
    double best = -1e300;
    for (Vec2 v : k.vertices()) best = std::max(best, dot(u, v));
    return best;
}

inline std::vector<HalfPlane> facets(const ConvexPolygon& k) { return k.facets(); }

// ||x||_B for a gauge body B with 0 strictly interior.
inline double gauge(const ConvexPolygon& b, Vec2 x) {
    double g = 0.0;
    for (const HalfPlane& h : b.facets()) {
        if (h.offset <= 1e-9) throw OriginNotInterior();
        g = std::max(g, dot(h.normal, x) / h.offset);
    }
    return g;
}

inline ConvexPolygon reflect(const ConvexPolygon& k) {
    std::vector<Vec2> v;
    v.reserve(k.size());
    for (Vec2 p : k.vertices()) v.push_back(-p);
    return ConvexPolygon::make(v);
}

inline ConvexPolygon scale_translate(const ConvexPolygon& k, double rho, Vec2 t) {
    if (rho == 0.0 || !std::isfinite(rho)) throw SingularMap();
    std::vector<Vec2> v;
    v.reserve(k.size());
    for (Vec2 p : k.vertices()) v.push_back(rho * p + t);
    return ConvexPolygon::make(v);
}

inline ConvexPolygon translate(const ConvexPolygon& k, Vec2 t) {
    return scale_translate(k, 1.0, t);
}

inline ConvexPolygon linear_map(const ConvexPolygon& k, const Mat2& m) {
    const double sc = std::max({std::fabs(m.a), std::fabs(m.b), std::fabs(m.c), std::fabs(m.d)});
    if (std::fabs(m.det()) <= 1e-12 * sc * sc) throw SingularMap();
    std::vector<Vec2> v;
    v.reserve(k.size());
    for (Vec2 p : k.vertices()) v.push_back(m.apply(p));
    return ConvexPolygon::make(v);
}

// Minkowski sum by angular merge of the two edge cycles; O(n + m) and exact
// (every output vertex is a sum of input vertices).
inline ConvexPolygon minkowski_sum(const ConvexPolygon& k, const ConvexPolygon& c) {
    auto bottom_start = [](const std::vector<Vec2>& v) {
        std::size_t b = 0;
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i].y < v[b].y || (v[i].y == v[b].y && v[i].x < v[b].x)) b = i;
        return b;
    };
    // Edge angles unwrapped to a non-decreasing sequence starting from the
    // bottom-most vertex (first edge angle lies in [0, pi)).
    auto edge_angles = [&](const std::vector<Vec2>& v, std::size_t start) {
        std::vector<double> ang(v.size());
        double prev = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Vec2 e = v[(start + i + 1) % v.size()] - v[(start + i) % v.size()];
            double a = std::atan2(e.y, e.x);
            if (i == 0) {
                if (a < 0) a += 2 * M_PI;  // guard against -0 direction
            } else {
                while (a < prev - 1e-15) a += 2 * M_PI;
            }
            ang[i] = a;
            prev = a;
        }
        return ang;
    };

    const auto& va = k.vertices();
    const auto& vb = c.vertices();
    const std::size_t sa = bottom_start(va), sb = bottom_start(vb);
    const auto aa = edge_angles(va, sa), ab = edge_angles(vb, sb);

    std::vector<Vec2> out;
    out.reserve(va.size() + vb.size());
    std::size_t i = 0, j = 0;
    while (i < va.size() || j < vb.size()) {
        out.push_back(va[(sa + i) % va.size()] + vb[(sb + j) % vb.size()]);
        if (j == vb.size())
            ++i;
        else if (i == va.size())
            ++j;
        else if (aa[i] < ab[j] - 1e-12)
            ++i;
        else if (ab[j] < aa[i] - 1e-12)
            ++j;
        else {
            ++i;
            ++j;
        }
    }
    return ConvexPolygon::make(out);
}

namespace detail {

inline std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& poly, const HalfPlane& h,
                                        double eps) {
    std::vector<Vec2> out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 p = poly[i], q = poly[(i + 1) % n];
        const double dp = h.eval(p), dq = h.eval(q);
        if (dp <= eps) out.push_back(p);
        if ((dp < -eps && dq > eps) || (dp > eps && dq < -eps)) {
            const double t = dp / (dp - dq);
            out.push_back(p + t * (q - p));
        }
    }
    return out;
}

}  // namespace detail

// Exact intersection by half-plane clipping of k against facets(c).
inline ConvexPolygon intersect(const ConvexPolygon& k, const ConvexPolygon& c) {
    const double eps = kClusterTol * std::max(k.coord_scale(), c.coord_scale());
    std::vector<Vec2> poly = k.vertices();
    for (const HalfPlane& h : c.facets()) {
        poly = detail::clip_halfplane(poly, h, eps);
        if (poly.size() < 3) throw EmptyOrDegenerateIntersection();
    }
    try {
        return ConvexPolygon::make(poly);
    } catch (const DegenerateInput&) {
        throw EmptyOrDegenerateIntersection();
    }
}

inline ConvexPolygon convex_hull_union(const ConvexPolygon& k, const ConvexPolygon& c) {
    std::vector<Vec2> v = k.vertices();
    v.insert(v.end(), c.vertices().begin(), c.vertices().end());
    return ConvexPolygon::make(v);
}

// Polar dual K° = conv{ a/b : (a,b) in facets(K) }; requires 0 strictly
// interior (distance from 0 to every facet > 1e-9).
inline ConvexPolygon polar(const ConvexPolygon& k) {
    std::vector<Vec2> v;
    v.reserve(k.size());
    for (const HalfPlane& h : k.facets()) {
        if (h.offset <= 1e-9) throw OriginNotInterior();
        v.push_back(h.normal * (1.0 / h.offset));
    }
    return ConvexPolygon::make(v);
}

struct Crossing {
    Vec2 point;
    // False when K and -K have a common supporting normal at the point
    // (shared arc or tangential touch, the alpha(K)=1 situation).
    bool transversal = true;
};

struct BoundaryCrossings {
    std::vector<Crossing> points;  // sorted by polar angle
    bool shared_boundary = false;  // some boundary arc of positive length is shared

    std::size_t transversal_count() const {
        std::size_t n = 0;
        for (const Crossing& c : points) n += c.transversal ? 1 : 0;
        return n;
    }
};

namespace detail {

// Outward normal directions (angles) of supporting half-planes at a boundary
// point: one angle on an edge interior, the two adjacent facet angles at a
// vertex.
inline std::vector<double> normal_cone_angles(const ConvexPolygon& k, Vec2 p, double eps) {
    std::vector<double> angs;
    const auto& fs = k.facets();
    for (const HalfPlane& h : fs)
        if (std::fabs(h.eval(p)) <= eps) angs.push_back(std::atan2(h.normal.y, h.normal.x));
    return angs;
}

inline double ang_diff(double a, double b) {
    double d = std::fabs(a - b);
    while (d > M_PI) d = std::fabs(d - 2 * M_PI);
    return d;
}

// True when the two normal cones (given by their extreme angles) share a
// direction within tolerance. Cones at convex boundary points span < pi.
inline bool cones_overlap(const std::vector<double>& a, const std::vector<double>& b,
                          double tol) {
    if (a.empty() || b.empty()) return false;
    auto span = [](const std::vector<double>& v) {
        double lo = v[0], width = 0.0;
        for (double x : v) {
            double d = x - lo;
            while (d > M_PI) d -= 2 * M_PI;
            while (d < -M_PI) d += 2 * M_PI;
            if (d < 0) {
                lo = x;
                width -= d;
            } else {
                width = std::max(width, d);
            }
        }
        return std::pair<double, double>(lo, width);
    };
    const auto [alo, aw] = span(a);
    const auto [blo, bw] = span(b);
    // Distance from interval [alo, alo+aw] to [blo, blo+bw] on the circle.
    double d = blo - alo;
    while (d > M_PI) d -= 2 * M_PI;
    while (d < -M_PI) d += 2 * M_PI;
    double gap;
    if (d >= 0)
        gap = d - aw;
    else
        gap = -d - bw;
    return gap <= tol;
}

}  // namespace detail

// All points of bd(K) cap bd(-K), each reported once and sorted by polar
// angle. Caller is responsible for K being Minkowski centered.
inline BoundaryCrossings boundary_crossings(const ConvexPolygon& k) {
    const ConvexPolygon mk = reflect(k);
    const double scale = k.coord_scale();
    const double eps = 1e-9 * scale;

    BoundaryCrossings res;
    std::vector<Vec2> cand;

    const auto& va = k.vertices();
    const auto& vb = mk.vertices();
    for (std::size_t i = 0; i < va.size(); ++i) {
        const Vec2 p = va[i], r = va[(i + 1) % va.size()] - p;
        for (std::size_t j = 0; j < vb.size(); ++j) {
            const Vec2 q = vb[j], s = vb[(j + 1) % vb.size()] - q;
            const double den = cross(r, s);
            if (std::fabs(den) <= 1e-14 * norm(r) * norm(s)) {
                // Parallel: a shared collinear overlap of positive length?
                if (std::fabs(cross(q - p, r)) <= eps * norm(r)) {
                    const double rr = dot(r, r);
                    double t0 = dot(q - p, r) / rr, t1 = dot(q + s - p, r) / rr;
                    if (t0 > t1) std::swap(t0, t1);
                    if (std::min(1.0, t1) - std::max(0.0, t0) > 1e-9)
                        res.shared_boundary = true;
                }
                continue;
            }
            const double t = cross(q - p, s) / den;
            const double u = cross(q - p, r) / den;
            if (t >= -1e-9 && t <= 1 + 1e-9 && u >= -1e-9 && u <= 1 + 1e-9)
                cand.push_back(p + t * r);
        }
    }
    // Vertices lying on the other boundary (covers endpoints of shared arcs).
    for (Vec2 v : va)
        if (std::fabs(mk.facet_slack(v)) <= eps) cand.push_back(v);
    for (Vec2 v : vb)
        if (std::fabs(k.facet_slack(v)) <= eps) cand.push_back(v);

    std::vector<Vec2> uniq;
    for (Vec2 p : cand) {
        bool dup = false;
        for (Vec2 q : uniq)
            if (norm(p - q) <= 10 * eps) {
                dup = true;
                break;
            }
        if (!dup) uniq.push_back(p);
    }
    std::sort(uniq.begin(), uniq.end(),
              [](Vec2 a, Vec2 b) { return std::atan2(a.y, a.x) < std::atan2(b.y, b.x); });

    for (Vec2 p : uniq) {
        const auto ca = detail::normal_cone_angles(k, p, eps);
        const auto cb = detail::normal_cone_angles(mk, p, eps);
        const bool shared = detail::cones_overlap(ca, cb, 1e-9);
        res.points.push_back({p, !shared});
    }
    return res;
}

// Cyclic vertex-list equality within a coordinate tolerance.
inline bool same_polygon(const ConvexPolygon& a, const ConvexPolygon& b, double tol) {
    if (a.size() != b.size()) return false;
    const auto& va = a.vertices();
    const auto& vb = b.vertices();
    const std::size_t n = va.size();
    for (std::size_t shift = 0; shift < n; ++shift) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            ok = norm_inf(va[i] - vb[(i + shift) % n]) <= tol;
        if (ok) return true;
    }
    return false;
}

}  // namespace asymgeo

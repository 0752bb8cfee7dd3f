#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "asymgeo/errors.hpp"
#include "asymgeo/polygon.hpp"

namespace asymgeo {

enum class SampleMode { UnitCircleHull, GaussianHull };

struct RandomPolygonSpec {
    std::uint64_t seed = 0;
    int num_vertices = 8;  // in [3, 64]
    SampleMode mode = SampleMode::UnitCircleHull;
};

// Explicit 64-bit generator (splitmix64) so that identical specs yield
// identical polygons on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller.
    double gaussian() {
        const double u1 = (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

  private:
    std::uint64_t state_;
};

inline ConvexPolygon random_polygon(const RandomPolygonSpec& spec) {
    if (spec.num_vertices < 3 || spec.num_vertices > 64)
        throw OutOfDomain("random_polygon: num_vertices outside [3, 64]");
    Rng rng(spec.seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<Vec2> pts;
        pts.reserve(spec.num_vertices);
        for (int i = 0; i < spec.num_vertices; ++i) {
            if (spec.mode == SampleMode::UnitCircleHull) {
                const double th = rng.uniform(0.0, 2.0 * M_PI);
                pts.push_back({std::cos(th), std::sin(th)});
            } else {
                pts.push_back({rng.gaussian(), rng.gaussian()});
            }
        }
        try {
            return make_polygon(pts);
        } catch (const DegenerateInput&) {
            continue;  // resample from the same stream
        }
    }
    throw DegenerateInput("random_polygon: could not sample a full-dimensional hull");
}

}  // namespace asymgeo

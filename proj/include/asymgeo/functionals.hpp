#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "asymgeo/errors.hpp"
#include "asymgeo/lp.hpp"
#include "asymgeo/polygon.hpp"

namespace asymgeo {

inline constexpr double kCenterTol = 1e-7;

struct TouchingPoint {
    Vec2 point;
    Vec2 normal;  // outer normal of a supporting half-plane at the point
};

// Optimal scale rho and translation t with K subset t + rho C, plus the
// touching certificate of the optimality characterization (0 lies in the
// convex hull of the touching normals).
struct ContainmentResult {
    double rho = 0;
    Vec2 translation;
    std::vector<TouchingPoint> touching;

    // Convex-combination witness for 0 over the touching normals.
    std::vector<double> normal_weights;

    bool certificate_ok(double tol = 1e-8) const {
        if (touching.empty() || normal_weights.size() != touching.size()) return false;
        Vec2 sum{0, 0};
        double total = 0;
        for (std::size_t i = 0; i < touching.size(); ++i) {
            if (normal_weights[i] < -tol) return false;
            sum = sum + normal_weights[i] * touching[i].normal;
            total += normal_weights[i];
        }
        if (total <= tol) return false;
        return norm(sum) / total <= tol;
    }
};

struct AsymmetryResult {
    double s = 1;
    Vec2 center;
    std::vector<Vec2> asym_points;   // on bd(K) cap -(1/s) bd(K), after centering
    std::vector<Vec2> asym_normals;  // outer normals of K at the asymmetry points
    bool well_spread = false;        // 0 interior to conv(asym_points) and
                                     // 0 in conv(asym_normals); checked for s > 1
};

struct PseudoCompleteReport {
    bool is_pseudo_complete = false;
    double r = 0, R = 0, D = 0, w = 0, s = 1;
    std::array<double, 3> residuals{0, 0, 0};
    bool sandwich_ok = false;  // (K-K)/2 subset (D/2) C subset (s+1)/2 (K-c)
};

namespace fdetail {

struct Instance {
    LinearProgram lp;
    // constraint index -> (facet index, vertex index)
    std::vector<std::pair<int, int>> tag;
};

inline LpSolution solve_checked(const LinearProgram& lp, const char* what) {
    LpSolution sol = solve(lp);
    if (sol.status != LpStatus::Optimal)
        throw GeomError(std::string("containment LP unexpectedly ") +
                        (sol.status == LpStatus::Infeasible ? "infeasible" : "unbounded") +
                        " in " + what);
    return sol;
}

}  // namespace fdetail

// R(K, C): smallest rho such that K fits in t + rho C for some translation t.
// One LP over (t, rho): a.(v - t) <= rho b for every vertex v of K and facet
// (a, b) of C.
inline ContainmentResult circumradius(const ConvexPolygon& k, const ConvexPolygon& c) {
    fdetail::Instance in;
    in.lp.num_vars = 3;
    in.lp.objective = {0, 0, 1};
    const auto& fs = c.facets();
    const auto& vs = k.vertices();
    for (std::size_t j = 0; j < fs.size(); ++j)
        for (std::size_t i = 0; i < vs.size(); ++i) {
            in.lp.constraints.push_back(
                {{-fs[j].normal.x, -fs[j].normal.y, -fs[j].offset}, -dot(fs[j].normal, vs[i])});
            in.tag.emplace_back(static_cast<int>(j), static_cast<int>(i));
        }
    const LpSolution sol = fdetail::solve_checked(in.lp, "circumradius");

    ContainmentResult res;
    res.translation = {sol.point[0], sol.point[1]};
    res.rho = sol.point[2];
    for (const auto& [ci, lam] : sol.dual) {
        const auto [j, i] = in.tag[ci];
        res.touching.push_back({vs[i], fs[j].normal});
        res.normal_weights.push_back(lam);
    }
    return res;
}

// r(K, C): largest rho such that t + rho C fits in K.
inline ContainmentResult inradius(const ConvexPolygon& k, const ConvexPolygon& c) {
    fdetail::Instance in;
    in.lp.num_vars = 3;
    in.lp.objective = {0, 0, -1};
    const auto& fs = k.facets();
    const auto& us = c.vertices();
    for (std::size_t j = 0; j < fs.size(); ++j)
        for (std::size_t i = 0; i < us.size(); ++i) {
            in.lp.constraints.push_back(
                {{fs[j].normal.x, fs[j].normal.y, dot(fs[j].normal, us[i])}, fs[j].offset});
            in.tag.emplace_back(static_cast<int>(j), static_cast<int>(i));
        }
    in.lp.constraints.push_back({{0, 0, -1}, 0});  // rho >= 0
    in.tag.emplace_back(-1, -1);
    const LpSolution sol = fdetail::solve_checked(in.lp, "inradius");

    ContainmentResult res;
    res.translation = {sol.point[0], sol.point[1]};
    res.rho = sol.point[2];
    for (const auto& [ci, lam] : sol.dual) {
        const auto [j, i] = in.tag[ci];
        if (j < 0) continue;
        res.touching.push_back({res.translation + res.rho * us[i], fs[j].normal});
        res.normal_weights.push_back(lam);
    }
    return res;
}

inline double diameter(const ConvexPolygon& k, const ConvexPolygon& c) {
    return 2 * circumradius(minkowski_sum(k, reflect(k)), minkowski_sum(c, reflect(c))).rho;
}

inline double width(const ConvexPolygon& k, const ConvexPolygon& c) {
    return 2 * inradius(minkowski_sum(k, reflect(k)), minkowski_sum(c, reflect(c))).rho;
}

// Minkowski asymmetry s(K) = inf{rho : K - c subset rho (c - K)} as a single
// LP in (d, s) with d = (s+1)c: the containment is equivalent to
// a_j . d <= s b_j + a_j . v_i over facets (a_j, b_j) and vertices v_i of K.
inline AsymmetryResult asymmetry(const ConvexPolygon& k) {
    fdetail::Instance in;
    in.lp.num_vars = 3;
    in.lp.objective = {0, 0, 1};
    const auto& fs = k.facets();
    const auto& vs = k.vertices();
    for (std::size_t j = 0; j < fs.size(); ++j)
        for (std::size_t i = 0; i < vs.size(); ++i) {
            in.lp.constraints.push_back(
                {{fs[j].normal.x, fs[j].normal.y, -fs[j].offset}, dot(fs[j].normal, vs[i])});
            in.tag.emplace_back(static_cast<int>(j), static_cast<int>(i));
        }
    const LpSolution sol = fdetail::solve_checked(in.lp, "asymmetry");

    AsymmetryResult res;
    res.s = sol.point[2];
    res.center = Vec2{sol.point[0], sol.point[1]} * (1.0 / (1.0 + res.s));
    for (const auto& [ci, lam] : sol.dual) {
        (void)lam;
        const auto [j, i] = in.tag[ci];
        res.asym_points.push_back((res.center - vs[i]) * (1.0 / res.s));
        res.asym_normals.push_back(fs[j].normal);
    }

    if (res.s > 1 + 1e-6) {
        const double margin = 1e-8;
        auto well_spread = [&](const std::vector<Vec2>& p, const std::vector<Vec2>& nn) {
            if (p.size() != 3) return false;
            const double a0 = cross(p[1] - p[0], p[2] - p[0]);
            if (std::fabs(a0) < margin) return false;
            // 0 strictly inside conv(p): all three sub-triangle areas share the sign.
            const double t0 = cross(p[0], p[1]), t1 = cross(p[1], p[2]), t2 = cross(p[2], p[0]);
            const double sgn = a0 > 0 ? 1.0 : -1.0;
            if (sgn * t0 < margin || sgn * t1 < margin || sgn * t2 < margin) return false;
            // 0 in conv(nn).
            const double n0 = cross(nn[0], nn[1]), n1 = cross(nn[1], nn[2]),
                         n2 = cross(nn[2], nn[0]);
            const double ns = cross(nn[1] - nn[0], nn[2] - nn[0]) > 0 ? 1.0 : -1.0;
            return ns * n0 >= -margin && ns * n1 >= -margin && ns * n2 >= -margin;
        };
        if (well_spread(res.asym_points, res.asym_normals)) {
            res.well_spread = true;
        } else {
            // Degenerate tight set: search the tight constraints for a
            // well-spread triple (deterministic order).
            std::vector<std::pair<int, int>> cand;
            for (int ci : sol.tight_set) cand.push_back(in.tag[ci]);
            if (cand.size() > 24) cand.resize(24);
            const int m = static_cast<int>(cand.size());
            for (int a = 0; a < m && !res.well_spread; ++a)
                for (int b = a + 1; b < m && !res.well_spread; ++b)
                    for (int c2 = b + 1; c2 < m && !res.well_spread; ++c2) {
                        std::vector<Vec2> p, nn;
                        for (int t : {a, b, c2}) {
                            p.push_back((res.center - vs[cand[t].second]) * (1.0 / res.s));
                            nn.push_back(fs[cand[t].first].normal);
                        }
                        if (well_spread(p, nn)) {
                            res.asym_points = p;
                            res.asym_normals = nn;
                            res.well_spread = true;
                        }
                    }
        }
    }
    return res;
}

inline Vec2 minkowski_center(const ConvexPolygon& k) { return asymmetry(k).center; }

inline ConvexPolygon centered(const ConvexPolygon& k) {
    return translate(k, -minkowski_center(k));
}

namespace fdetail {

inline void require_centered(const ConvexPolygon& k, const char* op) {
    const AsymmetryResult a = asymmetry(k);
    if (norm(a.center) > kCenterTol * std::max(1.0, k.coord_scale()))
        throw NotCentered(std::string(op) + ": body is not Minkowski centered");
}

}  // namespace fdetail

struct TauResult {
    double tau = 1;
    double s = 1;
    Vec2 attained_at;  // lexicographically smallest attaining vertex of K cap -K
};

// tau(K) for Minkowski centered K. Both K cap (-K) and (K-K)/2 are
// 0-symmetric, so the optimal containment needs no translation: if K cap (-K)
// fits in t + rho (K-K)/2, applying the same containment to the reflected
// body and averaging gives the containment at t = 0 with the same rho. That
// reduces tau to a gauge maximum over the vertices of K cap (-K); a property
// test cross-checks against the translating LP.
inline TauResult tau_detail(const ConvexPolygon& k) {
    const AsymmetryResult a = asymmetry(k);
    if (norm(a.center) > kCenterTol * std::max(1.0, k.coord_scale()))
        throw NotCentered("tau: body is not Minkowski centered");
    const ConvexPolygon mk = reflect(k);
    const ConvexPolygon mi = intersect(k, mk);
    const ConvexPolygon am = scale_translate(minkowski_sum(k, mk), 0.5, {0, 0});
    TauResult res;
    res.s = a.s;
    res.tau = 0;
    for (Vec2 v : mi.vertices()) {
        const double g = gauge(am, v);
        if (g > res.tau + 1e-12 ||
            (std::fabs(g - res.tau) <= 1e-12 && lex_less(v, res.attained_at))) {
            res.tau = g;
            res.attained_at = v;
        }
    }
    return res;
}

inline double tau(const ConvexPolygon& k) { return tau_detail(k).tau; }

// rho(v) with rho(v) v on bd((K-K)/2) for v normalized to bd(K cap -K);
// 1/tau(K) equals the minimum of rho over that boundary.
inline double rho_of_direction(const ConvexPolygon& k, Vec2 v) {
    if (norm(v) < 1e-300) throw ZeroDirection();
    fdetail::require_centered(k, "rho_of_direction");
    const ConvexPolygon mk = reflect(k);
    const ConvexPolygon mi = intersect(k, mk);
    const ConvexPolygon am = scale_translate(minkowski_sum(k, mk), 0.5, {0, 0});
    const Vec2 vb = v * (1.0 / gauge(mi, v));
    return 1.0 / gauge(am, vb);
}

// alpha(K) = R(K cap (-K), conv(K cup (-K))), translation-free as for tau.
inline double alpha(const ConvexPolygon& k) {
    fdetail::require_centered(k, "alpha");
    const ConvexPolygon mk = reflect(k);
    const ConvexPolygon mi = intersect(k, mk);
    const ConvexPolygon mx = convex_hull_union(k, mk);
    double a = 0;
    for (Vec2 v : mi.vertices()) a = std::max(a, gauge(mx, v));
    return a;
}

// gamma(K) = tau(K°) (polarity swaps the minimum/maximum pair with the
// harmonic/arithmetic means).
inline double gamma(const ConvexPolygon& k) {
    fdetail::require_centered(k, "gamma");
    return tau(polar(k));
}

struct OptimalContainment {
    bool optimal = false;
    ContainmentResult certificate;
};

inline OptimalContainment optimal_containment_check(const ConvexPolygon& k,
                                                    const ConvexPolygon& c) {
    const double tol = 1e-9 * std::max(k.coord_scale(), c.coord_scale());
    if (!c.contains(k, tol)) throw NotContained();
    OptimalContainment res;
    res.certificate = circumradius(k, c);
    res.optimal = std::fabs(res.certificate.rho - 1.0) <= 1e-7;
    return res;
}

// Prop.-style pseudo-completeness test: (s+1) r = r + R = (s+1)/s R = D,
// reported as three pairwise residual gaps.
inline PseudoCompleteReport pseudo_complete_check(const ConvexPolygon& k,
                                                  const ConvexPolygon& c,
                                                  double tol = 1e-7) {
    if (!same_polygon(c, reflect(c), 1e-8 * c.coord_scale())) throw GaugeNotSymmetric();

    PseudoCompleteReport rep;
    const AsymmetryResult a = asymmetry(k);
    rep.s = a.s;
    rep.r = inradius(k, c).rho;
    rep.R = circumradius(k, c).rho;
    rep.D = diameter(k, c);
    rep.w = width(k, c);
    rep.residuals = {std::fabs((rep.s + 1) * rep.r - (rep.r + rep.R)),
                     std::fabs((rep.r + rep.R) - (rep.s + 1) / rep.s * rep.R),
                     std::fabs((rep.s + 1) / rep.s * rep.R - rep.D)};
    const double scale = std::max(1.0, rep.D);
    rep.is_pseudo_complete =
        std::max({rep.residuals[0], rep.residuals[1], rep.residuals[2]}) <= tol * scale;

    if (rep.is_pseudo_complete) {
        const ConvexPolygon kc = translate(k, -a.center);
        const ConvexPolygon am = scale_translate(minkowski_sum(kc, reflect(kc)), 0.5, {0, 0});
        const ConvexPolygon cd = scale_translate(c, 0.5 * rep.D, {0, 0});
        const ConvexPolygon ks = scale_translate(kc, 0.5 * (rep.s + 1), {0, 0});
        const double ctol = 1e-7 * std::max(1.0, cd.coord_scale());
        rep.sandwich_ok = cd.contains(am, ctol) && ks.contains(cd, ctol);
    }
    return rep;
}

}  // namespace asymgeo

#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "asymgeo/bounds.hpp"
#include "asymgeo/errors.hpp"
#include "asymgeo/functionals.hpp"
#include "asymgeo/polygon.hpp"

namespace asymgeo {
namespace extremal {

// Pentagon attaining the diameter-width peak: s = phi, tau = alpha = 1.
inline ConvexPolygon golden_house() {
    const double phi = bounds::phi();
    return make_polygon({{1, 0}, {-1, 0}, {1, -1}, {-1, -1}, {0, phi}});
}

// Regular Minkowski centered triangle with circumradius 1 and apex up. Any
// regular triangle works up to a linear map; fixing one keeps tests
// deterministic.
inline ConvexPolygon regular_triangle() {
    const double h = std::sqrt(3.0) / 2.0;
    return make_polygon({{0, 1}, {h, -0.5}, {-h, -0.5}});
}

// K_s = S cap (-s S): Minkowski centered with s(K_s) = s and
// tau(K_s) = alpha(K_s) = 2/(s+1).
inline ConvexPolygon k_s(double s) {
    if (!(s >= 1.0 - 1e-12 && s <= 2.0 + 1e-12)) throw OutOfDomain("k_s: s outside [1, 2]");
    s = std::clamp(s, 1.0, 2.0);
    const ConvexPolygon tri = regular_triangle();
    return intersect(tri, scale_translate(tri, -s, {0, 0}));
}

namespace edetail {

inline ConvexPolygon from_halfplanes(const std::vector<HalfPlane>& hps, double box = 16.0) {
    std::vector<Vec2> poly{{-box, -box}, {box, -box}, {box, box}, {-box, box}};
    for (const HalfPlane& h : hps) {
        poly = detail::clip_halfplane(poly, h, 1e-12 * box);
        if (poly.size() < 3) throw EmptyOrDegenerateIntersection();
    }
    return ConvexPolygon::make(poly);
}

inline Vec2 line_line(Vec2 a, Vec2 u, Vec2 b, Vec2 v) {
    const double den = cross(u, v);
    if (std::fabs(den) <= 1e-13 * norm(u) * norm(v))
        throw GeomError("lines nearly parallel in construction");
    const double t = cross(b - a, v) / den;
    return a + t * u;
}

}  // namespace edetail

// Continuous deformation of K_s with constant asymmetry. The asymmetry
// points -p1/2, -q2/s, -q3/s stay put; for t in [0, 1/2] the two edges cut
// from -sS rotate around q2, q3 until vertical, for t in [1/2, 1] the two
// upper triangle edges rotate around -q3/s, -q2/s until they meet in the
// apex (0, s/2). Rotation angles interpolate linearly in t on each half.
inline ConvexPolygon f_transform(double s, double t) {
    if (!(s >= 1.0 - 1e-12 && s <= 2.0 + 1e-12)) throw OutOfDomain("f_transform: s outside [1, 2]");
    if (!(t >= -1e-12 && t <= 1.0 + 1e-12)) throw OutOfDomain("f_transform: t outside [0, 1]");
    s = std::clamp(s, 1.0, 2.0);
    t = std::clamp(t, 0.0, 1.0);
    const double r3 = std::sqrt(3.0);
    const double q2x = (2 * s - 1) / (2 * r3);

    std::vector<HalfPlane> hps;
    hps.push_back({{0, 1}, s / 2});    // top edge of -sS
    hps.push_back({{0, -1}, 0.5});     // bottom edge of S
    if (t <= 0.5) {
        hps.push_back({{r3 / 2, 0.5}, 0.5});   // upper-right edge of S
        hps.push_back({{-r3 / 2, 0.5}, 0.5});  // upper-left edge of S
        const double th = -M_PI / 6 + (M_PI / 6) * (2 * t);
        const Vec2 q2{q2x, -0.5};
        for (double sgn : {1.0, -1.0}) {
            const Vec2 n{sgn * std::cos(th), std::sin(th)};
            const Vec2 pivot{sgn * q2.x, q2.y};
            hps.push_back({n, dot(n, pivot)});
        }
    } else {
        hps.push_back({{1, 0}, q2x});
        hps.push_back({{-1, 0}, q2x});
        const Vec2 pivot{(2 * s - 1) / (2 * s * r3), 1 / (2 * s)};  // -q3/s
        const double th0 = M_PI / 6;
        const Vec2 nf{(s * s - 1) / (2 * s), (2 * s - 1) / (2 * s * r3)};
        const double th1 = std::atan2(nf.y, nf.x);
        const double th = th0 + (th1 - th0) * (2 * t - 1);
        for (double sgn : {1.0, -1.0}) {
            const Vec2 n{sgn * std::cos(th), std::sin(th)};
            const Vec2 pv{sgn * pivot.x, pivot.y};
            hps.push_back({n, dot(n, pv)});
        }
    }
    return edetail::from_halfplanes(hps);
}

// Coordinates of the extremal heptagon family, following the normalization
// aff({s p2, -s p3}) = {x = 1} with p = (alpha, 0).
struct HeptagonParams {
    double tau = 1, nu = 1;
    double alphaParam = 1;  // scalar coordinate of p; distinct from the functional alpha(K)
    double s = 1;
    double gammaParam = 0;  // -gammaParam d1 is the asymmetry point opposite the apex
    Vec2 d1, d2, d3;
};

inline std::pair<ConvexPolygon, HeptagonParams> heptagon(double tau, double nu) {
    if (!(tau >= 2.0 / 3.0 - 1e-12 && tau <= 1.0 + 1e-12))
        throw OutOfDomain("heptagon: tau outside [2/3, 1]");
    tau = std::clamp(tau, 2.0 / 3.0, 1.0);
    if (!(nu > 0 && nu <= 1.0 + 1e-9)) throw OutOfDomain("heptagon: nu outside (0, 1]");
    nu = std::min(nu, 1.0);
    const double nu_lo = std::max(bounds::nu_star(tau), bounds::nu_plus(tau));
    if (nu < nu_lo - 1e-9) throw InfeasibleParams("heptagon: nu below max(nu*, nu+)");
    nu = std::max(nu, nu_lo);

    HeptagonParams hp;
    hp.tau = tau;
    hp.nu = nu;
    const double ti = 1.0 / tau;
    hp.s = bounds::s_of_tau_nu(tau, nu);
    hp.alphaParam = (1 + nu) / (2 * ti + nu - 1);
    const double s = hp.s, al = hp.alphaParam;
    const double sa1 = s * al - 1;
    hp.d1 = {al * (nu - 1) / (nu + 1), -2 * s * al * nu / (sa1 * (nu + 1))};
    hp.d2 = {-1, s * (1 - al) / sa1};
    hp.d3 = {1, s * nu * (1 - al) / sa1};
    const double inv_gamma = (2 * al / ((nu + 1) * (nu + 1))) * (2 * nu / sa1 - (nu - 1) * (nu - 1) / 2);
    hp.gammaParam = 1.0 / inv_gamma;
    if (s * hp.gammaParam > 1 + 1e-9)
        throw InfeasibleParams("heptagon: s*gamma exceeds 1");

    const Vec2 p{al, 0};
    const Vec2 p2{1 / s, -nu}, p3{-1 / s, -1};
    const Vec2 msp1 = (s * hp.gammaParam) * hp.d1;
    const Vec2 msp2{-1, s * nu}, msp3{1, s};
    ConvexPolygon body = make_polygon({p, -p, p2, p3, msp1, msp2, msp3});
    return {std::move(body), hp};
}

namespace edetail {

inline void verify_generated(const ConvexPolygon& body, double s_target, double tau_target,
                             const char* who) {
    const TauResult tr = tau_detail(body);
    if (std::fabs(tr.tau - tau_target) > 1e-6 || std::fabs(tr.s - s_target) > 1e-6)
        throw OutOfRegion(std::string(who) + ": generated body failed oracle verification");
}

}  // namespace edetail

// Minkowski centered body with prescribed (s, tau) anywhere in the region of
// the planar tau bounds. Below the curve min{1, s/(s^2-1)} the f-transform
// reaches the target by continuity (bisection on measured tau); above it the
// heptagon family does, with nu solving s(tau, nu) = s on the decreasing
// piece [max(nu*, nu+), 1].
inline ConvexPolygon extremal_for(double s, double tau) {
    if (!bounds::tau_region_contains(s, tau)) throw OutOfRegion("extremal_for: (s, tau)");
    s = std::clamp(s, 1.0, 2.0);
    if (s <= 1 + 1e-9) return k_s(1.0);  // region degenerates to tau = 1

    const double low_curve = std::min(1.0, s / (s * s - 1));
    if (tau <= low_curve + 1e-12) {
        double lo = 0.0, hi = 1.0;
        for (int i = 0; i < 80; ++i) {
            const double m = 0.5 * (lo + hi);
            if (asymgeo::tau(f_transform(s, m)) < tau)
                lo = m;
            else
                hi = m;
        }
        ConvexPolygon body = f_transform(s, 0.5 * (lo + hi));
        edetail::verify_generated(body, s, tau, "extremal_for(f)");
        return body;
    }

    const double nu_lo = std::max(bounds::nu_star(tau), bounds::nu_plus(tau));
    double lo = nu_lo, hi = 1.0;
    for (int i = 0; i < 80; ++i) {
        const double m = 0.5 * (lo + hi);
        if (bounds::s_of_tau_nu(tau, m) > s)
            lo = m;
        else
            hi = m;
    }
    ConvexPolygon body = heptagon(tau, 0.5 * (lo + hi)).first;
    edetail::verify_generated(body, s, tau, "extremal_for(heptagon)");
    return body;
}

// C_lambda = (1-lambda) (K-K)/2 + lambda (s+1)/2 (K cap -K): the gauge sweep
// making K pseudo-complete with D(K, C_lambda) = 2 throughout.
inline ConvexPolygon c_lambda(const ConvexPolygon& k, double lambda) {
    if (!(lambda >= -1e-12 && lambda <= 1 + 1e-12)) throw OutOfDomain("c_lambda: lambda");
    lambda = std::clamp(lambda, 0.0, 1.0);
    const AsymmetryResult a = asymmetry(k);
    if (norm(a.center) > kCenterTol * std::max(1.0, k.coord_scale()))
        throw NotCentered("c_lambda: body is not Minkowski centered");
    const ConvexPolygon am = scale_translate(minkowski_sum(k, reflect(k)), 0.5, {0, 0});
    const ConvexPolygon mi = intersect(k, reflect(k));
    const double f = lambda * (a.s + 1) / 2;
    if (lambda <= 1e-12) return am;
    if (lambda >= 1 - 1e-12) return scale_translate(mi, f, {0, 0});
    return minkowski_sum(scale_translate(am, 1 - lambda, {0, 0}),
                         scale_translate(mi, f, {0, 0}));
}

// Witness pair (K, C) with K pseudo-complete w.r.t. C and D/w = rho: K is the
// maximal-tau body at asymmetry s, lambda found by bisection on measured D/w.
inline std::pair<ConvexPolygon, ConvexPolygon> dw_witness(double s, double rho) {
    if (!bounds::dw_region_contains(s, rho)) throw OutOfRegion("dw_witness: (s, rho)");
    const ConvexPolygon k = extremal_for(s, bounds::c_of_s(s));
    auto ratio = [&](double lam) {
        const ConvexPolygon c = c_lambda(k, lam);
        return diameter(k, c) / width(k, c);
    };
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 80 && hi - lo > 1e-15; ++i) {
        const double m = 0.5 * (lo + hi);
        if (ratio(m) < rho)
            lo = m;
        else
            hi = m;
    }
    const ConvexPolygon c = c_lambda(k, 0.5 * (lo + hi));
    const PseudoCompleteReport rep = pseudo_complete_check(k, c);
    if (!rep.is_pseudo_complete || std::fabs(rep.D / rep.w - rho) > 1e-5)
        throw OutOfRegion("dw_witness: verification failed");
    return {k, c};
}

struct CanonStep {
    std::string name;
    double s = 1;
    double tau = 1;
    ConvexPolygon body;
};

struct CanonResult {
    ConvexPolygon body;
    std::vector<CanonStep> trace;
};

namespace edetail {

struct Spike {
    int gap = -1;     // between crossing g and g+1 (mod 6)
    Vec2 asym_point;  // p^i, on bd(K) after centering
    Vec2 vertex;      // -s p^i, vertex of the body
};

inline double tau_centered_no_check(const ConvexPolygon& k) {
    const ConvexPolygon mk = reflect(k);
    const ConvexPolygon mi = intersect(k, mk);
    const ConvexPolygon am = scale_translate(minkowski_sum(k, mk), 0.5, {0, 0});
    double t = 0;
    for (Vec2 v : mi.vertices()) t = std::max(t, gauge(am, v));
    return t;
}

}  // namespace edetail

// Reduction of a Minkowski centered body with s(K) > phi to the canonical
// heptagon with equal asymmetry and no smaller tau. Steps:
//   cut_to_core:      conv((K cap -K) cup {-s p^i})
//   shrink_spikes:    pull each -s p^i onto the ray hitting the crossing chord
//   slide_spikes:     move the two spikes flanking the tau-attaining crossing
//                     onto the line through the opposite crossing pair
//   restrict_vertices: keep only {-s p^i, p^2, p^3, +-p}
//   align_apex:       put the remaining spike on the ray of -d1
// Every step keeps s fixed (checked to 1e-7) and never decreases tau
// (checked to 1e-9).
inline CanonResult canonicalize(const ConvexPolygon& input) {
    const AsymmetryResult a0 = asymmetry(input);
    if (norm(a0.center) > kCenterTol * std::max(1.0, input.coord_scale()))
        throw NotCentered("canonicalize: body is not Minkowski centered");
    const double s = a0.s;
    if (s <= bounds::phi() + 1e-6) throw AsymmetryTooSmall();
    if (!a0.well_spread) throw GeomError("canonicalize: no well-spread asymmetry triple");

    CanonResult out{input, {}};
    double prev_tau = edetail::tau_centered_no_check(input);
    auto push = [&](const char* name, const ConvexPolygon& body) {
        const double si = asymmetry(body).s;
        const double ti = edetail::tau_centered_no_check(body);
        if (std::fabs(si - s) > 1e-7)
            throw GeomError(std::string("canonicalize: asymmetry drifted at ") + name);
        if (ti < prev_tau - 1e-9)
            throw GeomError(std::string("canonicalize: tau decreased at ") + name);
        prev_tau = ti;
        out.trace.push_back({name, si, ti, body});
    };
    push("input", input);

    const BoundaryCrossings bc = boundary_crossings(input);
    std::vector<Vec2> z;
    for (const Crossing& c : bc.points)
        if (c.transversal) z.push_back(c.point);
    if (z.size() != 6) throw GeomError("canonicalize: expected 6 transversal crossings");

    auto angle = [](Vec2 v) { return std::atan2(v.y, v.x); };
    auto in_gap = [&](Vec2 x, int g) {
        const double a0g = angle(z[g]);
        double a1 = angle(z[(g + 1) % 6]);
        double ax = angle(x);
        if (a1 < a0g) a1 += 2 * M_PI;
        if (ax < a0g) ax += 2 * M_PI;
        return ax >= a0g - 1e-12 && ax <= a1 + 1e-12;
    };

    std::vector<edetail::Spike> spikes;
    for (std::size_t i = 0; i < a0.asym_points.size(); ++i) {
        const Vec2 p = a0.asym_points[i];
        const Vec2 vx = -s * p;
        int gap = -1;
        for (int g = 0; g < 6; ++g)
            if (in_gap(vx, g)) {
                gap = g;
                break;
            }
        if (gap < 0) throw GeomError("canonicalize: spike outside crossing fan");
        bool dup = false;
        for (const auto& sp : spikes) dup = dup || sp.gap == gap;
        if (!dup) spikes.push_back({gap, p, vx});
    }
    if (spikes.size() != 3) throw GeomError("canonicalize: need 3 spikes in distinct gaps");

    // Part a: cut off everything except the intersection and the spikes.
    const ConvexPolygon mi0 = intersect(input, reflect(input));
    {
        std::vector<Vec2> pts = mi0.vertices();
        for (const auto& sp : spikes) pts.push_back(sp.vertex);
        push("cut_to_core", make_polygon(pts));
    }

    // Step 1: shrink each spike onto the chord between the opposite crossings.
    for (auto& sp : spikes) {
        const Vec2 za = -z[sp.gap], zb = -z[(sp.gap + 1) % 6];
        const Vec2 x = edetail::line_line({0, 0}, sp.asym_point, za, zb - za);
        sp.asym_point = x;
        sp.vertex = -s * x;
    }
    {
        std::vector<Vec2> pts = z;
        for (const auto& sp : spikes) pts.push_back(sp.vertex);
        push("shrink_spikes", make_polygon(pts));
    }
    const ConvexPolygon& k1 = out.trace.back().body;

    // The tau-attaining crossing (smallest rho), lexicographic tie-break.
    const ConvexPolygon am1 =
        scale_translate(minkowski_sum(k1, reflect(k1)), 0.5, {0, 0});
    int kbest = 0;
    double gbest = -1;
    for (int i = 0; i < 6; ++i) {
        const double g = gauge(am1, z[i]);
        if (g > gbest + 1e-12 ||
            (std::fabs(g - gbest) <= 1e-12 && lex_less(z[i], z[kbest]))) {
            gbest = g;
            kbest = i;
        }
    }
    const Vec2 p_cr = z[kbest];

    // Label spikes relative to p: spike 3 shares a gap with p, spike 2 with
    // -p, spike 1 sits between the remaining crossings.
    auto spike_in_gap = [&](int g) -> edetail::Spike* {
        for (auto& sp : spikes)
            if (sp.gap == g) return &sp;
        return nullptr;
    };
    edetail::Spike* s3 = spike_in_gap((kbest + 5) % 6);
    Vec2 z31;
    int dir;
    if (s3) {
        z31 = z[(kbest + 5) % 6];
        dir = -1;
    } else {
        s3 = spike_in_gap(kbest);
        if (!s3) throw GeomError("canonicalize: no spike adjacent to p");
        z31 = z[(kbest + 1) % 6];
        dir = +1;
    }
    const Vec2 z12 = dir == -1 ? z[(kbest + 1) % 6] : z[(kbest + 5) % 6];
    const Vec2 z13 = -z31;
    const Vec2 z21 = -z12;
    edetail::Spike* s1 = nullptr;
    for (auto& sp : spikes) {
        if (&sp == s3) continue;
        if (norm(z[sp.gap] - z12) < 1e-9 || norm(z[(sp.gap + 1) % 6] - z12) < 1e-9) s1 = &sp;
    }
    if (!s1) throw GeomError("canonicalize: spike labeling failed");
    edetail::Spike* s2 = nullptr;
    for (auto& sp : spikes)
        if (&sp != s1 && &sp != s3) s2 = &sp;

    // Step 2: slide spike 3 parallel to [z31, p] and spike 2's reflection
    // parallel to [z12, p], both onto aff({z21, z31}).
    const Vec2 msp3h = edetail::line_line(s3->vertex, p_cr - z31, z21, z31 - z21);
    const Vec2 sp2h = edetail::line_line(-s2->vertex, p_cr - z12, z12, z13 - z12);
    const Vec2 msp2h = -sp2h;
    {
        std::vector<Vec2> pts = z;
        pts.push_back(s1->vertex);
        pts.push_back(msp2h);
        pts.push_back(msp3h);
        push("slide_spikes", make_polygon(pts));
    }

    // Step 3: restrict the vertex set.
    const Vec2 pp2 = (-1.0 / s) * msp2h, pp3 = (-1.0 / s) * msp3h;
    push("restrict_vertices",
         make_polygon({s1->vertex, msp2h, msp3h, pp2, pp3, p_cr, -p_cr}));

    // Step 4: move the remaining spike onto the ray of -d1.
    const Vec2 d1 = edetail::line_line(-p_cr, pp3 - (-p_cr), p_cr, pp2 - p_cr);
    const Vec2 x = edetail::line_line({0, 0}, -d1, msp2h, msp3h - msp2h);
    push("align_apex", make_polygon({-s * x, msp2h, msp3h, pp2, pp3, p_cr, -p_cr}));

    out.body = out.trace.back().body;
    return out;
}

}  // namespace extremal
}  // namespace asymgeo

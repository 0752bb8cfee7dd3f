#pragma once

#include <atomic>
#include <cmath>
#include <string>
#include <vector>

#include "asymgeo/bounds.hpp"
#include "asymgeo/extremal.hpp"
#include "asymgeo/functionals.hpp"
#include "asymgeo/parallel.hpp"
#include "asymgeo/polygon.hpp"
#include "asymgeo/random.hpp"

namespace asymgeo {
namespace verify {

struct Check {
    std::string name;
    bool pass = false;
    double measured = 0;
    double expected = 0;
    double tol = 0;
};

inline std::string format_double(double v) {
    std::string s = std::to_string(v);
    while (s.size() > 1 && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

inline Check near(const std::string& name, double measured, double expected, double tol) {
    return {name, std::fabs(measured - expected) <= tol, measured, expected, tol};
}

inline Check within(const std::string& name, double measured, double lo, double hi) {
    return {name, measured >= lo && measured <= hi, measured, 0.5 * (lo + hi), 0.5 * (hi - lo)};
}

inline Check flag(const std::string& name, bool ok, double measured = 0, double expected = 1,
                  double tol = 0) {
    return {name, ok, measured, expected, tol};
}

// Independent grid/refinement oracle for R(K, C): rho(t) = max_v ||v - t||_C
// is convex in t; shrink an 11x11 grid around the running minimizer. Lives
// here (verification only) and shares no code with the LP route it checks.
inline double circumradius_bruteforce(const ConvexPolygon& k, const ConvexPolygon& c) {
    Vec2 center{0, 0};
    for (Vec2 v : k.vertices()) center = center + v;
    center = center * (1.0 / static_cast<double>(k.size()));
    double radius = 2.0 * std::max(k.coord_scale(), c.coord_scale());
    auto rho_at = [&](Vec2 t) {
        double r = 0;
        for (Vec2 v : k.vertices()) r = std::max(r, gauge(c, v - t));
        return r;
    };
    Vec2 best_t = center;
    double best = rho_at(best_t);
    for (int round = 0; round < 48; ++round) {
        const double step = radius / 5.0;
        Vec2 local_best_t = best_t;
        double local_best = best;
        for (int i = -5; i <= 5; ++i)
            for (int j = -5; j <= 5; ++j) {
                const Vec2 t = best_t + Vec2{i * step, j * step};
                const double r = rho_at(t);
                if (r < local_best) {
                    local_best = r;
                    local_best_t = t;
                }
            }
        best = local_best;
        best_t = local_best_t;
        radius *= 0.55;
    }
    return best;
}

// ---------------------------------------------------------------------------
// Acceptance criteria
// ---------------------------------------------------------------------------

// Golden house exactness: s = phi, tau = alpha = 1.
inline std::vector<Check> criterion_golden_house() {
    const ConvexPolygon gh = extremal::golden_house();
    const double phi = bounds::phi();
    return {near("golden_house.s", asymmetry(gh).s, phi, 1e-8),
            near("golden_house.tau", tau(gh), 1.0, 1e-8),
            near("golden_house.alpha", alpha(gh), 1.0, 1e-8)};
}

// Diameter-width peak at the golden house.
inline std::vector<Check> criterion_dw_peak() {
    const ConvexPolygon gh = extremal::golden_house();
    const ConvexPolygon mi = intersect(gh, reflect(gh));
    const PseudoCompleteReport rep = pseudo_complete_check(gh, mi);
    const double phi = bounds::phi();
    return {near("dw_peak.ratio", rep.D / rep.w, (phi + 1) / 2, 1e-7),
            flag("dw_peak.pseudo_complete", rep.is_pseudo_complete,
                 std::max({rep.residuals[0], rep.residuals[1], rep.residuals[2]}), 0, 1e-7)};
}

// K_s family: s, tau and alpha across s in {1.0, ..., 2.0}.
inline std::vector<Check> criterion_ks_family() {
    std::vector<Check> cs;
    for (int i = 0; i <= 10; ++i) {
        const double s = 1.0 + 0.1 * i;
        const ConvexPolygon k = extremal::k_s(s);
        const TauResult tr = tau_detail(k);
        const double want = 2.0 / (s + 1);
        cs.push_back(near("k_s(" + format_double(s) + ").s", tr.s, s, 1e-7));
        cs.push_back(near("k_s(" + format_double(s) + ").tau", tr.tau, want, 1e-7));
        cs.push_back(near("k_s(" + format_double(s) + ").alpha", alpha(k), want, 1e-7));
    }
    return cs;
}

// f-transform endpoint values and asymmetry preservation along t.
inline std::vector<Check> criterion_f_transform() {
    std::vector<Check> cs;
    for (double s : {1.2, 1.5, 1.7, 1.9, 2.0}) {
        const double want = std::min(1.0, s / (s * s - 1));
        cs.push_back(near("f(" + format_double(s) + ",1).tau",
                          tau(extremal::f_transform(s, 1.0)), want, 1e-6));
        for (double t : {0.0, 0.25, 0.5, 0.75, 1.0})
            cs.push_back(near("f(" + format_double(s) + "," + format_double(t) + ").s",
                              asymmetry(extremal::f_transform(s, t)).s, s, 1e-6));
    }
    return cs;
}

// Heptagon generator round-trip over a feasible 10x10 grid.
inline std::vector<Check> criterion_heptagon_grid() {
    std::vector<Check> cs;
    double worst_tau = 0, worst_s = 0;
    for (int i = 0; i < 10; ++i) {
        const double t = 2.0 / 3.0 + (1.0 - 2.0 / 3.0) * i / 9.0;
        const double lo = std::max(bounds::nu_star(t), bounds::nu_plus(t));
        for (int j = 0; j < 10; ++j) {
            const double nu = lo + (1.0 - lo) * j / 9.0;
            const auto [body, hp] = extremal::heptagon(t, nu);
            const TauResult tr = tau_detail(body);
            worst_tau = std::max(worst_tau, std::fabs(tr.tau - t));
            worst_s = std::max(worst_s, std::fabs(tr.s - bounds::s_of_tau_nu(t, nu)));
        }
    }
    cs.push_back(near("heptagon_grid.max_tau_err", worst_tau, 0.0, 1e-6));
    cs.push_back(near("heptagon_grid.max_s_err", worst_s, 0.0, 1e-6));
    return cs;
}

// Computed roots s_hat and tau_hat.
inline std::vector<Check> criterion_roots() {
    const auto& k = bounds::constants();
    const double mismatch =
        std::fabs(bounds::bdetail::c_mid(k.s_hat) - bounds::bdetail::c_high(k.s_hat));
    const double numis = std::fabs(bounds::nu_star(k.tau_hat) - bounds::nu_plus(k.tau_hat));
    return {within("roots.s_hat", k.s_hat, 1.8535, 1.8537),
            near("roots.branch_mismatch", mismatch, 0.0, 1e-10),
            within("roots.tau_hat", k.tau_hat, 0.775, 0.785),
            near("roots.nu_star_eq_nu_plus", numis, 0.0, 1e-10)};
}

struct RegionScan {
    int violations = 0;
    int total = 0;
    double worst_margin = 0;  // most negative slack seen
    std::string first_violation_polygon;  // JSON-ish dump of the offender
};

// tau-region soundness over seeded random polygons.
inline RegionScan scan_random_tau_region(int count, std::uint64_t seed_base, double tol = 1e-6) {
    RegionScan rs;
    rs.total = count;
    std::atomic<int> viol{0};
    std::vector<double> margins(static_cast<std::size_t>(count), 0.0);
    std::vector<std::string> dumps(static_cast<std::size_t>(count));
    parallel_for(static_cast<std::size_t>(count), [&](std::size_t i) {
        RandomPolygonSpec spec;
        spec.seed = seed_base + i;
        spec.num_vertices = 3 + static_cast<int>(i % 62);
        spec.mode = (i % 2 == 0) ? SampleMode::GaussianHull : SampleMode::UnitCircleHull;
        const ConvexPolygon k = centered(random_polygon(spec));
        const TauResult tr = tau_detail(k);
        const double lo = 2.0 / (tr.s + 1), hi = bounds::c_of_s(std::min(tr.s, 2.0));
        const double margin = std::min(tr.tau - (lo - tol), (hi + tol) - tr.tau);
        margins[i] = margin;
        if (margin < 0 || tr.s > 2 + tol || tr.s < 1 - tol) {
            viol.fetch_add(1);
            std::string d = "{\"seed\":" + std::to_string(spec.seed) + ",\"s\":" +
                            std::to_string(tr.s) + ",\"tau\":" + std::to_string(tr.tau) + "}";
            dumps[i] = d;
        }
    });
    rs.violations = viol.load();
    for (std::size_t i = 0; i < margins.size(); ++i) {
        rs.worst_margin = std::min(rs.worst_margin, margins[i]);
        if (rs.first_violation_polygon.empty() && !dumps[i].empty())
            rs.first_violation_polygon = dumps[i];
    }
    return rs;
}

inline std::vector<Check> criterion_region_soundness(int count = 10000) {
    const RegionScan rs = scan_random_tau_region(count, 42);
    return {flag("tau_region.violations_of_" + std::to_string(count),
                 rs.violations == 0, rs.violations, 0, 0)};
}

// Region completeness: extremal_for hits random in-region targets.
inline std::vector<Check> criterion_region_completeness(int count = 50) {
    Rng rng(2024);
    double worst = 0;
    for (int i = 0; i < count; ++i) {
        const double s = rng.uniform(1.02, 2.0);
        const double u = rng.uniform();
        const double lo = 2.0 / (s + 1), hi = bounds::c_of_s(s);
        const double t = lo + (hi - lo) * u;
        const ConvexPolygon k = extremal::extremal_for(s, t);
        const TauResult tr = tau_detail(k);
        worst = std::max({worst, std::fabs(tr.tau - t), std::fabs(tr.s - s)});
    }
    return {near("extremal_for.worst_target_err_" + std::to_string(count) + "x", worst, 0.0,
                 1e-5)};
}

// Pseudo-complete sweep: residuals, monotone D/w, global bound.
inline std::vector<Check> criterion_pseudo_complete_sweep() {
    std::vector<Check> cs;
    const double cap = (bounds::phi() + 1) / 2;
    for (double s : {1.2, 1.618, 1.9}) {
        const ConvexPolygon k = extremal::extremal_for(s, bounds::c_of_s(s));
        double prev = 0;
        bool monotone = true, residual_ok = true, capped = true;
        double first = 0, last = 0;
        for (double lam : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const ConvexPolygon c = extremal::c_lambda(k, lam);
            const PseudoCompleteReport rep = pseudo_complete_check(k, c);
            residual_ok = residual_ok && rep.is_pseudo_complete &&
                          std::max({rep.residuals[0], rep.residuals[1], rep.residuals[2]}) <= 1e-7;
            const double ratio = rep.D / rep.w;
            if (lam == 0.0)
                first = ratio;
            else if (ratio < prev - 1e-9)
                monotone = false;
            last = ratio;
            prev = ratio;
            capped = capped && ratio <= cap + 1e-6;
        }
        const std::string tag = "c_lambda(s=" + format_double(s) + ")";
        cs.push_back(flag(tag + ".residuals", residual_ok));
        cs.push_back(flag(tag + ".monotone", monotone));
        cs.push_back(flag(tag + ".below_peak", capped));
        cs.push_back(near(tag + ".ratio_at_0", first, 1.0, 1e-7));
        cs.push_back(near(tag + ".ratio_at_1", last, bounds::dw_envelope(s), 1e-6));
    }
    return cs;
}

// gamma via polarity against the independent harmonic-mean containment LP.
inline std::vector<Check> criterion_gamma_duality(int count = 100) {
    double worst = 0;
    Rng rng(7);
    for (int i = 0; i < count; ++i) {
        RandomPolygonSpec spec;
        spec.seed = 1000 + i;
        spec.num_vertices = 3 + static_cast<int>(rng.next() % 22);
        spec.mode = (i % 2 == 0) ? SampleMode::GaussianHull : SampleMode::UnitCircleHull;
        const ConvexPolygon k = centered(random_polygon(spec));
        const double g = gamma(k);
        const ConvexPolygon kp = polar(k);
        const ConvexPolygon harmonic =
            polar(scale_translate(minkowski_sum(kp, reflect(kp)), 0.5, {0, 0}));
        const ConvexPolygon mx = convex_hull_union(k, reflect(k));
        const double g2 = circumradius(harmonic, mx).rho;
        worst = std::max(worst, std::fabs(g - g2));
    }
    return {near("gamma.duality_gap_" + std::to_string(count) + "x", worst, 0.0, 1e-6)};
}

// LP circumradius against the grid/refinement oracle, plus certificates.
inline std::vector<Check> criterion_lp_oracle(int count = 500) {
    std::vector<double> gaps(static_cast<std::size_t>(count), 0.0);
    std::atomic<int> cert_fail{0};
    parallel_for(static_cast<std::size_t>(count), [&](std::size_t i) {
        Rng rng(5000 + i);
        RandomPolygonSpec ks{9000 + i, 3 + static_cast<int>(rng.next() % 6),
                             SampleMode::GaussianHull};
        RandomPolygonSpec cs{77000 + i, 3 + static_cast<int>(rng.next() % 6),
                             SampleMode::GaussianHull};
        const ConvexPolygon k =
            translate(random_polygon(ks), {rng.uniform(-1, 1), rng.uniform(-1, 1)});
        const ConvexPolygon c = centered(random_polygon(cs));
        const ContainmentResult lp = circumradius(k, c);
        const double oracle = circumradius_bruteforce(k, c);
        gaps[i] = std::fabs(lp.rho - oracle);
        if (!lp.certificate_ok(1e-8)) cert_fail.fetch_add(1);
    });
    double worst = 0;
    for (double g : gaps) worst = std::max(worst, g);
    return {near("lp_oracle.worst_gap_" + std::to_string(count) + "x", worst, 0.0, 1e-3),
            flag("lp_oracle.certificates", cert_fail.load() == 0, cert_fail.load(), 0, 0)};
}

namespace vdetail {

// Grows a generated body by one vertex nudged outside an edge midpoint while
// keeping the asymmetry certificate valid.
inline ConvexPolygon perturb_with_vertex(const ConvexPolygon& k, double s, Rng& rng) {
    const ConvexPolygon msk = scale_translate(k, -s, {0, 0});
    const auto& vs = k.vertices();
    for (int attempt = 0; attempt < 32; ++attempt) {
        const std::size_t e = rng.next() % vs.size();
        const Vec2 a = vs[e], b = vs[(e + 1) % vs.size()];
        const Vec2 mid = 0.5 * (a + b);
        const Vec2 n = normalized(Vec2{(b - a).y, -(b - a).x});
        const double delta = 0.02 * rng.uniform(0.2, 1.0) * norm(b - a);
        const Vec2 v = mid + delta * n;
        if (msk.facet_slack(v) < -1e-9 && k.facet_slack((-1.0 / s) * v) < -1e-9) {
            std::vector<Vec2> pts = vs;
            pts.push_back(v);
            const ConvexPolygon grown = make_polygon(pts);
            // Splitting a facet that carries an asymmetry point would change
            // s; keep only perturbations that leave the certificate intact.
            if (grown.size() == vs.size() + 1 && std::fabs(asymmetry(grown).s - s) <= 1e-9)
                return grown;
        }
    }
    return k;
}

inline std::vector<ConvexPolygon> pipeline_bodies(int count) {
    std::vector<ConvexPolygon> bodies;
    Rng rng(31337);
    const double smin = bounds::phi() + 0.05;
    while (static_cast<int>(bodies.size()) < count) {
        const int kind = static_cast<int>(rng.next() % 4);
        if (kind == 0) {
            bodies.push_back(extremal::k_s(rng.uniform(smin + 0.01, 2.0)));
        } else if (kind == 1) {
            const double s = rng.uniform(smin + 0.01, 1.95);
            const double lo = 2.0 / (s + 1);
            const double hi = std::min(1.0, s / (s * s - 1));
            if (hi - lo < 5e-3) continue;
            bodies.push_back(extremal::extremal_for(s, rng.uniform(lo + 1e-3, hi - 1e-3)));
        } else {
            const double t = rng.uniform(2.0 / 3.0 + 1e-3, 0.83);
            const double nlo = std::max(bounds::nu_star(t), bounds::nu_plus(t));
            const double nu = rng.uniform(nlo, 1.0);
            if (bounds::s_of_tau_nu(t, nu) <= smin) continue;
            ConvexPolygon body = extremal::heptagon(t, nu).first;
            if (kind == 3) body = perturb_with_vertex(body, bounds::s_of_tau_nu(t, nu), rng);
            bodies.push_back(centered(body));
        }
    }
    return bodies;
}

}  // namespace vdetail

// Canonicalization: monotone trace and terminal heptagon structure.
inline std::vector<Check> criterion_pipeline(int count = 50) {
    int ok = 0, structural = 0;
    const auto bodies = vdetail::pipeline_bodies(count);
    for (const ConvexPolygon& k : bodies) {
        try {
            const extremal::CanonResult res = extremal::canonicalize(k);
            ++ok;  // trace invariants are enforced inside canonicalize
            bool antipodal = false;
            const auto& vs = res.body.vertices();
            for (std::size_t i = 0; i < vs.size() && !antipodal; ++i)
                for (std::size_t j = i + 1; j < vs.size() && !antipodal; ++j)
                    antipodal = norm(vs[i] + vs[j]) <= 1e-7 * res.body.coord_scale();
            if (res.body.size() <= 7 && antipodal) ++structural;
        } catch (const GeomError&) {
        }
    }
    return {flag("pipeline.trace_ok_" + std::to_string(count) + "x", ok == count, ok, count, 0),
            flag("pipeline.terminal_structure", structural == count, structural, count, 0)};
}

// Exactly 6 transversal boundary crossings for s >= phi + 0.01.
inline std::vector<Check> criterion_crossings() {
    int total = 0, good = 0;
    auto check_body = [&](const ConvexPolygon& k) {
        ++total;
        if (boundary_crossings(k).transversal_count() == 6) ++good;
    };
    for (double s = bounds::phi() + 0.01; s <= 2.0; s += 0.05) check_body(extremal::k_s(s));
    for (int i = 0; i < 8; ++i) {
        const double t = 2.0 / 3.0 + i * (0.9 - 2.0 / 3.0) / 7.0;
        const double nlo = std::max(bounds::nu_star(t), bounds::nu_plus(t));
        for (double nu : {nlo, 0.5 * (nlo + 1), 1.0}) {
            if (bounds::s_of_tau_nu(t, nu) < bounds::phi() + 0.01) continue;
            check_body(extremal::heptagon(t, nu).first);
        }
    }
    for (double s : {1.63, 1.7, 1.85, 1.95})
        for (double t : {0.2, 0.6, 0.9}) check_body(centered(extremal::f_transform(s, t)));
    return {flag("crossings.six_transversal", good == total, good, total, 0)};
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

struct SuiteResult {
    std::string suite;
    std::vector<Check> checks;

    bool all_pass() const {
        for (const Check& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

inline void append(std::vector<Check>& into, std::vector<Check> more) {
    for (auto& c : more) into.push_back(std::move(c));
}

inline SuiteResult run_suite(const std::string& name, int region_samples = 10000) {
    SuiteResult sr;
    sr.suite = name;
    if (name == "bounds") {
        append(sr.checks, criterion_roots());
        // branch continuity and shape of the envelope
        const auto& k = bounds::constants();
        append(sr.checks, {near("bounds.c_at_phi", bounds::c_of_s(k.phi), 1.0, 1e-10),
                           near("bounds.c_continuity_at_s_hat",
                                bounds::c_of_s(k.s_hat - 1e-13) - bounds::c_of_s(k.s_hat + 1e-13),
                                0.0, 1e-10),
                           near("bounds.envelope_peak", bounds::dw_envelope(k.phi),
                                (k.phi + 1) / 2, 1e-9)});
        bool mono = true, order = true, inv = true;
        for (int i = 0; i + 1 <= 10000; ++i) {
            const double s0 = 1.0 + i * 1e-4, s1 = std::min(2.0, s0 + 1e-4);
            const double e0 = bounds::dw_envelope(s0), e1 = bounds::dw_envelope(s1);
            if (s1 <= k.phi && e1 < e0 - 1e-12) mono = false;
            if (s0 >= k.phi && e1 > e0 + 1e-12) mono = false;
            if (2.0 / (s0 + 1) > bounds::c_of_s(s0) + 1e-12) order = false;
            if (s0 > k.phi + 1e-6) {
                const double t = bounds::c_of_s(s0);
                if (std::fabs(bounds::s_max(t) - s0) > 1e-7) inv = false;
            }
            if (s1 >= 2.0) break;
        }
        append(sr.checks, {flag("bounds.envelope_monotone", mono),
                           flag("bounds.lower_below_upper", order),
                           flag("bounds.s_max_inverts_c", inv)});
    } else if (name == "functionals") {
        append(sr.checks, criterion_golden_house());
        append(sr.checks, criterion_dw_peak());
        append(sr.checks, criterion_gamma_duality());
        append(sr.checks, criterion_lp_oracle());
    } else if (name == "generators") {
        append(sr.checks, criterion_ks_family());
        append(sr.checks, criterion_f_transform());
        append(sr.checks, criterion_heptagon_grid());
        append(sr.checks, criterion_region_completeness());
        append(sr.checks, criterion_pseudo_complete_sweep());
    } else if (name == "pipeline") {
        append(sr.checks, criterion_pipeline());
    } else if (name == "regions") {
        append(sr.checks, criterion_region_soundness(region_samples));
        append(sr.checks, criterion_crossings());
    } else {
        throw OutOfDomain("unknown suite: " + name);
    }
    return sr;
}

inline std::vector<SuiteResult> run_all(int region_samples = 10000) {
    std::vector<SuiteResult> out;
    for (const char* s : {"bounds", "functionals", "generators", "pipeline", "regions"})
        out.push_back(run_suite(s, region_samples));
    return out;
}

}  // namespace verify
}  // namespace asymgeo

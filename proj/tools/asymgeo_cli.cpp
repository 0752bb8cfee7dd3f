// Command-line front end: analyze bodies, generate the extremal families,
// sweep the (s, tau) and (s, D/w) regions to CSV, and run the verification
// suites. Exit codes: 0 pass, 1 violation, 2 usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "asymgeo/bounds.hpp"
#include "asymgeo/extremal.hpp"
#include "asymgeo/functionals.hpp"
#include "asymgeo/io.hpp"
#include "asymgeo/polygon.hpp"
#include "asymgeo/random.hpp"
#include "asymgeo/verify.hpp"

namespace {

using namespace asymgeo;
using nlohmann::json;

json vec_json(Vec2 v) { return json::array({v.x, v.y}); }

json containment_json(const ContainmentResult& c) {
    json t = json::array();
    for (std::size_t i = 0; i < c.touching.size(); ++i)
        t.push_back({{"point", vec_json(c.touching[i].point)},
                     {"normal", vec_json(c.touching[i].normal)},
                     {"weight", c.normal_weights[i]}});
    return {{"rho", c.rho},
            {"translation", vec_json(c.translation)},
            {"touching", t},
            {"certificate_ok", c.certificate_ok()}};
}

void emit(const json& j, const std::string& out) {
    if (out.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream f(out);
        if (!f) throw ParseError("cannot open for writing: " + out);
        f << j.dump(2) << "\n";
    }
}

int cmd_analyze(const std::string& input, const std::string& gauge_path,
                const std::string& out, double tol) {
    const ConvexPolygon raw = read_polygon(input);
    const AsymmetryResult asym = asymmetry(raw);
    const ConvexPolygon k = translate(raw, -asym.center);
    const TauResult tr = tau_detail(k);

    json rep;
    rep["input"] = input;
    rep["s"] = asym.s;
    rep["center"] = vec_json(asym.center);
    rep["tau"] = tr.tau;
    rep["alpha"] = alpha(k);
    rep["gamma"] = gamma(k);
    rep["tau_region_ok"] = bounds::tau_region_contains(std::clamp(asym.s, 1.0, 2.0), tr.tau);
    {
        json cert;
        cert["points"] = json::array();
        cert["normals"] = json::array();
        for (Vec2 p : asym.asym_points) cert["points"].push_back(vec_json(p));
        for (Vec2 n : asym.asym_normals) cert["normals"].push_back(vec_json(n));
        cert["well_spread"] = asym.well_spread;
        rep["asymmetry_certificate"] = cert;
    }

    const ConvexPolygon c =
        gauge_path.empty() ? intersect(k, reflect(k)) : read_polygon(gauge_path);
    rep["gauge"] = gauge_path.empty() ? "derived: K cap (-K)" : gauge_path;
    const PseudoCompleteReport pc = pseudo_complete_check(k, c, tol);
    rep["D"] = pc.D;
    rep["w"] = pc.w;
    rep["dw_ratio"] = pc.D / pc.w;
    rep["pseudo_complete"] = {{"is_pseudo_complete", pc.is_pseudo_complete},
                              {"r", pc.r},
                              {"R", pc.R},
                              {"residuals", pc.residuals},
                              {"sandwich_ok", pc.sandwich_ok}};
    rep["dw_region_ok"] =
        bounds::dw_region_contains(std::clamp(asym.s, 1.0, 2.0), pc.D / pc.w);
    rep["optimal_containment"] = containment_json(circumradius(intersect(k, reflect(k)),
                                                               scale_translate(minkowski_sum(k, reflect(k)), 0.5, {0, 0})));
    emit(rep, out);
    return 0;
}

std::string base_name(std::string out) {
    if (out.size() > 5 && out.substr(out.size() - 5) == ".json")
        out = out.substr(0, out.size() - 5);
    return out;
}

json measured_meta(const ConvexPolygon& k) {
    const TauResult tr = tau_detail(k);
    return {{"s", tr.s}, {"tau", tr.tau}, {"alpha", alpha(k)}};
}

int cmd_generate(const std::string& family, std::optional<double> s, std::optional<double> t,
                 std::optional<double> tauv, std::optional<double> nu,
                 std::optional<double> lambda, std::optional<double> rho,
                 const std::string& out) {
    const std::string base = base_name(out.empty() ? family : out);
    auto need = [&](const std::optional<double>& v, const char* flag) {
        if (!v) throw ParseError(std::string("family '") + family + "' needs --" + flag);
        return *v;
    };

    auto write_single = [&](const ConvexPolygon& k, json extra = {}) {
        write_polygon(base + ".json", k);
        json meta = measured_meta(k);
        meta.update(extra);
        emit(meta, base + ".meta.json");
        std::cout << base << ".json\n";
    };
    auto write_pair = [&](const ConvexPolygon& k, const ConvexPolygon& c) {
        write_polygon(base + ".body.json", k);
        write_polygon(base + ".gauge.json", c);
        const PseudoCompleteReport pc = pseudo_complete_check(k, c);
        json meta = measured_meta(k);
        meta["D"] = pc.D;
        meta["w"] = pc.w;
        meta["dw_ratio"] = pc.D / pc.w;
        meta["is_pseudo_complete"] = pc.is_pseudo_complete;
        emit(meta, base + ".meta.json");
        std::cout << base << ".body.json " << base << ".gauge.json\n";
    };

    if (family == "golden-house") {
        write_single(extremal::golden_house());
    } else if (family == "k-s") {
        write_single(extremal::k_s(need(s, "s")));
    } else if (family == "f-transform") {
        write_single(extremal::f_transform(need(s, "s"), need(t, "t")));
    } else if (family == "heptagon") {
        const auto [body, hp] = extremal::heptagon(need(tauv, "tau"), need(nu, "nu"));
        write_single(body, json{{"alphaParam", hp.alphaParam},
                                {"gammaParam", hp.gammaParam},
                                {"s_of_tau_nu", hp.s}});
    } else if (family == "extremal-for") {
        write_single(extremal::extremal_for(need(s, "s"), need(tauv, "tau")));
    } else if (family == "c-lambda") {
        const ConvexPolygon k =
            extremal::extremal_for(need(s, "s"), bounds::c_of_s(need(s, "s")));
        write_pair(k, extremal::c_lambda(k, need(lambda, "lambda")));
    } else if (family == "dw-witness") {
        const auto [k, c] = extremal::dw_witness(need(s, "s"), need(rho, "rho"));
        write_pair(k, c);
    } else {
        throw ParseError("unknown family: " + family);
    }
    return 0;
}

struct RegionRow {
    double s = 0;
    double value = 0;
    std::string source;
    bool in_region = true;
};

int cmd_region(const std::string& which, int grid, int samples, std::uint64_t seed,
               const std::string& out) {
    std::vector<RegionRow> rows;
    bool violated = false;
    std::string dump_path = (out.empty() ? std::string("region") : out) + ".violation.json";
    auto add = [&](double s, double v, std::string src, bool ok, const json& offender) {
        rows.push_back({s, v, std::move(src), ok});
        if (!ok && !violated) {
            violated = true;
            std::ofstream f(dump_path);
            f << offender.dump(2) << "\n";
        }
    };

    const double phi = bounds::phi();
    if (which == "tau") {
        for (int i = 0; i <= grid; ++i) {
            const double s = 1.0 + i / static_cast<double>(grid);
            add(s, 2.0 / (s + 1), "curve:tau_lower", true, {});
            add(s, bounds::c_of_s(s), "curve:tau_upper", true, {});
        }
        for (int i = 0; i <= grid; ++i) {
            const double s = 1.0 + i / static_cast<double>(grid);
            const TauResult tr = tau_detail(extremal::k_s(s));
            add(tr.s, tr.tau, "ks(s=" + verify::format_double(s) + ")",
                bounds::tau_region_contains(std::clamp(tr.s, 1.0, 2.0), tr.tau),
                polygon_to_json(extremal::k_s(s)));
        }
        const int fgrid = std::max(2, grid / 8);
        for (int i = 0; i <= fgrid; ++i)
            for (int j = 0; j <= fgrid; ++j) {
                const double s = 1.0 + i / static_cast<double>(fgrid);
                const double t = j / static_cast<double>(fgrid);
                const ConvexPolygon body = extremal::f_transform(s, t);
                const TauResult tr = tau_detail(body);
                add(tr.s, tr.tau,
                    "f(s=" + verify::format_double(s) + ",t=" + verify::format_double(t) + ")",
                    bounds::tau_region_contains(std::clamp(tr.s, 1.0, 2.0), tr.tau),
                    polygon_to_json(body));
            }
        for (int i = 0; i <= fgrid; ++i)
            for (int j = 0; j <= fgrid; ++j) {
                const double t = 2.0 / 3.0 + (1.0 - 2.0 / 3.0) * i / fgrid;
                const double lo = std::max(bounds::nu_star(t), bounds::nu_plus(t));
                const double nu = lo + (1.0 - lo) * j / fgrid;
                const ConvexPolygon body = extremal::heptagon(t, nu).first;
                const TauResult tr = tau_detail(body);
                add(tr.s, tr.tau,
                    "heptagon(tau=" + verify::format_double(t) +
                        ",nu=" + verify::format_double(nu) + ")",
                    bounds::tau_region_contains(std::clamp(tr.s, 1.0, 2.0), tr.tau),
                    polygon_to_json(body));
            }
        for (int i = 0; i < samples; ++i) {
            RandomPolygonSpec spec;
            spec.seed = seed + static_cast<std::uint64_t>(i);
            spec.num_vertices = 3 + i % 62;
            spec.mode = (i % 2 == 0) ? SampleMode::GaussianHull : SampleMode::UnitCircleHull;
            const ConvexPolygon k = centered(random_polygon(spec));
            const TauResult tr = tau_detail(k);
            add(tr.s, tr.tau, "random(seed=" + std::to_string(spec.seed) + ")",
                bounds::tau_region_contains(std::clamp(tr.s, 1.0, 2.0), tr.tau) &&
                    tr.s <= 2 + 1e-6,
                polygon_to_json(k));
        }
    } else if (which == "dw") {
        for (int i = 0; i <= grid; ++i) {
            const double s = 1.0 + i / static_cast<double>(grid);
            add(s, 1.0, "curve:dw_lower", true, {});
            add(s, (s + 1) / 2, "curve:asymmetry_bound", true, {});
            add(s, bounds::dw_envelope(s), "curve:dw_envelope", true, {});
        }
        const int sgrid = std::max(2, grid / 10);
        for (int i = 0; i <= sgrid; ++i) {
            const double s = 1.0 + 0.999 * i / sgrid;
            const ConvexPolygon k = extremal::extremal_for(s, bounds::c_of_s(s));
            for (int j = 0; j <= sgrid; ++j) {
                const double lam = j / static_cast<double>(sgrid);
                const ConvexPolygon c = extremal::c_lambda(k, lam);
                const double ratio = diameter(k, c) / width(k, c);
                add(s, ratio,
                    "clambda(s=" + verify::format_double(s) +
                        ",lambda=" + verify::format_double(lam) + ")",
                    bounds::dw_region_contains(s, ratio), polygon_to_json(c));
            }
        }
        Rng rng(seed);
        for (int i = 0; i < samples; ++i) {
            const double s = rng.uniform(1.0, 2.0);
            const double lam = rng.uniform();
            const ConvexPolygon k = extremal::extremal_for(s, bounds::c_of_s(s));
            const ConvexPolygon c = extremal::c_lambda(k, lam);
            const double ratio = diameter(k, c) / width(k, c);
            add(s, ratio, "random(seed=" + std::to_string(seed) + ",i=" + std::to_string(i) + ")",
                bounds::dw_region_contains(s, ratio), polygon_to_json(c));
        }
    } else {
        throw ParseError("--which must be tau or dw");
    }

    std::ostringstream csv;
    csv << "s,value,source,in_region\n";
    for (const RegionRow& r : rows)
        csv << format_sig(r.s) << "," << format_sig(r.value) << "," << r.source << ","
            << (r.in_region ? "true" : "false") << "\n";
    if (out.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream f(out);
        if (!f) throw ParseError("cannot open for writing: " + out);
        f << csv.str();
    }
    if (violated) {
        std::cerr << "region violation detected; offending polygon dumped to " << dump_path
                  << "\n";
        return 1;
    }
    return 0;
}

int cmd_verify(const std::string& suite, int samples, const std::string& out) {
    std::vector<verify::SuiteResult> results;
    if (suite == "all")
        results = verify::run_all(samples);
    else
        results.push_back(verify::run_suite(suite, samples));

    bool all = true;
    json rep = json::array();
    for (const auto& sr : results) {
        json checks = json::array();
        for (const auto& c : sr.checks) {
            checks.push_back({{"name", c.name},
                              {"pass", c.pass},
                              {"measured", c.measured},
                              {"expected", c.expected},
                              {"tol", c.tol}});
            all = all && c.pass;
        }
        rep.push_back({{"suite", sr.suite}, {"checks", checks}});
    }
    emit(rep, out);
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"planar convex-body containment toolkit"};
    app.require_subcommand(1);

    std::string input, gauge_path, out, family, which = "tau", suite = "all";
    std::optional<double> s, t, tauv, nu, lambda, rho;
    double tol = 1e-7;
    int grid = 100, samples = 0;
    std::uint64_t seed = 42;

    CLI::App* an = app.add_subcommand("analyze", "report functionals of a polygon file");
    an->add_option("input", input, "polygon JSON file")->required();
    an->add_option("--gauge", gauge_path, "0-symmetric gauge polygon (default: K cap -K)");
    an->add_option("--out", out, "write JSON report here instead of stdout");
    an->add_option("--tol", tol, "pseudo-completeness tolerance");

    CLI::App* ge = app.add_subcommand("generate", "construct an extremal family member");
    ge->add_option("family", family,
                   "golden-house | k-s | f-transform | heptagon | extremal-for | c-lambda | "
                   "dw-witness")
        ->required();
    ge->add_option("--s", s, "asymmetry parameter");
    ge->add_option("--t", t, "f-transform deformation parameter in [0,1]");
    ge->add_option("--tau", tauv, "target tau");
    ge->add_option("--nu", nu, "heptagon nu parameter");
    ge->add_option("--lambda", lambda, "gauge interpolation parameter in [0,1]");
    ge->add_option("--rho", rho, "target D/w ratio");
    ge->add_option("--out", out, "output path base");

    CLI::App* re = app.add_subcommand("region", "emit region CSV (s,value,source,in_region)");
    re->add_option("--which", which, "tau | dw")->required();
    re->add_option("--grid", grid, "grid resolution for curves and sweeps");
    re->add_option("--samples", samples, "number of random samples");
    re->add_option("--seed", seed, "random seed");
    re->add_option("--out", out, "CSV output path (default stdout)");

    CLI::App* ve = app.add_subcommand("verify", "run verification suites");
    ve->add_option("suite", suite, "functionals | bounds | generators | pipeline | regions | all");
    ve->add_option("--samples", samples, "random-polygon count for region soundness")
        ->default_val(10000);
    ve->add_option("--out", out, "write JSON report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (an->parsed()) return cmd_analyze(input, gauge_path, out, tol);
        if (ge->parsed()) return cmd_generate(family, s, t, tauv, nu, lambda, rho, out);
        if (re->parsed()) return cmd_region(which, grid, samples, seed, out);
        if (ve->parsed()) return cmd_verify(suite, samples == 0 ? 10000 : samples, out);
    } catch (const ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const GeomError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

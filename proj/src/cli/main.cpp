#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "szg/bergman.hpp"
#include "szg/config.hpp"
#include "szg/csv.hpp"
#include "szg/experiments.hpp"
#include "szg/kernels.hpp"
#include "szg/selftest.hpp"

namespace {

using namespace szg;
using ordered_json = nlohmann::ordered_json;

struct Opt {
    std::string config, out, manifest, pole, zeta, kind, points;
    long order = 0;  // 0 = not given on the command line
    long threads = 0;
};

ordered_json value_to_json(const ConfigValue& v) {
    switch (v.kind) {
        case ConfigValue::Kind::number: return v.num;
        case ConfigValue::Kind::string: return v.str;
        case ConfigValue::Kind::boolean: return v.flag;
        case ConfigValue::Kind::list: {
            ordered_json arr = ordered_json::array();
            for (const ConfigValue& item : v.items) arr.push_back(value_to_json(item));
            return arr;
        }
    }
    return nullptr;
}

ordered_json config_to_json(const ConfigMap& m) {
    ordered_json out = ordered_json::object();
    for (const auto& [key, value] : m) out[key] = value_to_json(value);
    return out;
}

ordered_json domain_json(const DomainGeometry& d) {
    ordered_json j;
    j["preset"] = d.preset;
    j["params"] = d.params;
    j["nodes_per_component"] = d.components[0].z.size();
    j["connectivity"] = d.connectivity();
    j["total_nodes"] = d.total_nodes();
    j["scale"] = d.scale();
    return j;
}

DomainGeometry build_domain(ConfigReader& r) {
    std::string preset = r.str("domain.preset", "disc");
    std::vector<double> params = r.numbers("domain.params", {});
    long nodes = r.integer("domain.nodes", 256);
    if (nodes < 16 || nodes % 2 != 0)
        throw invalid_input("domain.nodes: must be even and >= 16");
    try {
        return make_preset(preset, params, static_cast<int>(nodes));
    } catch (const invalid_input& e) {
        throw invalid_input("domain.preset/domain.params: " + std::string(e.what()));
    }
}

WeightField build_weight(ConfigReader& r, const DomainGeometry& d, ordered_json& winfo) {
    std::string fam = r.str("weight.family", "unit");
    winfo["family"] = fam;
    if (fam == "unit") return unit_weight(d);
    if (fam == "constant") {
        double c = r.number("weight.c", 2.0);
        winfo["c"] = c;
        return constant_weight(d, c);
    }
    if (fam == "exp-cos") {
        double k = r.number("weight.k", 4.0);
        long comp = r.integer("weight.component", 0);
        winfo["k"] = k;
        winfo["component"] = comp;
        return exp_cos_weight(d, k, static_cast<int>(comp));
    }
    if (fam == "poly-abs2") {
        double k = r.number("weight.k", 1.0);
        winfo["k"] = k;
        return abs_pow_weight(d, cpx(2.0, 0.0), 2.0 / k);
    }
    if (fam == "abs-pow") {
        cpx b = r.complex_val("weight.base", cpx(2.0, 0.0));
        double p = r.number("weight.power", 2.0);
        winfo["base"] = format_complex(b);
        winfo["power"] = p;
        return abs_pow_weight(d, b, p);
    }
    throw invalid_input("weight.family: unknown family '" + fam + "'");
}

long resolve_threads(const Opt& o, ConfigReader& r) {
    long t = o.threads > 0 ? o.threads : r.integer("threads", 1);
    if (o.threads > 0) r.integer("threads", 1);  // consume a config key the flag shadows
    if (t < 1) throw invalid_input("threads: must be >= 1");
    return t;
}

std::string manifest_path_for(const Opt& o) {
    if (!o.manifest.empty()) return o.manifest;
    std::string out = o.out;
    if (out.size() > 4 && out.substr(out.size() - 4) == ".csv")
        return out.substr(0, out.size() - 4) + ".manifest.json";
    return out + ".manifest.json";
}

ordered_json manifest_base(const std::string& subcommand, long threads, const ConfigMap& cfg) {
    ordered_json j;
    j["tool"] = "szg";
    j["version"] = version;
    j["subcommand"] = subcommand;
    j["threads"] = threads;
    j["config"] = config_to_json(cfg);
    return j;
}

void emit_manifest(const Opt& o, ordered_json& j, std::vector<std::string> outputs) {
    j["outputs"] = outputs;
    write_text_file(manifest_path_for(o), j.dump(2) + "\n");
}

cpx pole_from(const Opt& o, ConfigReader& r, const std::string& key, cpx def) {
    cpx p = r.complex_val(key, def);
    if (!o.pole.empty()) p = parse_complex(o.pole);
    return p;
}

// ---- subcommands ------------------------------------------------------------

int run_domain(Opt o) {
    if (o.out.empty()) o.out = "domain.csv";
    ConfigMap cfg = o.config.empty() ? ConfigMap{} : parse_config_file(o.config);
    ConfigReader r(cfg);
    DomainGeometry d = build_domain(r);
    ordered_json winfo;
    WeightField w = build_weight(r, d, winfo);
    long threads = resolve_threads(o, r);
    r.finish();

    BoundaryField zf = sample_boundary(d, [](cpx z) { return z; });
    write_text_file(o.out, csv_boundary_multi(d, {&zf}, {"re", "im"}));
    std::vector<std::string> outputs{o.out};
    if (winfo["family"] != "unit") {
        std::string wpath = o.out;
        if (wpath.size() > 4 && wpath.substr(wpath.size() - 4) == ".csv")
            wpath = wpath.substr(0, wpath.size() - 4);
        wpath += "_weight.csv";
        write_text_file(wpath, csv_weight(d, w));
        outputs.push_back(wpath);
    }
    ordered_json j = manifest_base("domain", threads, cfg);
    j["domain"] = domain_json(d);
    j["weight"] = winfo;
    emit_manifest(o, j, outputs);
    return 0;
}

int run_szego(Opt o) {
    if (o.out.empty()) o.out = "szego.csv";
    ConfigMap cfg = o.config.empty() ? ConfigMap{} : parse_config_file(o.config);
    ConfigReader r(cfg);
    DomainGeometry d = build_domain(r);
    ordered_json winfo;
    WeightField w = build_weight(r, d, winfo);
    cpx a = pole_from(o, r, "szego.pole", cpx(0.3, 0.0));
    double tol_repro = r.number("tolerance.reproducing", 1e-8);
    long threads = resolve_threads(o, r);
    r.finish();

    SzegoSolver solver(d, w);
    const SzegoSolution& sol = solver.solve(a);
    write_text_file(o.out, csv_boundary_multi(d, {&sol.boundary}, {"re_S", "im_S"}));

    ordered_json j = manifest_base("szego", threads, cfg);
    j["domain"] = domain_json(d);
    j["weight"] = winfo;
    j["task"] = {{"pole", format_complex(a)}};
    j["residuals"] = {{"linear", sol.linear_residual},
                      {"reproducing", sol.reproducing_residual},
                      {"skew_defect", skew_defect(solver.matrix())}};
    j["tolerances"] = {{"reproducing", tol_repro}};
    emit_manifest(o, j, {o.out});
    return sol.reproducing_residual <= tol_repro ? 0 : 2;
}

int run_garabedian(Opt o) {
    if (o.out.empty()) o.out = "garabedian.csv";
    ConfigMap cfg = o.config.empty() ? ConfigMap{} : parse_config_file(o.config);
    ConfigReader r(cfg);
    DomainGeometry d = build_domain(r);
    ordered_json winfo;
    WeightField w = build_weight(r, d, winfo);
    cpx a = pole_from(o, r, "garabedian.pole", cpx(0.3, 0.0));
    double tol_id = r.number("tolerance.identity", 1e-8);
    long threads = resolve_threads(o, r);
    r.finish();

    SzegoSolver solver(d, w);
    GarabedianSolution g = garabedian_from_szego(solver.solve(a), d, w);
    write_text_file(o.out, csv_boundary_multi(d, {&g.boundary_L, &g.boundary_l},
                                              {"re_L", "im_L", "re_l", "im_l"}));

    ordered_json j = manifest_base("garabedian", threads, cfg);
    j["domain"] = domain_json(d);
    j["weight"] = winfo;
    j["task"] = {{"pole", format_complex(a)}};
    j["residuals"] = {{"boundary_identity", g.boundary_identity_residual}};
    j["tolerances"] = {{"identity", tol_id}};
    emit_manifest(o, j, {o.out});
    return g.boundary_identity_residual <= tol_id ? 0 : 2;
}

int run_zeros(Opt o) {
    if (o.out.empty()) o.out = "zeros.csv";
    ConfigMap cfg = o.config.empty() ? ConfigMap{} : parse_config_file(o.config);
    ConfigReader r(cfg);
    DomainGeometry d = build_domain(r);
    ordered_json winfo;
    WeightField w = build_weight(r, d, winfo);
    cpx a = pole_from(o, r, "zeros.pole", cpx(0.3, 0.0));
    double tol_abs = r.number("tolerance.zero_abs", 1e-8);
    long threads = resolve_threads(o, r);
    r.finish();

    SzegoSolver solver(d, w);
    const SzegoSolution& sol = solver.solve(a);
    int count = zero_count(sol, d);
    std::vector<cpx> zeros = count > 0 ? zero_locate(sol, d) : std::vector<cpx>{};
    std::vector<double> abs_s;
    double worst = 0.0;
    for (cpx z : zeros) {
        abs_s.push_back(std::abs(solver.eval(z, a)));
        worst = std::max(worst, abs_s.back());
    }
    write_text_file(o.out, csv_zeros(zeros, abs_s));

    ordered_json j = manifest_base("zeros", threads, cfg);
    j["domain"] = domain_json(d);
    j["weight"] = winfo;
    j["task"] = {{"pole", format_complex(a)}};
    j["residuals"] = {{"count", count}, {"max_abs_S", worst}};
    j["tolerances"] = {{"zero_abs", tol_abs}};
    emit_manifest(o, j, {o.out});
    return worst <= tol_abs ? 0 : 2;
}

int run_ahlfors(Opt o) {
    if (o.out.empty()) o.out = "ahlfors.csv";
    ConfigMap cfg = o.config.empty() ? ConfigMap{} : parse_config_file(o.config);
    ConfigReader r(cfg);
    DomainGeometry d = build_domain(r);
    ordered_json winfo;
    WeightField w = build_weight(r, d, winfo);
    cpx a = pole_from(o, r, "ahlfors.pole", default_ahlfors_pole(d));
    double tol_mod = r.number("tolerance.modulus", 1e-6);
    long threads = resolve_threads(o, r);
    r.finish();
    if (winfo["family"] != "unit")
        throw invalid_input("weight.family: the ahlfors subcommand uses the unit weight");

    AhlforsMap f = make_ahlfors(d, a);
    BoundaryField fb = ahlfors_boundary(f, d);
    double mod_dev = 0.0;
    for (cpx v : fb.values) mod_dev = std::max(mod_dev, std::abs(std::abs(v) - 1.0));
    write_text_file(o.out, csv_boundary_multi(d, {&fb}, {"re", "im"}));

    ordered_json j = manifest_base("ahlfors", threads, cfg);
    j["domain"] = domain_json(d);
    j["weight"] = winfo;
    j["task"] = {{"pole", format_complex(a)}};
    j["residuals"] = {{"max_modulus_deviation", mod_dev}};
    j["tolerances"] = {{"modulus", tol_mod}};
    emit_manifest(o, j, {o.out});
    return mod_dev <= tol_mod ? 0 : 2;
}

int run_interp_check(Opt o) {
    if (o.out.empty()) o.out = "interp.csv";
    ConfigMap cfg = o.config.empty() ? ConfigMap{} : parse_config_file(o.config);
    ConfigReader r(cfg);
    DomainGeometry d = build_domain(r);
    ordered_json winfo;
    WeightField w = build_weight(r, d, winfo);
    cpx a = pole_from(o, r, "interp.pole", default_ahlfors_pole(d));
    std::vector<cpx> zs = r.complex_list("interp.z");
    std::vector<cpx> ws = r.complex_list("interp.w");
    long npairs = r.integer("interp.npairs", 5);
    double tol = r.number("tolerance.interp", 1e-6);
    long threads = resolve_threads(o, r);
    r.finish();
    if (zs.size() != ws.size())
        throw invalid_input("interp.z and interp.w must have the same length");
    if (zs.empty()) {
        std::vector<cpx> pts = default_interior_points(d, 2 * static_cast<int>(npairs));
        for (long i = 0; i < npairs; ++i) {
            zs.push_back(pts[static_cast<std::size_t>(i)]);
            ws.push_back(pts[static_cast<std::size_t>(i + npairs)]);
        }
    }

    SzegoSolver solver(d, w);
    AhlforsMap f = make_ahlfors(d, a);
    std::string csv = "re_z,im_z,re_w,im_w,residual\n";
    double worst = 0.0;
    for (std::size_t i = 0; i < zs.size(); ++i) {
        double res = interpolation_residual(solver, f, d, zs[i], ws[i]);
        worst = std::max(worst, res);
        csv += fmt17(zs[i].real()) + "," + fmt17(zs[i].imag()) + "," + fmt17(ws[i].real()) +
               "," + fmt17(ws[i].imag()) + "," + fmt17(res) + "\n";
    }
    write_text_file(o.out, csv);

    ordered_json j = manifest_base("interp-check", threads, cfg);
    j["domain"] = domain_json(d);
    j["weight"] = winfo;
    j["task"] = {{"pole", format_complex(a)}, {"pairs", zs.size()}};
    j["residuals"] = {{"max_interpolation", worst}};
    j["tolerances"] = {{"interp", tol}};
    emit_manifest(o, j, {o.out});
    return worst <= tol ? 0 : 2;
}

std::vector<std::pair<cpx, cpx>> kernel_points(const Opt& o, ConfigReader& r,
                                               const DomainGeometry& d, bool pair_with_w) {
    if (!o.points.empty()) return read_points_csv(o.points);
    std::vector<cpx> zs = r.complex_list("points.z");
    std::vector<cpx> ws = r.complex_list("points.w");
    std::vector<std::pair<cpx, cpx>> pts;
    if (!zs.empty()) {
        if (pair_with_w) {
            if (ws.size() != zs.size())
                throw invalid_input("points.z and points.w must have the same length");
            for (std::size_t i = 0; i < zs.size(); ++i) pts.emplace_back(zs[i], ws[i]);
        } else {
            for (cpx z : zs) pts.emplace_back(z, cpx(0.0, 0.0));
        }
        return pts;
    }
    if (!ws.empty()) throw invalid_input("points.w given without points.z");
    std::vector<cpx> grid = default_interior_points(d, 3);
    if (pair_with_w) {
        for (cpx z : grid)
            for (cpx w : grid) pts.emplace_back(z, w);
    } else {
        for (cpx z : grid) pts.emplace_back(z, cpx(0.0, 0.0));
    }
    return pts;
}

FPrimeBasis build_basis(ConfigReader& r, const DomainGeometry& d, const WeightField& w,
                        cpx a, ordered_json& binfo) {
    std::string def = d.preset == "annulus" ? "analytic-annulus" : "szego-span";
    std::string id = r.str("bergman.basis", def);
    binfo["basis"] = id;
    return fprime_basis(d, w, a, id);
}

int run_bergman(Opt o) {
    if (o.out.empty()) o.out = "bergman.csv";
    ConfigMap cfg = o.config.empty() ? ConfigMap{} : parse_config_file(o.config);
    ConfigReader r(cfg);
    DomainGeometry d = build_domain(r);
    ordered_json winfo;
    WeightField w = build_weight(r, d, winfo);
    cpx a = pole_from(o, r, "bergman.pole", default_ahlfors_pole(d));
    long grid_n = r.integer("bergman.grid_n", 420);
    ordered_json binfo;
    FPrimeBasis basis = build_basis(r, d, w, a, binfo);
    std::vector<std::pair<cpx, cpx>> pts = kernel_points(o, r, d, true);
    long threads = resolve_threads(o, r);
    r.finish();

    GramMatrix gram = gram_matrix(basis, d, static_cast<int>(grid_n));
    BergmanEvaluator ev(d, basis, gram);
    std::vector<KernelRow> rows;
    for (const auto& [z, wq] : pts) rows.push_back({z, wq, ev.bergman(z, wq)});
    write_text_file(o.out, csv_kernel_rows(rows));

    ordered_json j = manifest_base("bergman", threads, cfg);
    j["domain"] = domain_json(d);
    j["weight"] = winfo;
    binfo["gram_method"] = gram.method;
    binfo["gram_est_error"] = gram.est_error;
    binfo["pole"] = format_complex(a);
    j["task"] = binfo;
    emit_manifest(o, j, {o.out});
    return 0;
}

int run_reduced(Opt o) {
    if (o.out.empty()) o.out = "reduced.csv";
    ConfigMap cfg = o.config.empty() ? ConfigMap{} : parse_config_file(o.config);
    ConfigReader r(cfg);
    DomainGeometry d = build_domain(r);
    ordered_json winfo;
    WeightField w = build_weight(r, d, winfo);
    cpx a = pole_from(o, r, "reduced.pole", default_ahlfors_pole(d));
    long order = r.integer("reduced.order", 1);
    if (o.order > 0) order = o.order;
    cpx zeta = r.complex_val("reduced.zeta", default_ahlfors_pole(d));
    if (!o.zeta.empty()) zeta = parse_complex(o.zeta);
    long grid_n = r.integer("bergman.grid_n", 420);
    ordered_json binfo;
    FPrimeBasis basis = build_basis(r, d, w, a, binfo);
    std::vector<std::pair<cpx, cpx>> pts = kernel_points(o, r, d, false);
    long threads = resolve_threads(o, r);
    r.finish();
    if (order < 1 || order > 4) throw invalid_input("reduced.order: must be in 1..4");

    GramMatrix gram = gram_matrix(basis, d, static_cast<int>(grid_n));
    BergmanEvaluator ev(d, basis, gram);
    std::vector<KernelRow> rows;
    double max_cond = 0.0;
    for (const auto& [z, unused] : pts) {
        (void)unused;
        cpx val;
        if (order == 1) {
            val = ev.reduced(z, zeta);
        } else {
            HigherReduced hr = higher_reduced(static_cast<int>(order), z, zeta, ev);
            val = hr.value;
            max_cond = std::max(max_cond, hr.cond);
        }
        rows.push_back({z, zeta, val});
    }
    write_text_file(o.out, csv_kernel_rows(rows));

    ordered_json j = manifest_base("reduced", threads, cfg);
    j["domain"] = domain_json(d);
    j["weight"] = winfo;
    binfo["gram_method"] = gram.method;
    binfo["gram_est_error"] = gram.est_error;
    binfo["pole"] = format_complex(a);
    binfo["order"] = order;
    binfo["zeta"] = format_complex(zeta);
    if (order > 1) binfo["max_determinant_cond"] = max_cond;
    j["task"] = binfo;
    emit_manifest(o, j, {o.out});
    return 0;
}

int run_converge(Opt o) {
    if (o.out.empty()) o.out = "converge.csv";
    ConfigMap cfg = o.config.empty() ? ConfigMap{} : parse_config_file(o.config);
    ConfigReader r(cfg);
    DomainGeometry d = build_domain(r);
    std::string kind = o.kind.empty() ? r.str("converge.kind", "") : o.kind;
    if (!o.kind.empty()) r.str("converge.kind", "");  // flag shadows the key
    if (kind.empty()) throw invalid_input("converge.kind: required (or pass --kind)");
    WeightFamily fam = make_family(r.str("converge.family", "exp-cos"),
                                   static_cast<int>(r.integer("converge.component", 0)));
    long kmax = r.integer("converge.kmax", 16);
    long npairs = r.integer("converge.npairs", 6);
    long threads = resolve_threads(o, r);

    ordered_json j = manifest_base("converge", threads, cfg);
    j["domain"] = domain_json(d);
    ordered_json task;
    task["kind"] = kind;
    task["family"] = fam.family_id;
    task["component"] = fam.component;
    task["kmax"] = kmax;

    auto custom_pairs = [&](bool second_is_node) {
        PairGrid g;
        std::vector<cpx> zs = r.complex_list("converge.z");
        if (zs.empty()) return g;
        g.grid_id = "custom";
        if (second_is_node) {
            std::vector<double> nodes = r.numbers("converge.nodes", {});
            if (nodes.size() != zs.size())
                throw invalid_input("converge.z and converge.nodes must have the same length");
            for (std::size_t i = 0; i < zs.size(); ++i) {
                PointRef pa, pb;
                pa.z = zs[i];
                pb.is_node = true;
                pb.node = static_cast<std::size_t>(nodes[i]);
                g.pairs.emplace_back(pa, pb);
            }
        } else {
            std::vector<cpx> ws = r.complex_list("converge.w");
            if (ws.size() != zs.size())
                throw invalid_input("converge.z and converge.w must have the same length");
            for (std::size_t i = 0; i < zs.size(); ++i) {
                PointRef pa, pb;
                pa.z = zs[i];
                pb.z = ws[i];
                g.pairs.emplace_back(pa, pb);
            }
        }
        return g;
    };

    auto finish_report = [&](const ConvergenceReport& rep) {
        write_text_file(o.out, csv_converge(rep));
        task["grid_id"] = rep.grid_id;
        j["task"] = task;
        double ratio = rep.sup_errors.front() > 0.0
                           ? rep.sup_errors.back() / rep.sup_errors.front()
                           : 0.0;
        j["residuals"] = {{"first_error", rep.sup_errors.front()},
                          {"final_error", rep.sup_errors.back()},
                          {"final_over_first", ratio},
                          {"tail_monotone", rep.tail_monotone},
                          {"slope", rep.slope}};
        double max_ratio = r.number("converge.max_final_ratio", -1.0);
        j["tolerances"] =
            max_ratio >= 0.0 ? ordered_json{{"max_final_ratio", max_ratio}} : ordered_json::object();
        r.finish();
        emit_manifest(o, j, {o.out});
        if (max_ratio >= 0.0 && ratio > max_ratio) return 2;
        return 0;
    };

    if (kind == "interior" || kind == "garabedian") {
        PairGrid g = custom_pairs(false);
        if (g.pairs.empty()) g = default_interior_grid(d, static_cast<int>(npairs));
        ConvergenceReport rep = kind == "interior"
                                    ? ramadanov_interior(fam, d, static_cast<int>(kmax), g)
                                    : garabedian_convergence(fam, d, static_cast<int>(kmax), g);
        return finish_report(rep);
    }
    if (kind == "closure") {
        PairGrid g = custom_pairs(true);
        if (g.pairs.empty()) g = default_closure_grid(d, static_cast<int>(npairs));
        return finish_report(ramadanov_closure(fam, d, static_cast<int>(kmax), g));
    }
    if (kind == "boundary-point") {
        long node = r.integer("converge.node", 3);
        std::vector<cpx> zg = r.complex_list("converge.z");
        if (zg.empty())
            zg = default_boundary_point_zgrid(d, static_cast<std::size_t>(node),
                                              static_cast<int>(npairs));
        task["node"] = node;
        return finish_report(boundary_point_convergence(
            fam, d, static_cast<std::size_t>(node), zg, static_cast<int>(kmax)));
    }
    if (kind == "zeros") {
        cpx a = pole_from(o, r, "converge.pole", default_ahlfors_pole(d));
        r.finish();
        ZeroTrackReport rep = zero_tracking(fam, d, a, static_cast<int>(kmax));
        write_text_file(o.out, csv_zero_track(rep));
        task["pole"] = format_complex(a);
        task["limit_count"] = rep.limit_count;
        task["k0"] = rep.k0;
        j["task"] = task;
        j["residuals"] = {{"limit_count", rep.limit_count},
                          {"expected_count", d.connectivity() - 1},
                          {"k0", rep.k0}};
        emit_manifest(o, j, {o.out});
        return rep.limit_count == d.connectivity() - 1 ? 0 : 2;
    }
    if (kind == "exploratory") {
        std::vector<double> nodes = r.numbers("converge.nodes", {});
        r.finish();
        std::vector<std::pair<std::size_t, std::size_t>> node_pairs;
        if (!nodes.empty()) {
            if (nodes.size() % 2 != 0)
                throw invalid_input("converge.nodes must list node index pairs");
            for (std::size_t i = 0; i + 1 < nodes.size(); i += 2)
                node_pairs.emplace_back(static_cast<std::size_t>(nodes[i]),
                                        static_cast<std::size_t>(nodes[i + 1]));
        } else {
            std::size_t total = d.total_nodes();
            node_pairs = {{3, total / 2 + 1}, {total / 4, 3 * total / 4}, {7, total - 5}};
        }
        AhlforsMap f = make_ahlfors(d, default_ahlfors_pole(d));
        std::vector<ExploratoryRow> rows =
            exploratory_boundary_pairs(fam, d, f, node_pairs, static_cast<int>(kmax));
        write_text_file(o.out, csv_exploratory(rows));
        task["note"] = "recorded only; no convergence assertion";
        j["task"] = task;
        emit_manifest(o, j, {o.out});
        return 0;
    }
    throw invalid_input("converge.kind: unknown kind '" + kind + "'");
}

int cmd_selftest(Opt o) {
    std::vector<SelfTestResult> results = szg::run_selftest();
    bool all = true;
    for (const SelfTestResult& res : results) {
        std::printf("%s  %-38s residual %.3e  (tol %.1e)\n", res.pass ? "ok  " : "FAIL",
                    res.name.c_str(), res.residual, res.tolerance);
        all = all && res.pass;
    }
    std::printf("%s: %zu checks\n", all ? "selftest passed" : "selftest FAILED",
                results.size());
    if (!o.out.empty()) {
        std::string csv = "name,residual,tolerance,pass\n";
        for (const SelfTestResult& res : results)
            csv += res.name + "," + fmt17(res.residual) + "," + fmt17(res.tolerance) + "," +
                   (res.pass ? "1" : "0") + "\n";
        write_text_file(o.out, csv);
        ConfigMap empty;
        ordered_json j = manifest_base("selftest", 1, empty);
        emit_manifest(o, j, {o.out});
    }
    return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted Szego/Garabedian kernels on multiply connected domains"};
    app.require_subcommand(1);
    app.fallthrough();  // let subcommands see app-level flags like --threads
    Opt o;
    app.add_option("--threads", o.threads, "worker cap (also env SZG_THREADS)")
        ->envname("SZG_THREADS");

    auto add_common = [&](CLI::App* c) {
        c->add_option("--config", o.config, "config file (flat key = value)");
        c->add_option("--out", o.out, "output CSV path");
        c->add_option("--manifest", o.manifest, "manifest path (default: derived from --out)");
    };
    CLI::App* c_domain = app.add_subcommand("domain", "sample a boundary preset");
    add_common(c_domain);
    CLI::App* c_szego = app.add_subcommand("szego", "boundary values of the weighted kernel");
    add_common(c_szego);
    c_szego->add_option("--pole", o.pole, "interior pole a (e.g. 0.3+0i)");
    CLI::App* c_gar = app.add_subcommand("garabedian", "boundary values of L and its regular part");
    add_common(c_gar);
    c_gar->add_option("--pole", o.pole, "interior pole a");
    CLI::App* c_zeros = app.add_subcommand("zeros", "locate the zeros of S(., a)");
    add_common(c_zeros);
    c_zeros->add_option("--pole", o.pole, "interior pole a");
    CLI::App* c_ahl = app.add_subcommand("ahlfors", "boundary values of the Ahlfors map");
    add_common(c_ahl);
    c_ahl->add_option("--pole", o.pole, "interior base point a");
    CLI::App* c_interp = app.add_subcommand("interp-check", "rational interpolation identity");
    add_common(c_interp);
    c_interp->add_option("--pole", o.pole, "Ahlfors base point a");
    CLI::App* c_berg = app.add_subcommand("bergman", "Bergman kernel at point pairs");
    add_common(c_berg);
    c_berg->add_option("--pole", o.pole, "basis pole a");
    c_berg->add_option("--points", o.points, "CSV of evaluation pairs (re_z,im_z[,re_w,im_w])");
    CLI::App* c_red = app.add_subcommand("reduced", "reduced Bergman kernel (order 1..4)");
    add_common(c_red);
    c_red->add_option("--pole", o.pole, "basis pole a");
    c_red->add_option("--points", o.points, "CSV of evaluation points (re_z,im_z)");
    c_red->add_option("--order", o.order, "kernel order (1 = reduced, n >= 2 via determinant)");
    c_red->add_option("--zeta", o.zeta, "second argument zeta");
    CLI::App* c_conv = app.add_subcommand("converge", "weight-family convergence studies");
    add_common(c_conv);
    c_conv->add_option("--kind", o.kind,
                       "interior|closure|boundary-point|zeros|garabedian|exploratory");
    c_conv->add_option("--pole", o.pole, "pole for --kind zeros");
    CLI::App* c_self = app.add_subcommand("selftest", "closed-form oracle battery");
    add_common(c_self);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 4;
    }

    try {
        if (app.got_subcommand(c_domain)) return run_domain(o);
        if (app.got_subcommand(c_szego)) return run_szego(o);
        if (app.got_subcommand(c_gar)) return run_garabedian(o);
        if (app.got_subcommand(c_zeros)) return run_zeros(o);
        if (app.got_subcommand(c_ahl)) return run_ahlfors(o);
        if (app.got_subcommand(c_interp)) return run_interp_check(o);
        if (app.got_subcommand(c_berg)) return run_bergman(o);
        if (app.got_subcommand(c_red)) return run_reduced(o);
        if (app.got_subcommand(c_conv)) return run_converge(o);
        if (app.got_subcommand(c_self)) return cmd_selftest(o);
    } catch (const invalid_input& e) {
        std::fprintf(stderr, "szg: config error: %s\n", e.what());
        return 4;
    } catch (const io_error& e) {
        std::fprintf(stderr, "szg: io error: %s\n", e.what());
        return 3;
    } catch (const numeric_error& e) {
        std::fprintf(stderr, "szg: numerical error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "szg: error: %s\n", e.what());
        return 2;
    }
    return 0;
}

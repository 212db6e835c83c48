// Acceptance battery: one line per criterion, exit 0 iff all pass.
// Oracles are closed forms and independently summed series; tolerances are
// pinned in the code next to each check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "szg/experiments.hpp"
#include "szg/selftest.hpp"

using namespace szg;
using clock_type = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

void report(int idx, const std::string& name, bool pass, double measured, double tol,
            double secs = -1.0) {
    if (!pass) ++failures;
    std::printf("[%2d] %s  %-34s measured=%.3e  tol=%.1e", idx, pass ? "PASS" : "FAIL",
                name.c_str(), measured, tol);
    if (secs >= 0.0) std::printf("  (%.2f s)", secs);
    std::printf("\n");
    std::fflush(stdout);
}

cpx disc_szego(cpx z, cpx w) { return 1.0 / (2.0 * pi * (1.0 - z * std::conj(w))); }

const double rho = 0.5;

cpx annulus_szego_series(cpx z, cpx w) {
    cpx q = z * std::conj(w);
    cpx sum = 0.0;
    for (int n = -400; n <= 400; ++n) {
        double denom_inv = 1.0 / (1.0 + std::pow(rho, 2.0 * n + 1.0));
        sum += std::pow(q, n) * denom_inv;
    }
    return sum / (2.0 * pi);
}

cpx annulus_reduced_series(cpx z, cpx w, int terms) {
    cpx q = z * std::conj(w);
    cpx sum = 0.0;
    for (int n = -terms; n <= terms; ++n) {
        if (n == -1) continue;
        sum += (n + 1.0) * std::pow(q, n) / (1.0 - std::pow(rho, 2.0 * n + 2.0));
    }
    return sum / pi;
}

double annulus_area_gram(int n) {
    return 2.0 * pi * (1.0 - std::pow(rho, 2.0 * n + 2.0)) / (2.0 * n + 2.0);
}

// ---- criteria ----------------------------------------------------------------

void crit1_disc_closed_form() {
    auto t0 = clock_type::now();
    DomainGeometry d = make_preset("disc", {1.0}, 128);
    SzegoSolver solver(d, unit_weight(d));
    const SzegoSolution& sol = solver.solve(cpx(0.3, 0.0));
    double sup = 0.0;
    for (std::size_t i = 0; i < d.total_nodes(); ++i)
        sup = std::max(sup, std::abs(sol.boundary.values[i] - disc_szego(d.z[i], cpx(0.3, 0.0))));
    double secs = seconds_since(t0);
    report(1, "disc-closed-form", sup <= 1e-10 && secs < 1.0, sup, 1e-10, secs);
}

void crit2_weighted_disc() {
    DomainGeometry d = make_preset("disc", {1.0}, 128);
    WeightField w = abs_pow_weight(d, cpx(2.0, 0.0), 2.0);
    SzegoSolver solver(d, w);
    double sup = 0.0;
    for (cpx a : {cpx(0.0, 0.0), cpx(0.3, 0.0), cpx(0.0, 0.5)}) {
        const SzegoSolution& sol = solver.solve(a);
        for (std::size_t i = 0; i < d.total_nodes(); ++i) {
            cpx oracle = disc_szego(d.z[i], a) / ((d.z[i] - 2.0) * (std::conj(a) - 2.0));
            sup = std::max(sup, std::abs(sol.boundary.values[i] - oracle));
        }
    }
    report(2, "weighted-disc-factorization", sup <= 1e-8, sup, 1e-8);
}

void crit3_annulus_laurent() {
    DomainGeometry d = make_preset("annulus", {1.0, rho}, 256);
    SzegoSolver solver(d, unit_weight(d));
    cpx a(0.7, 0.0);
    const SzegoSolution& sol = solver.solve(a);
    double sup = 0.0;
    for (std::size_t i = 0; i < d.total_nodes(); ++i)
        sup = std::max(sup, std::abs(sol.boundary.values[i] - annulus_szego_series(d.z[i], a)));
    for (cpx z : {cpx(0.6, 0.1), cpx(0.0, -0.55), cpx(0.8, 0.0)})
        sup = std::max(sup, std::abs(solver.eval(z, a) - annulus_szego_series(z, a)));
    report(3, "annulus-laurent-oracle", sup <= 1e-8, sup, 1e-8);
}

void crit4_operator_structure() {
    DomainGeometry da = make_preset("annulus", {1.0, rho}, 128);
    KSMatrix ma = assemble_ks(da, exp_cos_weight(da, 4.0));
    double defect = skew_defect(ma);

    DomainGeometry dd = make_preset("disc", {1.0}, 128);
    KSMatrix mc = assemble_ks(dd, constant_weight(dd, 2.5));
    double disc_max = mc.entries.cwiseAbs().maxCoeff();

    KSMatrix md = assemble_ks(dd, abs_pow_weight(dd, cpx(2.0, 0.0), 2.0));
    double smin = std::min(symmetrized_min_singular(ma), symmetrized_min_singular(md));

    bool pass = defect <= 1e-12 && disc_max <= 1e-12 && smin >= 1.0 - 1e-8;
    report(4, "kerzman-stein-structure", pass, std::max(defect, disc_max), 1e-12);
}

void crit5_diagonal_extrapolation() {
    // two-sided neighbor averages of A(z_i, z_j) at mesh eps, eps/2, eps/4,
    // Richardson in eps^2 twice; oracle (1/(2 pi i)) d(1/phi)/ds on e^{cos t}
    double worst = 0.0;
    std::vector<DomainGeometry> ds;
    std::vector<WeightField> ws;
    for (int n : {256, 512, 1024}) {
        ds.push_back(make_preset("disc", {1.0}, n));
        ws.push_back(exp_cos_weight(ds.back(), 1.0));
    }
    for (int m = 0; m < 8; ++m) {
        cpx g[3];
        for (int lev = 0; lev < 3; ++lev) {
            const DomainGeometry& d = ds[static_cast<std::size_t>(lev)];
            const WeightField& w = ws[static_cast<std::size_t>(lev)];
            std::size_t n = d.total_nodes();
            std::size_t i = static_cast<std::size_t>(m) * (n / 8);
            g[lev] = 0.5 * (ks_offdiag(i, (i + 1) % n, d, w) +
                            ks_offdiag(i, (i + n - 1) % n, d, w));
        }
        cpx r1 = (4.0 * g[1] - g[0]) / 3.0;
        cpx r2 = (4.0 * g[2] - g[1]) / 3.0;
        cpx limit = (16.0 * r2 - r1) / 15.0;
        double t = 2.0 * pi * m / 8.0;
        cpx oracle(0.0, -std::sin(t) * std::exp(-std::cos(t)) / (2.0 * pi));
        worst = std::max(worst, std::abs(limit - oracle));
    }
    report(5, "diagonal-extrapolation", worst <= 1e-6, worst, 1e-6);
}

void crit6_identities() {
    double id_worst = 0.0, refl_worst = 0.0;
    struct Fixture {
        const char* preset;
        std::vector<double> params;
        int nodes;
        cpx a, zp;
    };
    const Fixture fixtures[] = {
        {"disc", {1.0}, 128, cpx(0.3, 0.0), cpx(-0.2, 0.4)},
        {"annulus", {1.0, rho}, 128, cpx(0.7, 0.0), cpx(-0.1, 0.62)},
        {"circle-holes", {}, 128, cpx(0.0, 0.55), cpx(-0.15, -0.6)},
    };
    for (const Fixture& f : fixtures) {
        DomainGeometry d = make_preset(f.preset, f.params, f.nodes);
        WeightField w = exp_cos_weight(d, 4.0);
        SzegoSolver solver(d, w);
        GarabedianSolution gar = garabedian_from_szego(solver.solve(f.a), d, w);
        id_worst = std::max(id_worst, gar.boundary_identity_residual);
        refl_worst = std::max(refl_worst, reflection_identity_residual(f.a, f.zp, d, w));
    }
    bool pass = id_worst <= 1e-8 && refl_worst <= 1e-7;
    report(6, "boundary-and-reflection-identity", pass, std::max(id_worst, refl_worst), 1e-7);
}

void crit7_reproducing() {
    using Fn = std::function<cpx(cpx)>;
    double worst = 0.0;
    auto battery = [&worst](const DomainGeometry& d, cpx a, const std::vector<Fn>& fns) {
        for (const WeightField& w : {unit_weight(d), exp_cos_weight(d, 4.0)}) {
            SzegoSolver solver(d, w);
            const SzegoSolution& sol = solver.solve(a);
            for (const Fn& h : fns) {
                BoundaryField hb = sample_boundary(d, h);
                worst = std::max(worst, reproducing_residual(sol, hb, h(a), d, w));
            }
        }
    };
    DomainGeometry disc = make_preset("disc", {1.0}, 128);
    battery(disc, cpx(0.3, 0.0),
            {[](cpx) { return cpx(1.0, 0.0); }, [](cpx z) { return z; },
             [](cpx z) { return z * z * z; }, [](cpx z) { return std::exp(z); },
             [](cpx z) { return (z - 0.1) / (z + 3.0); }, [](cpx z) { return 1.0 / (z - 2.5); }});
    DomainGeometry ann = make_preset("annulus", {1.0, rho}, 128);
    battery(ann, cpx(0.7, 0.0),
            {[](cpx) { return cpx(1.0, 0.0); }, [](cpx z) { return z; },
             [](cpx z) { return z * z * z; }, [](cpx z) { return 1.0 / z; },
             [](cpx z) { return 1.0 / (z * z); }, [](cpx z) { return (z - 0.1) / (z + 3.0); }});
    DomainGeometry ch = make_preset("circle-holes", {}, 128);
    battery(ch, cpx(0.0, 0.55),
            {[](cpx) { return cpx(1.0, 0.0); }, [](cpx z) { return z; },
             [](cpx z) { return z * z; }, [](cpx z) { return 1.0 / (z - 0.45); },
             [](cpx z) { return 1.0 / (z + 0.45); }, [](cpx z) { return (z + 1.0) / (z - 3.0); }});
    report(7, "reproducing-battery", worst <= 1e-8, worst, 1e-8);
}

void crit8_zero_counts() {
    struct Fixture {
        const char* preset;
        std::vector<double> params;
        int nodes;
        cpx a;
        int expected;
    };
    const Fixture fixtures[] = {
        {"disc", {1.0}, 128, cpx(0.3, 0.0), 0},
        {"annulus", {1.0, rho}, 128, cpx(0.7, 0.0), 1},
        {"circle-holes", {}, 128, cpx(0.0, 0.55), 2},
    };
    double worst_abs = 0.0;
    bool counts_ok = true;
    for (const Fixture& f : fixtures) {
        DomainGeometry d = make_preset(f.preset, f.params, f.nodes);
        std::vector<WeightField> weights = {unit_weight(d)};
        for (double k : {4.0, 8.0, 16.0}) weights.push_back(exp_cos_weight(d, k));
        for (const WeightField& w : weights) {
            SzegoSolver solver(d, w);
            const SzegoSolution& sol = solver.solve(f.a);
            std::vector<cpx> zs = zero_locate(sol, d);
            if (static_cast<int>(zs.size()) != f.expected) counts_ok = false;
            for (cpx z : zs) worst_abs = std::max(worst_abs, std::abs(solver.eval(z, f.a)));
        }
    }
    report(8, "zero-counts-and-location", counts_ok && worst_abs < 1e-8, worst_abs, 1e-8);
}

void crit9_interpolation() {
    DomainGeometry ann = make_preset("annulus", {1.0, rho}, 160);
    std::vector<cpx> pts = default_interior_points(ann, 20);
    double ann_worst = 0.0;
    for (const WeightField& w : {unit_weight(ann), exp_cos_weight(ann, 4.0)}) {
        SzegoSolver solver(ann, w);
        AhlforsMap f = make_ahlfors(ann, default_ahlfors_pole(ann));
        for (int p = 0; p < 10; ++p)
            ann_worst = std::max(ann_worst, interpolation_residual(
                                                solver, f, ann, pts[static_cast<std::size_t>(p)],
                                                pts[static_cast<std::size_t>(p) + 10]));
    }

    DomainGeometry disc = make_preset("disc", {1.0}, 128);
    std::vector<cpx> dp = default_interior_points(disc, 20);
    WeightField wd = abs_pow_weight(disc, cpx(2.0, 0.0), 2.0);
    SzegoSolver dsolver(disc, wd);
    AhlforsMap df = make_ahlfors(disc, default_ahlfors_pole(disc));
    double disc_worst = 0.0;
    for (int p = 0; p < 10; ++p)
        disc_worst = std::max(disc_worst, interpolation_residual(
                                              dsolver, df, disc, dp[static_cast<std::size_t>(p)],
                                              dp[static_cast<std::size_t>(p) + 10]));
    bool pass = ann_worst <= 1e-6 && disc_worst <= 1e-8;
    report(9, "interpolation-identity", pass, std::max(ann_worst, disc_worst), 1e-6);
}

void crit10_ramadanov_suite() {
    auto t0 = clock_type::now();
    bool pass = true;
    double worst_law = 0.0;

    // exact homogeneity calibration
    for (const char* preset : {"ellipse", "annulus"}) {
        DomainGeometry d = (preset == std::string("annulus"))
                               ? make_preset(preset, {1.0, rho}, 128)
                               : make_preset(preset, {1.0, 0.6}, 128);
        ConvergenceReport rep =
            ramadanov_interior(make_family("constant-blend"), d, 8, default_interior_grid(d, 4));
        double c0 = rep.sup_errors[0] * 2.0;
        for (std::size_t i = 0; i < rep.sup_errors.size(); ++i) {
            double rel = std::abs(rep.sup_errors[i] * (rep.ks[i] + 1.0) - c0) / c0;
            worst_law = std::max(worst_law, rel);
        }
    }
    if (worst_law > 1e-9) pass = false;

    // exp-cos tails on every preset
    double worst_ratio = 0.0;
    struct P {
        const char* name;
        std::vector<double> params;
        int nodes;
    };
    const P presets[] = {{"disc", {1.0}, 128},
                         {"ellipse", {1.0, 0.6}, 128},
                         {"smooth-star", {1.0, 0.3, 5.0}, 160},
                         {"annulus", {1.0, rho}, 128},
                         {"circle-holes", {}, 96}};
    for (const P& p : presets) {
        DomainGeometry d = make_preset(p.name, p.params, p.nodes);
        ConvergenceReport rep =
            ramadanov_interior(make_family("exp-cos"), d, 16, default_interior_grid(d, 4));
        if (!rep.tail_monotone) pass = false;
        double ratio = rep.sup_errors.back() / rep.sup_errors.front();
        worst_ratio = std::max(worst_ratio, ratio);
    }
    if (worst_ratio > 0.2) pass = false;
    double secs = seconds_since(t0);
    if (secs > 120.0) pass = false;
    report(10, "ramadanov-suites", pass, worst_ratio, 0.2, secs);
}

void crit11_bergman() {
    DomainGeometry disc = make_preset("disc", {1.0}, 128);
    FPrimeBasis none = fprime_basis(disc, unit_weight(disc), cpx(0.3, 0.0), "szego-span");
    BergmanEvaluator dev(disc, none, gram_matrix(none, disc));
    const cpx grid[5] = {cpx(0.0, 0.0), cpx(0.3, 0.0), cpx(-0.25, 0.2), cpx(0.0, -0.45),
                         cpx(0.5, 0.1)};
    double disc_worst = 0.0;
    for (cpx z : grid)
        for (cpx w : grid) {
            cpx oracle = 1.0 / (pi * std::pow(1.0 - z * std::conj(w), 2.0));
            disc_worst = std::max(disc_worst, std::abs(dev.bergman(z, w) - oracle));
        }

    DomainGeometry ann = make_preset("annulus", {1.0, rho}, 192);
    FPrimeBasis ba = fprime_basis(ann, unit_weight(ann), cpx(0.7, 0.0), "analytic-annulus");
    BergmanEvaluator ea(ann, ba, gram_matrix(ba, ann));
    FPrimeBasis bs = fprime_basis(ann, unit_weight(ann), cpx(0.7, 0.0), "szego-span");
    GramMatrix gs = gram_matrix(bs, ann);
    BergmanEvaluator es(ann, bs, gs);
    double ana_worst = 0.0, span_worst = 0.0;
    for (cpx z : {cpx(0.7, 0.0), cpx(-0.6, 0.15)})
        for (cpx w : {cpx(0.1, 0.7), cpx(0.66, 0.0)}) {
            cpx oracle = annulus_reduced_series(z, w, 400);
            ana_worst = std::max(ana_worst, std::abs(ea.reduced(z, w) - oracle));
            span_worst = std::max(span_worst, std::abs(es.reduced(z, w) - oracle));
        }

    // grid quadrature vs the 2 pi ln 2 closed form on exactly 1/z
    FPrimeBasis forced = ba;
    forced.basis_id = "szego-span";
    GramMatrix gq = gram_matrix(forced, ann);
    double gram_rel =
        std::abs(gq.entries(0, 0) - 2.0 * pi * std::log(2.0)) / (2.0 * pi * std::log(2.0));

    bool pass = disc_worst <= 1e-9 && ana_worst <= 1e-6 &&
                span_worst <= std::max(1e-3, gs.est_error) && gram_rel <= 1e-3;
    report(11, "bergman-and-reduced", pass, std::max({disc_worst, ana_worst, gram_rel}), 1e-3);
}

void crit12_higher_order() {
    DomainGeometry disc = make_preset("disc", {1.0}, 128);
    FPrimeBasis none = fprime_basis(disc, unit_weight(disc), cpx(0.0, 0.0), "szego-span");
    BergmanEvaluator dev(disc, none, gram_matrix(none, disc));
    double disc_worst = 0.0;
    for (cpx z : {cpx(0.6, 0.0), cpx(0.0, 0.6), cpx(-0.42, 0.42), cpx(0.3, -0.1), cpx(0.1, 0.0)}) {
        HigherReduced hr = higher_reduced(2, z, cpx(0.0, 0.0), dev);
        disc_worst = std::max(disc_worst, std::abs(hr.value - 2.0 * z / pi));
    }

    DomainGeometry ann = make_preset("annulus", {1.0, rho}, 192);
    FPrimeBasis ba = fprime_basis(ann, unit_weight(ann), cpx(0.7, 0.0), "analytic-annulus");
    BergmanEvaluator ea(ann, ba, gram_matrix(ba, ann));
    double zeta_r = 0.7;
    cpx zeta(zeta_r, 0.0);
    auto rp = [&](cpx z) {
        cpx sum = 0.0;
        for (int n = -60; n <= 60; ++n) {
            if (n == -1) continue;
            sum += n * std::pow(zeta_r, n - 1.0) * std::pow(z, n) / annulus_area_gram(n);
        }
        return sum;
    };
    cpx ktt = annulus_reduced_series(zeta, zeta, 200);
    double ann_worst = 0.0;
    for (cpx z : {cpx(0.6, 0.0), cpx(0.0, 0.72), cpx(-0.58, 0.1)}) {
        cpx oracle = rp(z) - rp(zeta) * annulus_reduced_series(z, zeta, 200) / ktt;
        HigherReduced hr = higher_reduced(2, z, zeta, ea);
        ann_worst = std::max(ann_worst, std::abs(hr.value - oracle));
    }
    bool pass = disc_worst <= 1e-6 && ann_worst <= 1e-4;
    report(12, "higher-order-determinant", pass, std::max(disc_worst, ann_worst), 1e-4);
}

void crit13_spectral_convergence() {
    auto disc_err = [](int n) {
        DomainGeometry d = make_preset("disc", {1.0}, n);
        SzegoSolver solver(d, unit_weight(d));
        const SzegoSolution& sol = solver.solve(cpx(0.3, 0.0));
        double sup = 0.0;
        for (std::size_t i = 0; i < d.total_nodes(); ++i)
            sup = std::max(sup,
                           std::abs(sol.boundary.values[i] - disc_szego(d.z[i], cpx(0.3, 0.0))));
        return sup;
    };
    auto wdisc_err = [](int n) {
        DomainGeometry d = make_preset("disc", {1.0}, n);
        SzegoSolver solver(d, abs_pow_weight(d, cpx(2.0, 0.0), 2.0));
        cpx a(0.3, 0.0);
        const SzegoSolution& sol = solver.solve(a);
        double sup = 0.0;
        for (std::size_t i = 0; i < d.total_nodes(); ++i) {
            cpx oracle = disc_szego(d.z[i], a) / ((d.z[i] - 2.0) * (std::conj(a) - 2.0));
            sup = std::max(sup, std::abs(sol.boundary.values[i] - oracle));
        }
        return sup;
    };
    auto ann_err = [](int n) {
        DomainGeometry d = make_preset("annulus", {1.0, rho}, n);
        SzegoSolver solver(d, unit_weight(d));
        cpx a(0.7, 0.0);
        const SzegoSolution& sol = solver.solve(a);
        double sup = 0.0;
        for (std::size_t i = 0; i < d.total_nodes(); ++i)
            sup = std::max(sup, std::abs(sol.boundary.values[i] - annulus_szego_series(d.z[i], a)));
        return sup;
    };

    bool pass = true;
    double worst_ratio_deficit = 0.0;
    auto check_sequence = [&](const std::vector<double>& errs) {
        for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
            if (errs[i + 1] <= 1e-10) continue;  // at the floor
            double ratio = errs[i] / errs[i + 1];
            if (ratio < 100.0) {
                pass = false;
                worst_ratio_deficit = std::max(worst_ratio_deficit, 100.0 - ratio);
            }
        }
        if (errs.back() > 1e-8) pass = false;  // convergence must actually land
    };
    check_sequence({disc_err(16), disc_err(32), disc_err(64)});
    check_sequence({wdisc_err(16), wdisc_err(32), wdisc_err(64), wdisc_err(128)});
    check_sequence({ann_err(32), ann_err(64), ann_err(128), ann_err(256)});
    report(13, "spectral-convergence", pass, worst_ratio_deficit, 0.0);
}

}  // namespace

int main() {
    auto t0 = clock_type::now();
    crit1_disc_closed_form();
    crit2_weighted_disc();
    crit3_annulus_laurent();
    crit4_operator_structure();
    crit5_diagonal_extrapolation();
    crit6_identities();
    crit7_reproducing();
    crit8_zero_counts();
    crit9_interpolation();
    crit10_ramadanov_suite();
    crit11_bergman();
    crit12_higher_order();
    crit13_spectral_convergence();
    std::printf("acceptance: %d/13 passed (%.1f s total)\n", 13 - failures, seconds_since(t0));
    return failures == 0 ? 0 : 1;
}

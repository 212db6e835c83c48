#include "szg/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "szg/bergman.hpp"
#include "szg/experiments.hpp"
#include "szg/kernels.hpp"
#include "szg/spectral.hpp"

namespace szg {

namespace {

// ---- closed-form references ------------------------------------------------

cpx disc_szego(cpx z, cpx a) { return 1.0 / (2.0 * pi * (1.0 - z * std::conj(a))); }

cpx annulus_szego_series(cpx z, cpx w, double rho, int terms) {
    cpx q = z * std::conj(w);
    cpx sum = 0.0;
    for (int n = -terms; n <= terms; ++n) {
        double denom_inv = 1.0 / (1.0 + std::pow(rho, 2.0 * n + 1.0));
        sum += std::pow(q, n) * denom_inv;
    }
    return sum / (2.0 * pi);
}

cpx annulus_reduced_series(cpx z, cpx w, double rho, int terms) {
    cpx q = z * std::conj(w);
    cpx sum = 0.0;
    for (int n = -terms; n <= terms; ++n) {
        if (n == -1) continue;
        double denom_inv = 1.0 / (1.0 - std::pow(rho, 2.0 * n + 2.0));
        sum += (n + 1.0) * std::pow(q, n) * denom_inv;
    }
    return sum / pi;
}

struct Check {
    std::string name;
    double tolerance;
    double (*run)();
};

double chk_spectral_derivative() {
    const std::size_t n = 64;
    std::vector<double> u(n);
    for (std::size_t j = 0; j < n; ++j) u[j] = std::exp(std::cos(2.0 * pi * j / n));
    std::vector<double> du = periodic_derivative(u);
    double err = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double t = 2.0 * pi * j / n;
        err = std::max(err, std::abs(du[j] - (-std::sin(t)) * std::exp(std::cos(t))));
    }
    return err;
}

double chk_cauchy_polynomial() {
    DomainGeometry d = make_preset("disc", {1.0}, 128);
    BoundaryField u = sample_boundary(d, [](cpx z) { return z * z; });
    return std::abs(cauchy_interior(u, cpx(0.3, 0.0), d).value - cpx(0.09, 0.0));
}

double chk_disc_szego() {
    DomainGeometry d = make_preset("disc", {1.0}, 128);
    SzegoSolver s(d, unit_weight(d));
    const SzegoSolution& sol = s.solve(cpx(0.3, 0.0));
    double err = 0.0;
    for (std::size_t i = 0; i < d.total_nodes(); ++i)
        err = std::max(err, std::abs(sol.boundary.values[i] - disc_szego(d.z[i], sol.a)));
    return err;
}

double chk_weighted_disc() {
    DomainGeometry d = make_preset("disc", {1.0}, 128);
    SzegoSolver s(d, abs_pow_weight(d, cpx(2.0, 0.0), 2.0));
    double err = 0.0;
    for (cpx a : {cpx(0.0, 0.0), cpx(0.3, 0.0), cpx(0.0, 0.5)}) {
        const SzegoSolution& sol = s.solve(a);
        for (std::size_t i = 0; i < d.total_nodes(); ++i) {
            cpx oracle = disc_szego(d.z[i], a) / ((d.z[i] - 2.0) * (std::conj(a) - 2.0));
            err = std::max(err, std::abs(sol.boundary.values[i] - oracle));
        }
    }
    return err;
}

double chk_annulus_szego() {
    DomainGeometry d = make_preset("annulus", {1.0, 0.5}, 256);
    SzegoSolver s(d, unit_weight(d));
    cpx a(0.7, 0.0);
    const SzegoSolution& sol = s.solve(a);
    double err = 0.0;
    for (std::size_t i = 0; i < d.total_nodes(); ++i)
        err = std::max(err,
                       std::abs(sol.boundary.values[i] - annulus_szego_series(d.z[i], a, 0.5, 400)));
    for (cpx z : {cpx(0.6, 0.1), cpx(-0.2, 0.7), cpx(0.0, -0.8)})
        err = std::max(err, std::abs(s.eval(z, a) - annulus_szego_series(z, a, 0.5, 400)));
    return err;
}

double chk_disc_constant_ks() {
    DomainGeometry d = make_preset("disc", {1.0}, 128);
    KSMatrix m = assemble_ks(d, constant_weight(d, 2.5));
    return m.entries.cwiseAbs().maxCoeff();
}

double chk_skew_defect() {
    DomainGeometry d = make_preset("annulus", {1.0, 0.5}, 128);
    return skew_defect(assemble_ks(d, exp_cos_weight(d, 4.0)));
}

double chk_min_singular() {
    DomainGeometry d = make_preset("disc", {1.0}, 128);
    double s = symmetrized_min_singular(assemble_ks(d, abs_pow_weight(d, cpx(2.0, 0.0), 2.0)));
    return std::max(0.0, 1.0 - s);
}

double chk_boundary_identity() {
    DomainGeometry d = make_preset("annulus", {1.0, 0.5}, 192);
    WeightField w = exp_cos_weight(d, 4.0);
    SzegoSolver s(d, w);
    GarabedianSolution g = garabedian_from_szego(s.solve(cpx(0.7, 0.0)), d, w);
    return g.boundary_identity_residual;
}

double chk_reflection_identity() {
    DomainGeometry d = make_preset("annulus", {1.0, 0.5}, 192);
    WeightField w = exp_cos_weight(d, 4.0);
    return reflection_identity_residual(cpx(0.7, 0.0), cpx(0.0, 0.8), d, w);
}

double chk_reproducing() {
    DomainGeometry d = make_preset("annulus", {1.0, 0.5}, 192);
    WeightField w = exp_cos_weight(d, 4.0);
    SzegoSolver s(d, w);
    cpx a(0.7, 0.0);
    BoundaryField h = sample_boundary(d, [](cpx z) { return z * z + 1.0 / z; });
    return reproducing_residual(s.solve(a), h, a * a + 1.0 / a, d, w);
}

double chk_annulus_zero() {
    DomainGeometry d = make_preset("annulus", {1.0, 0.5}, 192);
    SzegoSolver s(d, unit_weight(d));
    cpx a(0.7, 0.0);
    std::vector<cpx> zs = zero_locate(s.solve(a), d);
    if (zs.size() != 1) return 1.0;
    return std::abs(zs[0] - (-0.5 / std::conj(a)));
}

double chk_disc_ahlfors() {
    DomainGeometry d = make_preset("disc", {1.0}, 128);
    cpx a(0.3, 0.0);
    AhlforsMap f = make_ahlfors(d, a);
    double err = 0.0;
    for (cpx z : {cpx(0.5, 0.2), cpx(-0.4, 0.0), cpx(0.0, 0.6), cpx(0.1, -0.7)}) {
        cpx oracle = (z - a) / (1.0 - std::conj(a) * z);
        err = std::max(err, std::abs(ahlfors_eval(f, z, d).value - oracle));
    }
    return err;
}

double chk_disc_bergman() {
    DomainGeometry d = make_preset("disc", {1.0}, 128);
    FPrimeBasis basis = fprime_basis(d, unit_weight(d), cpx(0.0, 0.0), "szego-span");
    BergmanEvaluator ev(d, basis, gram_matrix(basis, d));
    double err = 0.0;
    for (cpx z : {cpx(0.3, 0.0), cpx(-0.2, 0.4)})
        for (cpx w : {cpx(0.0, 0.0), cpx(0.5, -0.1)}) {
            cpx oracle = 1.0 / (pi * std::pow(1.0 - z * std::conj(w), 2.0));
            err = std::max(err, std::abs(ev.bergman(z, w) - oracle));
        }
    return err;
}

double chk_annulus_reduced() {
    DomainGeometry d = make_preset("annulus", {1.0, 0.5}, 192);
    FPrimeBasis basis = fprime_basis(d, unit_weight(d), cpx(0.7, 0.0), "analytic-annulus");
    BergmanEvaluator ev(d, basis, gram_matrix(basis, d));
    double err = 0.0;
    for (cpx z : {cpx(0.7, 0.0), cpx(0.6, 0.1)})
        for (cpx w : {cpx(0.7, 0.0), cpx(0.0, -0.65)})
            err = std::max(err, std::abs(ev.reduced(z, w) - annulus_reduced_series(z, w, 0.5, 400)));
    return err;
}

double chk_disc_higher_reduced() {
    DomainGeometry d = make_preset("disc", {1.0}, 128);
    FPrimeBasis basis = fprime_basis(d, unit_weight(d), cpx(0.0, 0.0), "szego-span");
    BergmanEvaluator ev(d, basis, gram_matrix(basis, d));
    double err = 0.0;
    for (cpx z : {cpx(0.4, 0.0), cpx(0.0, 0.3)}) {
        HigherReduced hr = higher_reduced(2, z, cpx(0.0, 0.0), ev);
        err = std::max(err, std::abs(hr.value - 2.0 * z / pi));
    }
    return err;
}

double chk_homogeneity() {
    DomainGeometry d = make_preset("ellipse", {1.0, 0.6}, 128);
    WeightField base = exp_cos_weight(d, 4.0);
    std::vector<double> scaled(base.phi);
    for (double& p : scaled) p *= 1.25;
    SzegoSolver s1(d, base), s2(d, weight_from_samples(d, scaled));
    cpx a(0.2, 0.1);
    const SzegoSolution& u = s1.solve(a);
    const SzegoSolution& v = s2.solve(a);
    double err = 0.0;
    for (std::size_t i = 0; i < d.total_nodes(); ++i)
        err = std::max(err, std::abs(v.boundary.values[i] - u.boundary.values[i] / 1.25));
    return err;
}

double chk_interpolation() {
    DomainGeometry d = make_preset("disc", {1.0}, 128);
    SzegoSolver s(d, abs_pow_weight(d, cpx(2.0, 0.0), 2.0));
    AhlforsMap f = make_ahlfors(d, cpx(0.3, 0.0));
    double err = 0.0;
    err = std::max(err, interpolation_residual(s, f, d, cpx(0.2, 0.1), cpx(0.0, -0.3)));
    err = std::max(err, interpolation_residual(s, f, d, cpx(-0.5, 0.0), cpx(0.4, 0.2)));
    return err;
}

const Check battery[] = {
    {"spectral-derivative-exp-cos", 1e-10, chk_spectral_derivative},
    {"cauchy-integral-polynomial", 1e-12, chk_cauchy_polynomial},
    {"disc-szego-closed-form", 1e-10, chk_disc_szego},
    {"weighted-disc-factorization", 1e-8, chk_weighted_disc},
    {"annulus-szego-laurent", 1e-8, chk_annulus_szego},
    {"disc-constant-weight-ks-vanishes", 1e-12, chk_disc_constant_ks},
    {"ks-skew-defect", 1e-12, chk_skew_defect},
    {"ks-symmetrized-min-singular", 1e-8, chk_min_singular},
    {"garabedian-boundary-identity", 1e-8, chk_boundary_identity},
    {"garabedian-reflection-identity", 1e-7, chk_reflection_identity},
    {"szego-reproducing-property", 1e-8, chk_reproducing},
    {"annulus-zero-location", 1e-8, chk_annulus_zero},
    {"disc-ahlfors-moebius", 1e-9, chk_disc_ahlfors},
    {"disc-bergman-from-szego", 1e-9, chk_disc_bergman},
    {"annulus-reduced-laurent", 1e-6, chk_annulus_reduced},
    {"disc-higher-reduced-order2", 1e-6, chk_disc_higher_reduced},
    {"weight-homogeneity-exact", 1e-11, chk_homogeneity},
    {"interpolation-identity-weighted-disc", 1e-8, chk_interpolation},
};

}  // namespace

std::vector<SelfTestResult> run_selftest() {
    std::vector<SelfTestResult> out;
    for (const Check& c : battery) {
        SelfTestResult r;
        r.name = c.name;
        r.tolerance = c.tolerance;
        r.residual = c.run();
        r.pass = r.residual <= c.tolerance;
        out.push_back(r);
    }
    return out;
}

}  // namespace szg

#include "szg/kerzman_stein.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "szg/simd_kernels.hpp"

namespace szg {

Eigen::MatrixXcd KSMatrix::bmatrix() const { return entries * qweights.asDiagonal(); }

const Eigen::PartialPivLU<Eigen::MatrixXcd>& KSMatrix::factor_minus() const {
    if (!minus_) {
        const Eigen::Index n = entries.rows();
        minus_ = std::make_shared<Eigen::PartialPivLU<Eigen::MatrixXcd>>(
            Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(n, n) - bmatrix()));
    }
    return *minus_;
}

const Eigen::PartialPivLU<Eigen::MatrixXcd>& KSMatrix::factor_plus() const {
    if (!plus_) {
        const Eigen::Index n = entries.rows();
        plus_ = std::make_shared<Eigen::PartialPivLU<Eigen::MatrixXcd>>(
            Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(n, n) + bmatrix()));
    }
    return *plus_;
}

cpx ks_offdiag(std::size_t i, std::size_t j, const DomainGeometry& d, const WeightField& w) {
    if (w.domain_id != d.id) throw invalid_input("ks_offdiag: weight belongs to a different domain");
    if (i == j) throw invalid_input("ks_offdiag: diagonal entry requested; use ks_diag");
    const cpx c = 1.0 / (2.0 * pi * iunit);
    const cpx dz = d.z[j] - d.z[i];
    return c * (d.tangent[j] / w.phi[j] / dz -
                std::conj(d.tangent[i] / w.phi[i]) / std::conj(dz));
}

cpx ks_diag(std::size_t i, const DomainGeometry& d, const WeightField& w) {
    if (w.domain_id != d.id) throw invalid_input("ks_diag: weight belongs to a different domain");
    return cpx(0.0, -w.dinv_ds[i] / (2.0 * pi));
}

KSMatrix assemble_ks(const DomainGeometry& d, const WeightField& w) {
    if (w.domain_id != d.id) throw invalid_input("assemble_ks: weight belongs to a different domain");
    const std::size_t n = d.total_nodes();
    KSMatrix m;
    m.domain_id = d.id;
    m.weight_id = w.id;
    m.entries.resize(n, n);
    m.qweights.resize(n);

    std::vector<double> zr(n), zi(n), ur(n), ui(n);
    for (std::size_t j = 0; j < n; ++j) {
        zr[j] = d.z[j].real();
        zi[j] = d.z[j].imag();
        const cpx u = d.tangent[j] / w.phi[j];
        ur[j] = u.real();
        ui[j] = u.imag();
        m.qweights[j] = w.phi[j] * d.qnode[j];
    }
    std::vector<double> row_re(n), row_im(n);
    for (std::size_t i = 0; i < n; ++i) {
        simd::ks_row(zr.data(), zi.data(), ur.data(), ui.data(), n, d.z[i], cpx(ur[i], ui[i]),
                     row_re.data(), row_im.data());
        for (std::size_t j = 0; j < n; ++j) m.entries(i, j) = cpx(row_re[j], row_im[j]);
        m.entries(i, i) = ks_diag(i, d, w);
    }
    return m;
}

double skew_defect(const KSMatrix& m) {
    const Eigen::Index n = m.entries.rows();
    double defect = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j)
            defect = std::max(defect, std::abs(m.entries(i, j) + std::conj(m.entries(j, i))));
    return defect;
}

double symmetrized_min_singular(const KSMatrix& m) {
    const Eigen::Index n = m.entries.rows();
    Eigen::MatrixXcd sym = Eigen::MatrixXcd::Identity(n, n);
    // D^{1/2} (I - B) D^{-1/2} = I - D^{1/2} A D^{1/2} with A the kernel
    for (Eigen::Index i = 0; i < n; ++i) {
        const double si = std::sqrt(m.qweights[i]);
        for (Eigen::Index j = 0; j < n; ++j)
            sym(i, j) -= si * m.entries(i, j) * std::sqrt(m.qweights[j]);
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(sym);
    return svd.singularValues().minCoeff();
}

SzegoSolution solve_szego_boundary(const KSMatrix& m, cpx a, const DomainGeometry& d,
                                   const WeightField& w) {
    if (m.domain_id != d.id || w.domain_id != d.id || m.weight_id != w.id)
        throw invalid_input("solve_szego_boundary: domain/weight/matrix mismatch");
    const std::size_t n = d.total_nodes();
    const BoundaryField ca = cauchy_kernel_field(a, d);  // rejects exterior poles

    Eigen::VectorXcd g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = ca.values[i] / w.phi[i];

    const Eigen::VectorXcd x = m.factor_minus().solve(g);
    const Eigen::VectorXcd resid = x - m.entries * (m.qweights.asDiagonal() * x) - g;

    SzegoSolution sol;
    sol.a = a;
    sol.domain_id = d.id;
    sol.weight_id = w.id;
    sol.boundary.domain_id = d.id;
    sol.boundary.near_boundary = ca.near_boundary;
    sol.boundary.values.assign(x.data(), x.data() + n);
    sol.linear_residual = resid.norm() / g.norm();
    if (!(sol.linear_residual <= 1e-10))
        throw numeric_error("solve_szego_boundary: linear residual " +
                            std::to_string(sol.linear_residual) + " exceeds 1e-10");

    const BoundaryField ones = sample_boundary(d, [](cpx) { return cpx(1.0, 0.0); });
    sol.reproducing_residual = std::abs(weighted_inner(ones, sol.boundary, w, d) - 1.0);
    return sol;
}

Flagged<cpx> hardy_project_interior(const BoundaryField& u, cpx zp, const KSMatrix& m,
                                    const DomainGeometry& d, const WeightField& w) {
    if (m.domain_id != d.id || w.domain_id != d.id || m.weight_id != w.id)
        throw invalid_input("hardy_project_interior: domain/weight/matrix mismatch");
    if (u.domain_id != d.id)
        throw invalid_input("hardy_project_interior: field belongs to a different domain");
    const std::size_t n = d.total_nodes();
    Eigen::VectorXcd rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = u.values[i];
    const Eigen::VectorXcd y = m.factor_plus().solve(rhs);
    BoundaryField yf;
    yf.domain_id = d.id;
    yf.near_boundary = u.near_boundary;
    yf.values.assign(y.data(), y.data() + n);
    return cauchy_interior(yf, zp, d);
}

SzegoSolver::SzegoSolver(const DomainGeometry& d, const WeightField& w)
    : d_(d), w_(w), m_(assemble_ks(d, w)) {}

const SzegoSolver::Entry& SzegoSolver::entry(cpx a) const {
    const auto key = std::make_pair(a.real(), a.imag());
    auto it = cache_.find(key);
    if (it == cache_.end()) {
        Entry e;
        e.sol = solve_szego_boundary(m_, a, d_, w_);
        e.ev = std::make_shared<CauchyEvaluator>(e.sol.boundary, d_);
        it = cache_.emplace(key, std::move(e)).first;
    }
    return it->second;
}

const SzegoSolution& SzegoSolver::solve(cpx a) const { return entry(a).sol; }

const CauchyEvaluator& SzegoSolver::evaluator(cpx a) const { return *entry(a).ev; }

cpx SzegoSolver::eval(cpx z, cpx a) const { return entry(a).ev->eval(z); }

cpx SzegoSolver::eval_node(std::size_t node, cpx a) const {
    return entry(a).sol.boundary.values[node];
}

cpx SzegoSolver::eval_boundary_arg(cpx z, std::size_t node) const {
    return std::conj(entry(z).sol.boundary.values[node]);
}

}  // namespace szg

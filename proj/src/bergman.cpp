#include "szg/bergman.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace szg {

namespace {

// trapezoid of u dz along one sampled component (the discrete period)
cpx component_period(const std::vector<cpx>& values, const DomainGeometry& d, std::size_t comp) {
    cpx acc = 0.0;
    for (std::size_t i = d.comp_begin[comp]; i < d.comp_begin[comp + 1]; ++i)
        acc += values[i] * d.tangent[i] * d.qnode[i];
    return acc;
}

cpx mean_of_component(const DomainGeometry& d, std::size_t comp) {
    cpx acc = 0.0;
    for (std::size_t i = d.comp_begin[comp]; i < d.comp_begin[comp + 1]; ++i) acc += d.z[i];
    return acc / static_cast<double>(d.comp_begin[comp + 1] - d.comp_begin[comp]);
}

// Midpoint rule over grid cells whose centers lie in the domain; membership
// per row by a scanline over the node polygons (signed crossing counts).
// visit(p) is called once per masked cell center; returns the cell area.
template <typename Visit>
double masked_grid(const DomainGeometry& d, int n, Visit&& visit) {
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const cpx& z : d.z) {
        x0 = std::min(x0, z.real());
        x1 = std::max(x1, z.real());
        y0 = std::min(y0, z.imag());
        y1 = std::max(y1, z.imag());
    }
    const double padx = 0.011 * (x1 - x0), pady = 0.013 * (y1 - y0);
    x0 -= padx;
    x1 += padx;
    y0 -= pady;
    y1 += pady;
    const double hx = (x1 - x0) / n, hy = (y1 - y0) / n;
    const double xoff = 1.2345678e-5 * hx, yoff = 0.9876543e-5 * hy;

    struct Crossing {
        double x;
        int dir;
    };
    std::vector<Crossing> cross;
    for (int r = 0; r < n; ++r) {
        const double y = y0 + (r + 0.5) * hy + yoff;
        cross.clear();
        for (std::size_t c = 0; c + 1 < d.comp_begin.size(); ++c) {
            const std::size_t b = d.comp_begin[c], e = d.comp_begin[c + 1];
            for (std::size_t i = b; i < e; ++i) {
                const cpx a = d.z[i];
                const cpx bb = d.z[(i + 1 < e) ? i + 1 : b];
                const double ay = a.imag(), by = bb.imag();
                int dir = 0;
                if (ay <= y && by > y)
                    dir = +1;
                else if (ay > y && by <= y)
                    dir = -1;
                if (dir == 0) continue;
                const double t = (y - ay) / (by - ay);
                cross.push_back({a.real() + t * (bb.real() - a.real()), dir});
            }
        }
        std::sort(cross.begin(), cross.end(),
                  [](const Crossing& a, const Crossing& b) { return a.x < b.x; });
        // winding at x = sum of dir over crossings to the right of x
        std::size_t ci = 0;
        int suffix = 0;
        for (const Crossing& cr : cross) suffix += cr.dir;
        for (int col = 0; col < n; ++col) {
            const double x = x0 + (col + 0.5) * hx + xoff;
            while (ci < cross.size() && cross[ci].x <= x) suffix -= cross[ci++].dir;
            if (suffix == 1) visit(cpx(x, y));
        }
    }
    return hx * hy;
}

Eigen::MatrixXcd gram_grid_pass(const FPrimeBasis& basis, const DomainGeometry& d, int n) {
    const int m = basis.size();
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(m, m);
    std::vector<cpx> vals(m);
    const double cell = masked_grid(d, n, [&](cpx p) {
        for (int i = 0; i < m; ++i) vals[i] = basis.interior[i](p);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) g(i, j) += vals[i] * std::conj(vals[j]);
    });
    return g * cell;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

FPrimeBasis fprime_basis(const DomainGeometry& d, const WeightField& w, cpx a,
                         const std::string& basis_id) {
    if (w.domain_id != d.id) throw invalid_input("fprime_basis: weight belongs to a different domain");
    FPrimeBasis basis;
    basis.basis_id = basis_id;
    basis.domain_id = d.id;

    if (basis_id == "analytic-annulus") {
        if (d.preset != "annulus")
            throw invalid_input("fprime_basis: analytic-annulus basis requires the annulus preset");
        basis.interior.push_back([](cpx z) { return 1.0 / z; });
        basis.boundary.push_back(sample_boundary(d, [](cpx z) { return 1.0 / z; }));
        return basis;
    }
    if (basis_id != "szego-span")
        throw invalid_input("fprime_basis: unknown basis id '" + basis_id + "'");

    if (d.connectivity() == 1) return basis;  // empty span

    SzegoSolver solver(d, w);
    const SzegoSolution sol_a = solver.solve(a);
    const std::vector<cpx> zeros = zero_locate(sol_a, d);
    if (static_cast<int>(zeros.size()) != d.connectivity() - 1)
        throw numeric_error("fprime_basis: S(., a) does not have connectivity-1 zeros");
    for (std::size_t i = 0; i < zeros.size(); ++i)
        for (std::size_t j = i + 1; j < zeros.size(); ++j)
            if (std::abs(zeros[i] - zeros[j]) <= 1e-3)
                throw numeric_error("fprime_basis: zeros of S(., a) are clustered");

    auto ev_s = std::make_shared<CauchyEvaluator>(sol_a.boundary, d);
    for (const cpx b : zeros) {
        const GarabedianSolution gar = garabedian_from_szego(solver.solve(b), d, w);
        auto ev_l = std::make_shared<CauchyEvaluator>(gar.boundary_l, d);
        basis.interior.push_back([ev_s, ev_l, b](cpx z) {
            return (ev_l->eval(z) + 1.0 / (2.0 * pi * (z - b))) * ev_s->eval(z);
        });
        BoundaryField bf;
        bf.domain_id = d.id;
        bf.values.resize(d.total_nodes());
        for (std::size_t i = 0; i < d.total_nodes(); ++i)
            bf.values[i] = gar.boundary_L.values[i] * sol_a.boundary.values[i];
        basis.boundary.push_back(std::move(bf));
    }
    return basis;
}

GramMatrix gram_matrix(const FPrimeBasis& basis, const DomainGeometry& d, int grid_n) {
    if (basis.domain_id != d.id) throw invalid_input("gram_matrix: basis belongs to a different domain");
    GramMatrix g;
    if (basis.size() == 0) {
        g.entries.resize(0, 0);
        g.method = "closed-form";
        return g;
    }
    if (basis.basis_id == "analytic-annulus") {
        g.entries.resize(1, 1);
        g.entries(0, 0) = 2.0 * pi * std::log(d.params[0] / d.params[1]);
        g.method = "closed-form";
        return g;
    }
    if (grid_n < 40) throw invalid_input("gram_matrix: grid too coarse");
    const Eigen::MatrixXcd coarse = gram_grid_pass(basis, d, grid_n);
    Eigen::MatrixXcd fine = gram_grid_pass(basis, d, 2 * grid_n);
    g.est_error = (fine - coarse).cwiseAbs().maxCoeff();
    fine = 0.5 * (fine + Eigen::MatrixXcd(fine.adjoint()));
    g.entries = fine;
    g.method = "grid-quadrature";

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g.entries);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw numeric_error("gram_matrix: computed Gram matrix is not positive definite");
    return g;
}

double q_orthogonality_residual(const WeightField& w, const FPrimeBasis& basis,
                                const DomainGeometry& d) {
    if (w.domain_id != d.id || basis.domain_id != d.id)
        throw invalid_input("q_orthogonality_residual: domain mismatch");
    std::vector<BoundaryField> tests;
    for (int m = 0; m <= 6; ++m)
        tests.push_back(sample_boundary(d, [m](cpx z) { return std::pow(z, m); }));
    for (std::size_t c = 1; c + 1 < d.comp_begin.size(); ++c) {
        const cpx ctr = mean_of_component(d, c);
        tests.push_back(sample_boundary(d, [ctr](cpx z) { return 1.0 / (z - ctr); }));
    }
    // <phi^{-1} h T, g>_phi = sum h_i conj(g_i) dz_i h_c : the weight cancels
    double worst = 0.0;
    for (const BoundaryField& h : basis.boundary) {
        for (const BoundaryField& g : tests) {
            cpx against_g = 0.0, against_conj = 0.0;
            for (std::size_t i = 0; i < d.total_nodes(); ++i) {
                const cpx dzh = d.tangent[i] * d.qnode[i];
                against_g += h.values[i] * std::conj(g.values[i]) * dzh;
                against_conj += h.values[i] * g.values[i] * dzh;
            }
            worst = std::max({worst, std::abs(against_g), std::abs(against_conj)});
        }
    }
    return worst;
}

BergmanEvaluator::BergmanEvaluator(const DomainGeometry& d, FPrimeBasis basis, GramMatrix gram)
    : d_(d),
      basis_(std::move(basis)),
      gram_(std::move(gram)),
      unit_(unit_weight(d)),
      solver_(d, unit_) {
    if (basis_.domain_id != d.id && basis_.size() > 0)
        throw invalid_input("BergmanEvaluator: basis belongs to a different domain");
    const int m = basis_.size();
    if (m != d.connectivity() - 1)
        throw invalid_input("BergmanEvaluator: basis size must equal connectivity - 1");
    if (gram_.entries.rows() != m || gram_.entries.cols() != m)
        throw invalid_input("BergmanEvaluator: Gram size does not match the basis");
    if (m > 0) {
        qmat_.resize(m, m);
        for (int l = 0; l < m; ++l)
            for (int j = 0; j < m; ++j)
                qmat_(l, j) = component_period(basis_.boundary[j].values, d_, l + 1);
        qlu_.compute(qmat_);
        ginv_ = gram_.entries.inverse();
    }
}

cpx BergmanEvaluator::szego(cpx z, cpx w) const { return solver_.eval(z, w); }

const std::vector<cpx>& BergmanEvaluator::coeffs(cpx w) const {
    const auto key = std::make_pair(w.real(), w.imag());
    auto it = ccache_.find(key);
    if (it == ccache_.end()) {
        const int m = basis_.size();
        const SzegoSolution& sol = solver_.solve(w);
        std::vector<cpx> sq(d_.total_nodes());
        for (std::size_t i = 0; i < sq.size(); ++i) {
            const cpx s = sol.boundary.values[i];
            sq[i] = 4.0 * pi * s * s;
        }
        Eigen::VectorXcd q(m);
        for (int l = 0; l < m; ++l) q[l] = component_period(sq, d_, l + 1);
        const Eigen::VectorXcd c = qlu_.solve(q);
        it = ccache_.emplace(key, std::vector<cpx>(c.data(), c.data() + m)).first;
    }
    return it->second;
}

cpx BergmanEvaluator::reduced(cpx z, cpx w) const {
    const cpx s = solver_.eval(z, w);
    cpx val = 4.0 * pi * s * s;
    if (basis_.size() == 0) return val;
    const std::vector<cpx>& c = coeffs(w);
    for (int m = 0; m < basis_.size(); ++m) val -= c[m] * basis_.interior[m](z);
    return val;
}

cpx BergmanEvaluator::bergman(cpx z, cpx w) const {
    cpx val = reduced(z, w);
    const int m = basis_.size();
    if (m == 0) return val;
    std::vector<cpx> hz(m), hw(m);
    for (int i = 0; i < m; ++i) {
        hz[i] = basis_.interior[i](z);
        hw[i] = basis_.interior[i](w);
    }
    for (int i = 0; i < m; ++i)
        for (int l = 0; l < m; ++l) val += ginv_(i, l) * hz[i] * std::conj(hw[l]);
    return val;
}

cpx kernel_derivative(int j, int k, cpx z, cpx zeta, const TwoPointFn& F,
                      const DomainGeometry& d) {
    if (j < 0 || k < 0) throw invalid_input("kernel_derivative: orders must be nonnegative");
    constexpr int M = 64;
    const double rz = 0.5 * boundary_distance(d, zeta);
    if (k > 0 && rz < 1e-10)
        throw numeric_error("kernel_derivative: contour radius collapsed at zeta");

    // G(y) = d^k/dzbar^k F(y, zeta), holomorphic in y; hermitian symmetry
    // turns the conjugate-variable derivative into a plain contour derivative
    // of y -> F(y's pole side): conj of the k-th derivative of xi -> F(xi, y).
    auto G = [&](cpx y) -> cpx {
        if (k == 0) return F(y, zeta);
        cpx acc = 0.0;
        for (int m = 0; m < M; ++m) {
            const double th = 2.0 * pi * m / M;
            acc += F(zeta + rz * std::polar(1.0, th), y) * std::polar(1.0, -k * th);
        }
        return std::conj(acc * factorial(k) / (M * std::pow(rz, k)));
    };

    if (j == 0) return G(z);
    const double rj = 0.5 * boundary_distance(d, z);
    if (rj < 1e-10) throw numeric_error("kernel_derivative: contour radius collapsed at z");
    cpx acc = 0.0;
    for (int m = 0; m < M; ++m) {
        const double th = 2.0 * pi * m / M;
        acc += G(z + rj * std::polar(1.0, th)) * std::polar(1.0, -j * th);
    }
    return acc * factorial(j) / (M * std::pow(rj, j));
}

HigherReduced higher_reduced(int nord, cpx z, cpx zeta, const BergmanEvaluator& ev) {
    if (nord < 1 || nord > 4)
        throw invalid_input("higher_reduced: order must be between 1 and 4");
    const DomainGeometry& d = ev.domain();
    if (nord == 1) return {ev.reduced(z, zeta), 1.0, 1.0};

    const TwoPointFn F = [&ev](cpx p, cpx q) { return ev.reduced(p, q); };
    const int n = nord;
    Eigen::MatrixXcd M(n, n);
    for (int k = 0; k < n; ++k) M(0, k) = kernel_derivative(0, k, z, zeta, F, d);
    for (int r = 1; r < n; ++r)
        for (int k = 0; k < n; ++k) M(r, k) = kernel_derivative(r - 1, k, zeta, zeta, F, d);

    const cpx jdet = (n == 2) ? M(1, 0) : Eigen::MatrixXcd(M.block(1, 0, n - 1, n - 1)).determinant();
    if (std::abs(jdet) < 1e-12)
        throw numeric_error("higher_reduced: normalizing minor is numerically singular");
    const cpx detM = M.determinant();
    const double sign = (nord % 2 == 0) ? -1.0 : 1.0;

    HigherReduced out;
    out.value = sign * detM / jdet;
    out.j_abs = std::abs(jdet);
    double hadamard = 1.0;
    for (int r = 0; r < n; ++r) hadamard *= M.row(r).norm();
    out.cond = (std::abs(detM) > 0.0) ? hadamard / std::abs(detM) : 1e300;
    return out;
}

}  // namespace szg

#ifndef SZG_KERZMAN_STEIN_HPP
#define SZG_KERZMAN_STEIN_HPP

#include <Eigen/Dense>
#include <map>
#include <memory>
#include <utility>

#include "szg/field.hpp"
#include "szg/geometry.hpp"
#include "szg/types.hpp"

namespace szg {

// Dense kernel matrix entries[i][j] = A_phi(z_i, z_j) together with the
// quadrature measure qweights_j = phi_j |dz_j| h_c. The operator matrix is
// B = entries * diag(qweights). Immutable after assembly; LU factorizations
// of I - B and I + B are built lazily and shared.
struct KSMatrix {
    std::uint64_t domain_id = 0;
    std::uint64_t weight_id = 0;
    Eigen::MatrixXcd entries;
    Eigen::VectorXd qweights;

    Eigen::MatrixXcd bmatrix() const;
    const Eigen::PartialPivLU<Eigen::MatrixXcd>& factor_minus() const;  // I - B
    const Eigen::PartialPivLU<Eigen::MatrixXcd>& factor_plus() const;   // I + B

  private:
    mutable std::shared_ptr<Eigen::PartialPivLU<Eigen::MatrixXcd>> minus_, plus_;
};

// Boundary samples of S_phi(., a) plus the residuals recorded at solve time.
struct SzegoSolution {
    cpx a;
    BoundaryField boundary;
    std::uint64_t domain_id = 0;
    std::uint64_t weight_id = 0;
    double linear_residual = 0.0;       // relative 2-norm of (I-B)x - g
    double reproducing_residual = 0.0;  // |<1, x>_phi - 1|
};

// A_phi(z_i, z_j) for i != j, direct formula evaluation
cpx ks_offdiag(std::size_t i, std::size_t j, const DomainGeometry& d, const WeightField& w);

// diagonal limit A_phi(z,z) = (1/(2 pi i)) d(1/phi)/ds; purely imaginary
cpx ks_diag(std::size_t i, const DomainGeometry& d, const WeightField& w);

KSMatrix assemble_ks(const DomainGeometry& d, const WeightField& w);

// max_ij |entries[i][j] + conj(entries[j][i])|
double skew_defect(const KSMatrix& m);

// smallest singular value of D^{1/2} (I - B) D^{-1/2}, D = diag(qweights);
// the symmetrized operator is I minus a skew-hermitian matrix, so this is
// >= 1 up to discretization noise
double symmetrized_min_singular(const KSMatrix& m);

// Solves (I - B) x = phi^{-1} C_a for the boundary values of S_phi(., a).
SzegoSolution solve_szego_boundary(const KSMatrix& m, cpx a, const DomainGeometry& d,
                                   const WeightField& w);

// P_phi u at an interior point: solve (I + B) y = u, then Cauchy integral.
Flagged<cpx> hardy_project_interior(const BoundaryField& u, cpx zp, const KSMatrix& m,
                                    const DomainGeometry& d, const WeightField& w);

// Assembly plus a per-pole cache of solutions and their interior evaluators.
// One LU factorization serves every pole.
class SzegoSolver {
  public:
    SzegoSolver(const DomainGeometry& d, const WeightField& w);

    const KSMatrix& matrix() const { return m_; }
    const DomainGeometry& domain() const { return d_; }
    const WeightField& weight() const { return w_; }

    const SzegoSolution& solve(cpx a) const;
    // S_phi(z, a), z interior
    cpx eval(cpx z, cpx a) const;
    // S_phi(z_node, a) boundary sample
    cpx eval_node(std::size_t node, cpx a) const;
    // S_phi(z, z_node) for a boundary node: conj of the node sample of the
    // solve with interior pole z (hermitian symmetry; no boundary-pole solve)
    cpx eval_boundary_arg(cpx z, std::size_t node) const;
    const CauchyEvaluator& evaluator(cpx a) const;

  private:
    struct Entry {
        SzegoSolution sol;
        std::shared_ptr<CauchyEvaluator> ev;
    };
    const Entry& entry(cpx a) const;

    const DomainGeometry& d_;
    WeightField w_;
    KSMatrix m_;
    mutable std::map<std::pair<double, double>, Entry> cache_;
};

}  // namespace szg

#endif

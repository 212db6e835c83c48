#ifndef SZG_BERGMAN_HPP
#define SZG_BERGMAN_HPP

#include <functional>
#include <string>

#include "szg/kernels.hpp"

namespace szg {

// Basis of the span F' of derivatives of the multivalued primitives (one
// function per hole). Functions are carried twice: as interior evaluators and
// as boundary node samples (periods and boundary inner products need the
// latter). Empty for simply connected domains.
struct FPrimeBasis {
    std::string basis_id;  // analytic-annulus | szego-span
    std::uint64_t domain_id = 0;
    std::vector<std::function<cpx(cpx)>> interior;
    std::vector<BoundaryField> boundary;
    int size() const { return static_cast<int>(interior.size()); }
};

// analytic-annulus: {1/z} (annulus preset only). szego-span: the products
// h_j = L_phi(., b_j) S_phi(., a) over the zeros b_j of S_phi(., a).
FPrimeBasis fprime_basis(const DomainGeometry& d, const WeightField& w, cpx a,
                         const std::string& basis_id);

struct GramMatrix {
    Eigen::MatrixXcd entries;
    std::string method;  // closed-form | grid-quadrature
    double est_error = 0.0;
};

// Area inner products <h_m, h_l> over the domain: closed form where known,
// otherwise masked midpoint quadrature at resolutions n and 2n with
// est_error = entrywise difference of the two levels.
GramMatrix gram_matrix(const FPrimeBasis& basis, const DomainGeometry& d, int grid_n = 420);

// max over basis functions h and test functions g in {z^m, m<=6} plus
// 1/(z - hole center) of |<phi^{-1} h T, g>_phi| and |<phi^{-1} h T, conj(g)>_phi|
double q_orthogonality_residual(const WeightField& w, const FPrimeBasis& basis,
                                const DomainGeometry& d);

// Unweighted Bergman kernels built on top of the Szego solver:
//   reduced  K~(z,w) = 4 pi S(z,w)^2 minus the F'-span part, realized by
//            matching the periods of 4 pi S(.,w)^2 around every hole;
//   bergman  K(z,w) = K~(z,w) + sum_{ml} (G^{-1})_{ml} h_m(z) conj(h_l(w)).
// Per-pole solve data is cached, so repeated evaluations against the same
// second argument cost one linear solve total.
class BergmanEvaluator {
  public:
    BergmanEvaluator(const DomainGeometry& d, FPrimeBasis basis, GramMatrix gram);

    cpx szego(cpx z, cpx w) const;  // unweighted S(z,w)
    cpx reduced(cpx z, cpx w) const;
    cpx bergman(cpx z, cpx w) const;

    const FPrimeBasis& basis() const { return basis_; }
    const GramMatrix& gram() const { return gram_; }
    const SzegoSolver& solver() const { return solver_; }
    const DomainGeometry& domain() const { return d_; }

  private:
    const std::vector<cpx>& coeffs(cpx w) const;

    const DomainGeometry& d_;
    FPrimeBasis basis_;
    GramMatrix gram_;
    WeightField unit_;
    SzegoSolver solver_;
    Eigen::MatrixXcd qmat_;  // Q_{lm} = period of h_m around hole l
    Eigen::PartialPivLU<Eigen::MatrixXcd> qlu_;
    Eigen::MatrixXcd ginv_;
    mutable std::map<std::pair<double, double>, std::vector<cpx>> ccache_;
};

using TwoPointFn = std::function<cpx(cpx, cpx)>;

// d^j/dz^j d^k/dzbar^k F(z, zeta) for a hermitian two-point kernel F
// (holomorphic in the first argument), by iterated 64-point contour
// integrals of radius 0.5 * boundary_distance around each argument.
cpx kernel_derivative(int j, int k, cpx z, cpx zeta, const TwoPointFn& F, const DomainGeometry& d);

struct HigherReduced {
    cpx value;
    double j_abs;  // |J_{nord-2}|, the normalizing minor
    double cond;   // Hadamard ratio of the numerator determinant
};

// Determinant formula for the kernel of the n-th order reduced space:
// value = (-1)^(nord-1) det(M) / J_{nord-2}, where row 0 of M holds the
// two-point entries K~_{0,kbar}(z,zeta) and the remaining rows the
// diagonal-point entries at (zeta,zeta). nord capped at 4.
HigherReduced higher_reduced(int nord, cpx z, cpx zeta, const BergmanEvaluator& ev);

}  // namespace szg

#endif

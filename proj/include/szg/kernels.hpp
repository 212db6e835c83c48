#ifndef SZG_KERNELS_HPP
#define SZG_KERNELS_HPP

#include <map>
#include <utility>
#include <vector>

#include "szg/kerzman_stein.hpp"

namespace szg {

// Boundary samples of L_phi(., a) and of its regular part
// l_phi = L_phi - 1/(2 pi (z - a)).
struct GarabedianSolution {
    cpx a;
    BoundaryField boundary_L;
    BoundaryField boundary_l;
    std::uint64_t domain_id = 0;
    std::uint64_t weight_id = 0;
    double boundary_identity_residual = 0.0;  // max_i |phi conj(S) - (1/i) L T|
};

// Interior value of S_phi(., sol.a) via the Cauchy integral of the solved
// boundary samples.
Flagged<cpx> szego_interior(const SzegoSolution& sol, cpx zp, const DomainGeometry& d);

// |S_phi(z1,z2) - conj(S_phi(z2,z1))| from two independent solves
double hermitian_symmetry_residual(const SzegoSolver& solver, cpx z1, cpx z2);

// boundary_L = i phi conj(S) conj(T); boundary_l = boundary_L - pole term
GarabedianSolution garabedian_from_szego(const SzegoSolution& sol, const DomainGeometry& d,
                                         const WeightField& w);

// L_phi(zp, a) = Cauchy integral of boundary_l + 1/(2 pi (zp - a))
Flagged<cpx> garabedian_interior(const GarabedianSolution& gar, cpx zp, const DomainGeometry& d);

// l_phi(z, a) computed through the reciprocal weight: l = P_{1/phi} A_{1/phi} G_a
// with G_a = 1/(2 pi (z-a)). Holds the Kerzman-Stein matrix for 1/phi and a
// per-pole cache of the projected boundary fields.
class LRegularEvaluator {
  public:
    LRegularEvaluator(const DomainGeometry& d, const WeightField& w);
    Flagged<cpx> eval(cpx zp, cpx a) const;

  private:
    const DomainGeometry& d_;
    WeightField recip_;
    KSMatrix m_;
    mutable std::map<std::pair<double, double>, BoundaryField> ycache_;
};

Flagged<cpx> l_regular_interior(cpx a, cpx zp, const DomainGeometry& d, const WeightField& w);

// |L_phi(zp,a) + L_{1/phi}(a,zp)| from solves under phi and 1/phi
double reflection_identity_residual(const SzegoSolver& solver, const SzegoSolver& recip_solver,
                                    cpx a, cpx zp);
double reflection_identity_residual(cpx a, cpx zp, const DomainGeometry& d, const WeightField& w);

// |<h, S_phi(., a)>_phi - h(a)| for h holomorphic on a neighborhood of the
// closure, sampled at the nodes
double reproducing_residual(const SzegoSolution& sol, const BoundaryField& h, cpx ha,
                            const DomainGeometry& d, const WeightField& w);

// Zeros of S_phi(., a) in the domain by the argument principle on the
// boundary sample loop (per component, summed). Requires min_i |S_i| >= 1e-8.
int zero_count(const SzegoSolution& sol, const DomainGeometry& d);

// Locates the zeros by recursive rectangle subdivision (argument principle on
// admissible boxes) followed by Newton refinement with a contour-integral
// derivative. Result size always matches zero_count; every zero z* satisfies
// |S_phi(z*, a)| < 1e-8.
std::vector<cpx> zero_locate(const SzegoSolution& sol, const DomainGeometry& d);

// Ahlfors map f_a = S(., a) / L(., a) under the unit weight.
struct AhlforsMap {
    cpx a;
    SzegoSolution szego;
    GarabedianSolution garabedian;
    std::uint64_t domain_id = 0;
};

// interior point at distance ~0.15 * scale from the outer boundary
cpx default_ahlfors_pole(const DomainGeometry& d);

AhlforsMap make_ahlfors(const SzegoSolver& unit_solver, cpx a);
AhlforsMap make_ahlfors(const DomainGeometry& d, cpx a);

Flagged<cpx> ahlfors_eval(const AhlforsMap& f, cpx zp, const DomainGeometry& d);
BoundaryField ahlfors_boundary(const AhlforsMap& f, const DomainGeometry& d);

// Residual of the rational interpolation identity
//   S_phi(z,w) (1 - f(z) conj(f(w))) = sum_ij c_ij S_phi(z,a_i) conj(S_phi(w,a_j))
// with [c_ij] the inverse of [S_phi(a_i,a_j)] and {a_i} = {f.a} plus the
// located zeros of the unweighted S(., f.a).
double interpolation_residual(const SzegoSolver& solver, const AhlforsMap& f,
                              const DomainGeometry& d, cpx z, cpx wq);

}  // namespace szg

#endif

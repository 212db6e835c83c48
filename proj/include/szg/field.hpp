#ifndef SZG_FIELD_HPP
#define SZG_FIELD_HPP

#include <cstdint>
#include <vector>

#include "szg/geometry.hpp"
#include "szg/types.hpp"

namespace szg {

// Complex samples, one per boundary node of the tagged domain. Fields from
// different domains never mix (checked, not broadcast).
struct BoundaryField {
    std::uint64_t domain_id = 0;
    std::vector<cpx> values;
    bool near_boundary = false;  // advisory accuracy flag set by producers
};

template <typename F>
BoundaryField sample_boundary(const DomainGeometry& d, F&& f) {
    BoundaryField u;
    u.domain_id = d.id;
    u.values.reserve(d.total_nodes());
    for (const cpx& z : d.z) u.values.push_back(f(z));
    return u;
}

// Positive boundary weight with the arc-length derivative of its reciprocal
// precomputed spectrally (the only weight derivative any kernel formula
// needs). For constant weights dinv_ds is exactly zero.
struct WeightField {
    std::uint64_t domain_id = 0;
    std::uint64_t id = 0;
    std::vector<double> phi;
    std::vector<double> dinv_ds;
};

WeightField unit_weight(const DomainGeometry& d);
WeightField constant_weight(const DomainGeometry& d, double c);
// exp(cos(t)/k) on one component (parameter t of that component), 1 elsewhere
WeightField exp_cos_weight(const DomainGeometry& d, double k, int component = 0);
// |zeta - b|^p; b must stay away from the boundary
WeightField abs_pow_weight(const DomainGeometry& d, cpx b, double p);
WeightField weight_from_samples(const DomainGeometry& d, const std::vector<double>& phi);
WeightField reciprocal(const DomainGeometry& d, const WeightField& w);

// <u,v>_phi = sum_i u_i conj(v_i) phi_i |dz_i| h_c
cpx weighted_inner(const BoundaryField& u, const BoundaryField& v, const WeightField& w,
                   const DomainGeometry& d);

// max over derivative orders m <= s and nodes of the m-th spectral parameter
// derivative of u (DFT route, per component)
double cs_norm(const BoundaryField& u, int s, const DomainGeometry& d);

// derivative of the trigonometric interpolant per component (circulant route)
BoundaryField spectral_derivative(const BoundaryField& u, const DomainGeometry& d);

// C_a(z) = conj((1/(2 pi i)) T(z)/(z - a)); near_boundary set when a is
// within 3 node spacings of the boundary
BoundaryField cauchy_kernel_field(cpx a, const DomainGeometry& d);

// (1/(2 pi i)) sum_i u_i dz_i h_c / (z_i - zp); flagged when zp is within
// 5 node spacings of the boundary
Flagged<cpx> cauchy_interior(const BoundaryField& u, cpx zp, const DomainGeometry& d);

// Precomputed structure-of-arrays form of the Cauchy integral of a fixed
// boundary field, for hot loops over many interior points. The sum is
// normalized by the discrete Cauchy integral of 1, which keeps interior
// evaluations accurate down to a fraction of a node spacing from the curve.
// eval() does not re-check membership or proximity; callers own that.
class CauchyEvaluator {
  public:
    CauchyEvaluator(const BoundaryField& u, const DomainGeometry& d);
    cpx eval(cpx zp) const;
    std::uint64_t domain_id() const { return domain_id_; }

  private:
    std::uint64_t domain_id_;
    std::vector<double> zr_, zi_, wr_, wi_, dr_, di_;
};

}  // namespace szg

#endif

#include "szg/field.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "szg/simd_kernels.hpp"
#include "szg/spectral.hpp"

namespace szg {

namespace {

std::uint64_t next_weight_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1);
}

void check_domain(std::uint64_t tag, const DomainGeometry& d, const char* what) {
    if (tag != d.id) throw invalid_input(std::string(what) + ": field belongs to a different domain");
}

// dinv_ds = (d/dt)(1/phi) / |dz|, spectral derivative per component
WeightField finish_weight(const DomainGeometry& d, std::vector<double> phi) {
    if (phi.size() != d.total_nodes())
        throw invalid_input("weight sample count does not match domain node count");
    for (double p : phi)
        if (!(p > 0.0)) throw invalid_input("weight must be strictly positive at every node");
    WeightField w;
    w.domain_id = d.id;
    w.id = next_weight_id();
    w.phi = std::move(phi);
    w.dinv_ds.resize(d.total_nodes());
    for (std::size_t c = 0; c + 1 < d.comp_begin.size(); ++c) {
        const std::size_t b = d.comp_begin[c], e = d.comp_begin[c + 1];
        std::vector<double> recip(e - b);
        for (std::size_t i = b; i < e; ++i) recip[i - b] = 1.0 / w.phi[i];
        const std::vector<double> dr = periodic_derivative(recip);
        for (std::size_t i = b; i < e; ++i) w.dinv_ds[i] = dr[i - b] / d.absdz[i];
    }
    return w;
}

}  // namespace

WeightField unit_weight(const DomainGeometry& d) { return constant_weight(d, 1.0); }

WeightField constant_weight(const DomainGeometry& d, double c) {
    if (!(c > 0.0)) throw invalid_input("constant weight must be positive");
    return finish_weight(d, std::vector<double>(d.total_nodes(), c));
}

WeightField exp_cos_weight(const DomainGeometry& d, double k, int component) {
    if (!(k > 0.0)) throw invalid_input("exp-cos weight expects k > 0");
    if (component < 0 || component >= d.connectivity())
        throw invalid_input("exp-cos weight: component index out of range");
    std::vector<double> phi(d.total_nodes(), 1.0);
    const std::size_t b = d.comp_begin[component], e = d.comp_begin[component + 1];
    const CurveComponent& comp = d.components[component];
    for (std::size_t i = b; i < e; ++i) phi[i] = std::exp(std::cos(comp.t[i - b]) / k);
    return finish_weight(d, std::move(phi));
}

WeightField abs_pow_weight(const DomainGeometry& d, cpx b, double p) {
    std::vector<double> phi(d.total_nodes());
    for (std::size_t i = 0; i < d.total_nodes(); ++i) {
        const double r = std::abs(d.z[i] - b);
        if (!(r > 1e-12)) throw invalid_input("abs-pow weight: base point touches the boundary");
        phi[i] = std::pow(r, p);
    }
    return finish_weight(d, std::move(phi));
}

WeightField weight_from_samples(const DomainGeometry& d, const std::vector<double>& phi) {
    return finish_weight(d, phi);
}

WeightField reciprocal(const DomainGeometry& d, const WeightField& w) {
    check_domain(w.domain_id, d, "reciprocal");
    std::vector<double> phi(w.phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = 1.0 / w.phi[i];
    return finish_weight(d, std::move(phi));
}

cpx weighted_inner(const BoundaryField& u, const BoundaryField& v, const WeightField& w,
                   const DomainGeometry& d) {
    check_domain(u.domain_id, d, "weighted_inner(u)");
    check_domain(v.domain_id, d, "weighted_inner(v)");
    check_domain(w.domain_id, d, "weighted_inner(weight)");
    cpx s = 0.0;
    for (std::size_t i = 0; i < d.total_nodes(); ++i)
        s += u.values[i] * std::conj(v.values[i]) * (w.phi[i] * d.qnode[i]);
    return s;
}

double cs_norm(const BoundaryField& u, int s, const DomainGeometry& d) {
    check_domain(u.domain_id, d, "cs_norm");
    if (s < 0) throw invalid_input("cs_norm expects s >= 0");
    double best = 0.0;
    for (std::size_t c = 0; c + 1 < d.comp_begin.size(); ++c) {
        const std::size_t b = d.comp_begin[c], e = d.comp_begin[c + 1];
        std::vector<cpx> uc(u.values.begin() + b, u.values.begin() + e);
        for (int m = 0; m <= s; ++m) {
            const std::vector<cpx>& der = (m == 0) ? uc : periodic_derivative_dft(uc, m);
            for (const cpx& v : der) best = std::max(best, std::abs(v));
        }
    }
    return best;
}

BoundaryField spectral_derivative(const BoundaryField& u, const DomainGeometry& d) {
    check_domain(u.domain_id, d, "spectral_derivative");
    BoundaryField out;
    out.domain_id = d.id;
    out.values.resize(d.total_nodes());
    out.near_boundary = u.near_boundary;
    for (std::size_t c = 0; c + 1 < d.comp_begin.size(); ++c) {
        const std::size_t b = d.comp_begin[c], e = d.comp_begin[c + 1];
        std::vector<cpx> uc(u.values.begin() + b, u.values.begin() + e);
        const std::vector<cpx> der = periodic_derivative(uc);
        std::copy(der.begin(), der.end(), out.values.begin() + b);
    }
    return out;
}

BoundaryField cauchy_kernel_field(cpx a, const DomainGeometry& d) {
    if (winding_number(d, a) != 1) throw invalid_input("cauchy_kernel_field: pole is not interior");
    BoundaryField u;
    u.domain_id = d.id;
    u.values.resize(d.total_nodes());
    const cpx c = 1.0 / (2.0 * pi * iunit);
    for (std::size_t i = 0; i < d.total_nodes(); ++i)
        u.values[i] = std::conj(c * d.tangent[i] / (d.z[i] - a));
    u.near_boundary = boundary_distance(d, a) < 3.0 * d.max_node_spacing();
    return u;
}

Flagged<cpx> cauchy_interior(const BoundaryField& u, cpx zp, const DomainGeometry& d) {
    check_domain(u.domain_id, d, "cauchy_interior");
    if (winding_number(d, zp) != 1) throw invalid_input("cauchy_interior: point is not interior");
    CauchyEvaluator ev(u, d);
    Flagged<cpx> out;
    out.value = ev.eval(zp);
    out.near_boundary =
        u.near_boundary || boundary_distance(d, zp) < 5.0 * d.max_node_spacing();
    return out;
}

CauchyEvaluator::CauchyEvaluator(const BoundaryField& u, const DomainGeometry& d)
    : domain_id_(d.id) {
    check_domain(u.domain_id, d, "CauchyEvaluator");
    const std::size_t n = d.total_nodes();
    zr_.resize(n);
    zi_.resize(n);
    wr_.resize(n);
    wi_.resize(n);
    dr_.resize(n);
    di_.resize(n);
    const cpx c = 1.0 / (2.0 * pi * iunit);
    for (std::size_t i = 0; i < n; ++i) {
        // u_i dz_i h_c / (2 pi i) with dz h_c = T |dz| h_c = T qnode
        const cpx q = d.tangent[i] * d.qnode[i] * c;
        const cpx w = u.values[i] * q;
        zr_[i] = d.z[i].real();
        zi_[i] = d.z[i].imag();
        wr_[i] = w.real();
        wi_[i] = w.imag();
        dr_[i] = q.real();
        di_[i] = q.imag();
    }
}

cpx CauchyEvaluator::eval(cpx zp) const {
    const cpx num =
        simd::cauchy_sum(zr_.data(), zi_.data(), wr_.data(), wi_.data(), zr_.size(), zp);
    // Normalize by the discrete Cauchy integral of 1, which is exactly 1 for
    // interior points. Numerator and denominator share the same dominant
    // quadrature error near the boundary, so the ratio stays accurate far
    // closer to the curve than the plain sum. Outside (denominator near 0)
    // the plain sum is returned, keeping the exterior value near zero.
    const cpx den =
        simd::cauchy_sum(zr_.data(), zi_.data(), dr_.data(), di_.data(), zr_.size(), zp);
    if (std::abs(den) < 0.5) return num;
    return num / den;
}

}  // namespace szg

#ifndef SZG_SPECTRAL_HPP
#define SZG_SPECTRAL_HPP

#include <vector>

#include "szg/types.hpp"

namespace szg {

// Derivative of the trigonometric interpolant of 2pi-periodic samples on an
// equispaced grid (even N), via the cotangent circulant weights. Exact for
// band-limited data of degree < N/2.
std::vector<cpx> periodic_derivative(const std::vector<cpx>& u);
std::vector<double> periodic_derivative(const std::vector<double>& u);

// m-th derivative through the DFT side: multiply mode k by (ik)^m, Nyquist
// mode zeroed for odd m. Independent route from periodic_derivative, used by
// cs_norm and the operator-consistency tests.
std::vector<cpx> periodic_derivative_dft(const std::vector<cpx>& u, int order);

// Forward DFT coefficients c_k = (1/N) sum_j u_j e^{-ik t_j}, k = 0..N-1
// (k > N/2 are the negative frequencies). Direct O(N^2) evaluation; N per
// boundary component stays small enough that this never matters.
std::vector<cpx> dft(const std::vector<cpx>& u);

}  // namespace szg

#endif

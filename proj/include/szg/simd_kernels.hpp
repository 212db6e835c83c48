#ifndef SZG_SIMD_KERNELS_HPP
#define SZG_SIMD_KERNELS_HPP

#include <cstddef>

#include "szg/types.hpp"

// Hot inner loops in structure-of-arrays form with a scalar reference
// implementation and an AVX2+FMA variant selected once at startup
// (SZG_FORCE_SCALAR=1 pins the reference path). Both paths compute the same
// sums up to floating-point reassociation; equivalence is tested.
namespace szg::simd {

// sum_i w_i / (z_i - p)
cpx cauchy_sum(const double* zr, const double* zi, const double* wr, const double* wi,
               std::size_t n, cpx p);
cpx cauchy_sum_scalar(const double* zr, const double* zi, const double* wr, const double* wi,
                      std::size_t n, cpx p);
cpx cauchy_sum_avx2(const double* zr, const double* zi, const double* wr, const double* wi,
                    std::size_t n, cpx p);

// One row of the weighted Kerzman-Stein kernel without its diagonal entry:
// out_j = (1/(2 pi i)) * (u_j q_j - conj(v q_j)), q_j = 1/(z_j - z_row),
// where u_j = T_j / phi_j and v = T_row / phi_row. Lanes with z_j == z_row
// are written as 0 for the caller to overwrite.
void ks_row(const double* zr, const double* zi, const double* ur, const double* ui,
            std::size_t n, cpx z_row, cpx v_row, double* out_re, double* out_im);
void ks_row_scalar(const double* zr, const double* zi, const double* ur, const double* ui,
                   std::size_t n, cpx z_row, cpx v_row, double* out_re, double* out_im);
void ks_row_avx2(const double* zr, const double* zi, const double* ur, const double* ui,
                 std::size_t n, cpx z_row, cpx v_row, double* out_re, double* out_im);

bool avx2_available();      // CPU supports avx2+fma
const char* active_path();  // "avx2" or "scalar" after dispatch

}  // namespace szg::simd

#endif

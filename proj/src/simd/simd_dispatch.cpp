#include <cstdlib>

#include "szg/simd_kernels.hpp"

namespace szg::simd {

bool avx2_available() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

namespace {

bool use_avx2() {
    static const bool picked = [] {
        if (const char* e = std::getenv("SZG_FORCE_SCALAR"); e && e[0] == '1') return false;
        return avx2_available();
    }();
    return picked;
}

}  // namespace

const char* active_path() { return use_avx2() ? "avx2" : "scalar"; }

cpx cauchy_sum(const double* zr, const double* zi, const double* wr, const double* wi,
               std::size_t n, cpx p) {
    return use_avx2() ? cauchy_sum_avx2(zr, zi, wr, wi, n, p)
                      : cauchy_sum_scalar(zr, zi, wr, wi, n, p);
}

void ks_row(const double* zr, const double* zi, const double* ur, const double* ui, std::size_t n,
            cpx z_row, cpx v_row, double* out_re, double* out_im) {
    if (use_avx2())
        ks_row_avx2(zr, zi, ur, ui, n, z_row, v_row, out_re, out_im);
    else
        ks_row_scalar(zr, zi, ur, ui, n, z_row, v_row, out_re, out_im);
}

}  // namespace szg::simd

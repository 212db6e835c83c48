#include <immintrin.h>

#include "szg/simd_kernels.hpp"

// AVX2+FMA variants, compiled with per-function target attributes so the rest
// of the build stays baseline x86-64. Only called after a cpuid check.
namespace szg::simd {

__attribute__((target("avx2,fma"))) cpx cauchy_sum_avx2(const double* zr, const double* zi,
                                                        const double* wr, const double* wi,
                                                        std::size_t n, cpx p) {
    const __m256d pr = _mm256_set1_pd(p.real());
    const __m256d pi_ = _mm256_set1_pd(p.imag());
    __m256d accr = _mm256_setzero_pd();
    __m256d acci = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dr = _mm256_sub_pd(_mm256_loadu_pd(zr + i), pr);
        const __m256d di = _mm256_sub_pd(_mm256_loadu_pd(zi + i), pi_);
        const __m256d den = _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(di, di));
        const __m256d inv = _mm256_div_pd(_mm256_set1_pd(1.0), den);
        const __m256d wre = _mm256_loadu_pd(wr + i);
        const __m256d wim = _mm256_loadu_pd(wi + i);
        const __m256d numr = _mm256_fmadd_pd(wre, dr, _mm256_mul_pd(wim, di));
        const __m256d numi = _mm256_fmsub_pd(wim, dr, _mm256_mul_pd(wre, di));
        accr = _mm256_fmadd_pd(numr, inv, accr);
        acci = _mm256_fmadd_pd(numi, inv, acci);
    }
    alignas(32) double bufr[4], bufi[4];
    _mm256_store_pd(bufr, accr);
    _mm256_store_pd(bufi, acci);
    double sr = bufr[0] + bufr[1] + bufr[2] + bufr[3];
    double si = bufi[0] + bufi[1] + bufi[2] + bufi[3];
    for (; i < n; ++i) {
        const double dr = zr[i] - p.real();
        const double di = zi[i] - p.imag();
        const double inv = 1.0 / (dr * dr + di * di);
        sr += (wr[i] * dr + wi[i] * di) * inv;
        si += (wi[i] * dr - wr[i] * di) * inv;
    }
    return {sr, si};
}

__attribute__((target("avx2,fma"))) void ks_row_avx2(const double* zr, const double* zi,
                                                     const double* ur, const double* ui,
                                                     std::size_t n, cpx z_row, cpx v_row,
                                                     double* out_re, double* out_im) {
    const __m256d xr = _mm256_set1_pd(z_row.real());
    const __m256d xi = _mm256_set1_pd(z_row.imag());
    const __m256d vr = _mm256_set1_pd(v_row.real());
    const __m256d vi = _mm256_set1_pd(v_row.imag());
    const __m256d c = _mm256_set1_pd(1.0 / (2.0 * pi));
    const __m256d nc = _mm256_set1_pd(-1.0 / (2.0 * pi));
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dr = _mm256_sub_pd(_mm256_loadu_pd(zr + i), xr);
        const __m256d di = _mm256_sub_pd(_mm256_loadu_pd(zi + i), xi);
        const __m256d den = _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(di, di));
        const __m256d mask = _mm256_cmp_pd(den, zero, _CMP_NEQ_OQ);
        const __m256d inv =
            _mm256_and_pd(_mm256_div_pd(_mm256_set1_pd(1.0), den), mask);
        const __m256d qr = _mm256_mul_pd(dr, inv);
        const __m256d qi = _mm256_mul_pd(_mm256_sub_pd(zero, di), inv);
        const __m256d ure = _mm256_loadu_pd(ur + i);
        const __m256d uim = _mm256_loadu_pd(ui + i);
        const __m256d ar = _mm256_fmsub_pd(ure, qr, _mm256_mul_pd(uim, qi));
        const __m256d ai = _mm256_fmadd_pd(ure, qi, _mm256_mul_pd(uim, qr));
        const __m256d br = _mm256_fmsub_pd(vr, qr, _mm256_mul_pd(vi, qi));
        const __m256d bi = _mm256_fmadd_pd(vr, qi, _mm256_mul_pd(vi, qr));
        const __m256d tr = _mm256_sub_pd(ar, br);
        const __m256d ti = _mm256_add_pd(ai, bi);
        _mm256_storeu_pd(out_re + i, _mm256_mul_pd(ti, c));
        _mm256_storeu_pd(out_im + i, _mm256_mul_pd(tr, nc));
    }
    if (i < n) ks_row_scalar(zr + i, zi + i, ur + i, ui + i, n - i, z_row, v_row, out_re + i, out_im + i);
}

}  // namespace szg::simd

#include "szg/simd_kernels.hpp"

namespace szg::simd {

cpx cauchy_sum_scalar(const double* zr, const double* zi, const double* wr, const double* wi,
                      std::size_t n, cpx p) {
    double sr = 0.0, si = 0.0;
    const double pr = p.real(), pi_ = p.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double dr = zr[i] - pr;
        const double di = zi[i] - pi_;
        const double inv = 1.0 / (dr * dr + di * di);
        // w / d = (w * conj(d)) / |d|^2
        sr += (wr[i] * dr + wi[i] * di) * inv;
        si += (wi[i] * dr - wr[i] * di) * inv;
    }
    return {sr, si};
}

void ks_row_scalar(const double* zr, const double* zi, const double* ur, const double* ui,
                   std::size_t n, cpx z_row, cpx v_row, double* out_re, double* out_im) {
    const double xr = z_row.real(), xi = z_row.imag();
    const double vr = v_row.real(), vi = v_row.imag();
    const double c = 1.0 / (2.0 * pi);
    for (std::size_t i = 0; i < n; ++i) {
        const double dr = zr[i] - xr;
        const double di = zi[i] - xi;
        const double den = dr * dr + di * di;
        if (den == 0.0) {
            out_re[i] = 0.0;
            out_im[i] = 0.0;
            continue;
        }
        const double inv = 1.0 / den;
        const double qr = dr * inv;   // q = 1/(z_i - z_row) = conj(d)/|d|^2
        const double qi = -di * inv;
        const double ar = ur[i] * qr - ui[i] * qi;  // u*q
        const double ai = ur[i] * qi + ui[i] * qr;
        const double br = vr * qr - vi * qi;  // v*q, then conjugate
        const double bi = vr * qi + vi * qr;
        const double tr = ar - br;        // u*q - conj(v*q), real part
        const double ti = ai + bi;        // imaginary part
        out_re[i] = ti * c;               // multiply by 1/(2 pi i) = -i/(2 pi)
        out_im[i] = -tr * c;
    }
}

}  // namespace szg::simd

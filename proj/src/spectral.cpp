#include "szg/spectral.hpp"

#include <cmath>

namespace szg {

namespace {

// w_d = 0.5 (-1)^d cot(d h / 2), h = 2pi/N; w_0 = 0. Skew: w_{N-d} = -w_d.
std::vector<double> cot_weights(std::size_t n) {
    std::vector<double> w(n, 0.0);
    const double h = 2.0 * pi / static_cast<double>(n);
    for (std::size_t d = 1; d < n; ++d) {
        const double s = (d % 2 == 0) ? 0.5 : -0.5;
        w[d] = s / std::tan(0.5 * h * static_cast<double>(d));
    }
    if (n % 2 == 0) w[n / 2] = 0.0;  // cot(pi/2), keep it exact
    return w;
}

}  // namespace

std::vector<cpx> periodic_derivative(const std::vector<cpx>& u) {
    const std::size_t n = u.size();
    if (n < 2) return std::vector<cpx>(n, cpx(0.0));
    // Constant samples must map to an exactly zero derivative (the weights sum
    // to zero only up to rounding when accumulated naively).
    bool constant = true;
    for (std::size_t i = 1; i < n && constant; ++i) constant = (u[i] == u[0]);
    if (constant) return std::vector<cpx>(n, cpx(0.0));

    const std::vector<double> w = cot_weights(n);
    std::vector<cpx> du(n);
    for (std::size_t i = 0; i < n; ++i) {
        cpx acc = 0.0;
        for (std::size_t d = 1; d < n; ++d) {
            acc += w[d] * u[(i + n - d) % n];
        }
        du[i] = acc;
    }
    return du;
}

std::vector<double> periodic_derivative(const std::vector<double>& u) {
    std::vector<cpx> uc(u.begin(), u.end());
    std::vector<cpx> duc = periodic_derivative(uc);
    std::vector<double> du(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) du[i] = duc[i].real();
    return du;
}

std::vector<cpx> dft(const std::vector<cpx>& u) {
    const std::size_t n = u.size();
    std::vector<cpx> c(n, cpx(0.0));
    for (std::size_t k = 0; k < n; ++k) {
        cpx acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = -2.0 * pi * static_cast<double>(k) * static_cast<double>(j) /
                               static_cast<double>(n);
            acc += u[j] * cpx(std::cos(ang), std::sin(ang));
        }
        c[k] = acc / static_cast<double>(n);
    }
    return c;
}

std::vector<cpx> periodic_derivative_dft(const std::vector<cpx>& u, int order) {
    const std::size_t n = u.size();
    if (order == 0) return u;
    if (n < 2) return std::vector<cpx>(n, cpx(0.0));
    std::vector<cpx> c = dft(u);
    for (std::size_t k = 0; k < n; ++k) {
        // signed frequency: k <= N/2 -> k, else k - N
        double f = static_cast<double>(k);
        if (k > n / 2) f -= static_cast<double>(n);
        if (2 * k == n && (order % 2 != 0)) {
            c[k] = 0.0;  // Nyquist mode has no well-defined odd derivative
            continue;
        }
        cpx ik(0.0, f);
        cpx mult = 1.0;
        for (int m = 0; m < order; ++m) mult *= ik;
        c[k] *= mult;
    }
    // inverse transform
    std::vector<cpx> du(n, cpx(0.0));
    for (std::size_t j = 0; j < n; ++j) {
        cpx acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double ang = 2.0 * pi * static_cast<double>(k) * static_cast<double>(j) /
                               static_cast<double>(n);
            acc += c[k] * cpx(std::cos(ang), std::sin(ang));
        }
        du[j] = acc;
    }
    return du;
}

}  // namespace szg

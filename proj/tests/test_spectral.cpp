#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "szg/spectral.hpp"

using namespace szg;

namespace {
double grid_t(std::size_t j, std::size_t n) { return 2.0 * pi * static_cast<double>(j) / n; }
}  // namespace

TEST_CASE("derivative of sin is cos to roundoff") {
    const std::size_t n = 32;
    std::vector<double> u(n);
    for (std::size_t j = 0; j < n; ++j) u[j] = std::sin(grid_t(j, n));
    std::vector<double> du = periodic_derivative(u);
    for (std::size_t j = 0; j < n; ++j)
        CHECK(std::abs(du[j] - std::cos(grid_t(j, n))) < 1e-13);
}

TEST_CASE("derivative of exp(cos t) is spectrally accurate at N=64") {
    const std::size_t n = 64;
    std::vector<double> u(n);
    for (std::size_t j = 0; j < n; ++j) u[j] = std::exp(std::cos(grid_t(j, n)));
    std::vector<double> du = periodic_derivative(u);
    for (std::size_t j = 0; j < n; ++j) {
        double t = grid_t(j, n);
        CHECK(std::abs(du[j] + std::sin(t) * std::exp(std::cos(t))) < 1e-10);
    }
}

TEST_CASE("derivative of a constant is exactly zero") {
    std::vector<double> u(48, 3.7);
    for (double v : periodic_derivative(u)) CHECK(v == 0.0);
    std::vector<cpx> uc(48, cpx(1.5, -2.5));
    for (cpx v : periodic_derivative(uc)) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("dft picks out single modes") {
    const std::size_t n = 16;
    std::vector<cpx> u(n);
    for (std::size_t j = 0; j < n; ++j) u[j] = std::exp(iunit * grid_t(j, n));
    std::vector<cpx> c = dft(u);
    CHECK(std::abs(c[1] - 1.0) < 1e-13);
    for (std::size_t k = 0; k < n; ++k)
        if (k != 1) CHECK(std::abs(c[k]) < 1e-13);
}

TEST_CASE("second derivative through dft multipliers") {
    const std::size_t n = 32;
    std::vector<cpx> u(n);
    for (std::size_t j = 0; j < n; ++j) u[j] = std::cos(grid_t(j, n));
    std::vector<cpx> d2 = periodic_derivative_dft(u, 2);
    for (std::size_t j = 0; j < n; ++j)
        CHECK(std::abs(d2[j] + std::cos(grid_t(j, n))) < 1e-12);
}

TEST_CASE("circulant and dft derivative routes agree") {
    const std::size_t n = 40;
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<cpx> u(n);
    for (cpx& v : u) v = cpx(dist(rng), dist(rng));
    std::vector<cpx> a = periodic_derivative(u);
    std::vector<cpx> b = periodic_derivative_dft(u, 1);
    for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(a[j] - b[j]) < 1e-10);
}

TEST_CASE("odd-order derivative kills the Nyquist mode") {
    const std::size_t n = 8;
    std::vector<cpx> u(n);
    for (std::size_t j = 0; j < n; ++j) u[j] = (j % 2 == 0) ? 1.0 : -1.0;  // cos(4 t_j)
    std::vector<cpx> du = periodic_derivative_dft(u, 1);
    for (cpx v : du) CHECK(std::abs(v) < 1e-14);
}

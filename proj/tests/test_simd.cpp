#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "szg/simd_kernels.hpp"

using namespace szg;

namespace {

struct Data {
    std::vector<double> zr, zi, wr, wi;
};

Data gen_data(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Data d;
    for (std::size_t i = 0; i < n; ++i) {
        d.zr.push_back(2.0 + dist(rng));  // keep away from the probe points
        d.zi.push_back(2.0 + dist(rng));
        d.wr.push_back(dist(rng));
        d.wi.push_back(dist(rng));
    }
    return d;
}

}  // namespace

TEST_CASE("cauchy_sum scalar path matches a plain complex loop") {
    for (std::size_t n : {1u, 3u, 4u, 7u, 64u, 129u}) {
        Data d = gen_data(n, 42 + static_cast<unsigned>(n));
        cpx p(0.1, -0.2);
        cpx direct = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            direct += cpx(d.wr[i], d.wi[i]) / (cpx(d.zr[i], d.zi[i]) - p);
        cpx got = simd::cauchy_sum_scalar(d.zr.data(), d.zi.data(), d.wr.data(), d.wi.data(), n, p);
        CHECK(std::abs(got - direct) < 1e-13 * (1.0 + std::abs(direct)));
    }
}

TEST_CASE("avx2 path agrees with scalar path") {
    if (!simd::avx2_available()) {
        MESSAGE("avx2 not available; skipping");
        return;
    }
    for (std::size_t n : {1u, 4u, 5u, 8u, 63u, 200u}) {
        Data d = gen_data(n, 1000 + static_cast<unsigned>(n));
        cpx p(-0.3, 0.7);
        cpx a = simd::cauchy_sum_scalar(d.zr.data(), d.zi.data(), d.wr.data(), d.wi.data(), n, p);
        cpx b = simd::cauchy_sum_avx2(d.zr.data(), d.zi.data(), d.wr.data(), d.wi.data(), n, p);
        CHECK(std::abs(a - b) < 1e-12 * (1.0 + std::abs(a)));
    }
}

TEST_CASE("ks_row paths agree and zero the self-index") {
    std::size_t n = 37;
    Data d = gen_data(n, 7);
    cpx z_row(d.zr[5], d.zi[5]);  // equals node 5 exactly
    cpx v_row(0.4, -0.9);
    std::vector<double> sr(n), si(n), ar(n), ai(n);
    simd::ks_row_scalar(d.zr.data(), d.zi.data(), d.wr.data(), d.wi.data(), n, z_row, v_row,
                        sr.data(), si.data());
    CHECK(sr[5] == 0.0);
    CHECK(si[5] == 0.0);
    if (simd::avx2_available()) {
        simd::ks_row_avx2(d.zr.data(), d.zi.data(), d.wr.data(), d.wi.data(), n, z_row, v_row,
                          ar.data(), ai.data());
        for (std::size_t j = 0; j < n; ++j) {
            CHECK(std::abs(sr[j] - ar[j]) < 1e-13);
            CHECK(std::abs(si[j] - ai[j]) < 1e-13);
        }
    }
}

TEST_CASE("dispatch reports a valid path") {
    std::string p = simd::active_path();
    CHECK((p == "avx2" || p == "scalar"));
    // the dispatcher must return the same values as the scalar reference
    Data d = gen_data(16, 99);
    cpx probe(0.0, 0.0);
    cpx a = simd::cauchy_sum(d.zr.data(), d.zi.data(), d.wr.data(), d.wi.data(), 16, probe);
    cpx b = simd::cauchy_sum_scalar(d.zr.data(), d.zi.data(), d.wr.data(), d.wi.data(), 16, probe);
    CHECK(std::abs(a - b) < 1e-12 * (1.0 + std::abs(b)));
}

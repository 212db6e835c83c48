#include <cmath>

#include "doctest.h"
#include "szg/geometry.hpp"

using namespace szg;

TEST_CASE("disc preset samples the unit circle with unit tangents") {
    DomainGeometry d = make_preset("disc", {1.0}, 64);
    CHECK(d.connectivity() == 1);
    CHECK(d.total_nodes() == 64);
    for (std::size_t i = 0; i < d.total_nodes(); ++i) {
        CHECK(std::abs(std::abs(d.z[i]) - 1.0) < 1e-14);
        CHECK(std::abs(std::abs(d.tangent[i]) - 1.0) < 1e-14);
        // ccw circle: tangent = i z
        CHECK(std::abs(d.tangent[i] - iunit * d.z[i]) < 1e-14);
    }
}

TEST_CASE("ellipse speed and circumference") {
    DomainGeometry d = make_preset("ellipse", {1.0, 0.6}, 256);
    const CurveComponent& c = d.components[0];
    for (std::size_t j = 0; j < c.z.size(); ++j) {
        double t = c.t[j];
        double speed = std::hypot(std::sin(t), 0.6 * std::cos(t));
        CHECK(std::abs(std::abs(c.dz[j]) - speed) < 1e-13);
    }
    // trapezoid arc length of the unit circle is exact
    DomainGeometry disc = make_preset("disc", {1.0}, 32);
    double len = 0.0;
    for (std::size_t i = 0; i < disc.total_nodes(); ++i) len += disc.qnode[i];
    CHECK(std::abs(len - 2.0 * pi) < 1e-12);
}

TEST_CASE("annulus orientation: outer ccw, inner cw") {
    DomainGeometry d = make_preset("annulus", {1.0, 0.5}, 64);
    CHECK(d.connectivity() == 2);
    CHECK(d.components[0].orientation == 1);
    CHECK(d.components[1].orientation == -1);
    CHECK(winding_number(d, cpx(0.7, 0.0)) == 1);   // in the ring
    CHECK(winding_number(d, cpx(0.0, 0.0)) == 0);   // inside the hole
    CHECK(winding_number(d, cpx(2.0, 0.0)) == 0);   // outside
    CHECK(contains(d, cpx(0.0, -0.8)));
    CHECK(!contains(d, cpx(0.2, 0.2)));
}

TEST_CASE("smooth-star stays a Jordan curve and winds once") {
    DomainGeometry d = make_preset("smooth-star", {1.0, 0.3, 5.0}, 128);
    CHECK(d.connectivity() == 1);
    CHECK(winding_number(d, cpx(0.0, 0.0)) == 1);
    CHECK(winding_number(d, cpx(2.0, 0.0)) == 0);
    for (std::size_t i = 0; i < d.total_nodes(); ++i) CHECK(d.absdz[i] > 1e-12);
}

TEST_CASE("circle-holes default is 3-connected with sane windings") {
    DomainGeometry d = make_preset("circle-holes", {}, 64);
    CHECK(d.connectivity() == 3);
    CHECK(winding_number(d, cpx(0.0, 0.6)) == 1);
    CHECK(winding_number(d, cpx(0.45, 0.0)) == 0);   // inside a hole
    CHECK(winding_number(d, cpx(-0.45, 0.0)) == 0);  // inside the other hole
}

TEST_CASE("boundary_distance on the annulus") {
    DomainGeometry d = make_preset("annulus", {1.0, 0.5}, 512);
    double bd = boundary_distance(d, cpx(0.75, 0.0));
    CHECK(bd == doctest::Approx(0.25).epsilon(1e-3));
    double bd2 = boundary_distance(d, cpx(0.55, 0.0));
    CHECK(bd2 == doctest::Approx(0.05).epsilon(1e-2));
}

TEST_CASE("winding refuses points on the boundary") {
    DomainGeometry d = make_preset("disc", {1.0}, 32);
    CHECK_THROWS_AS(winding_number(d, d.z[5]), invalid_input);
}

TEST_CASE("node-count validation") {
    CHECK_THROWS_AS(make_preset("disc", {1.0}, 15), invalid_input);
    CHECK_THROWS_AS(make_preset("disc", {1.0}, 14), invalid_input);
    CHECK_THROWS_AS(make_preset("disc", {-1.0}, 64), invalid_input);
    CHECK_THROWS_AS(make_preset("nonesuch", {}, 64), invalid_input);
    CHECK_THROWS_AS(make_preset("annulus", {1.0, 1.5}, 64), invalid_input);
    // overlapping holes rejected
    CHECK_THROWS_AS(make_preset("circle-holes", {1.0, 0.0, 0.0, 0.2, 0.1, 0.0, 0.2}, 64),
                    invalid_input);
}

TEST_CASE("refining the grid leaves the curve and windings unchanged") {
    DomainGeometry a = make_preset("annulus", {1.0, 0.5}, 64);
    DomainGeometry b = make_preset("annulus", {1.0, 0.5}, 128);
    // every coarse node appears among the fine nodes
    for (std::size_t j = 0; j < 64; ++j)
        CHECK(std::abs(a.components[0].z[j] - b.components[0].z[2 * j]) < 1e-15);
    CHECK(winding_number(a, cpx(0.6, 0.3)) == winding_number(b, cpx(0.6, 0.3)));
}

TEST_CASE("argument winding of an off-center loop") {
    std::vector<cpx> loop(64);
    for (std::size_t j = 0; j < 64; ++j)
        loop[j] = cpx(0.3, 0.1) + 0.5 * std::exp(iunit * (2.0 * pi * j / 64.0));
    CHECK(argument_winding(loop, cpx(0.3, 0.1)) == 1);
    CHECK(argument_winding(loop, cpx(2.0, 0.0)) == 0);
}

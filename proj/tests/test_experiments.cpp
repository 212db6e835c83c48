#include <cmath>

#include "doctest.h"
#include "szg/experiments.hpp"
#include "szg/field.hpp"

using namespace szg;

TEST_CASE("constant-blend errors follow the exact homogeneity law") {
    // phi_k = 1 + 1/k scales the kernel by k/(k+1), so the error at every
    // pair is |S| / (k+1) and err_k * (k+1) is constant across k
    DomainGeometry d = make_preset("ellipse", {1.0, 0.6}, 128);
    WeightFamily fam = make_family("constant-blend");
    PairGrid grid = default_interior_grid(d, 4);
    ConvergenceReport rep = ramadanov_interior(fam, d, 6, grid);
    REQUIRE(rep.ks.size() == 6);
    double c0 = rep.sup_errors[0] * 2.0;
    CHECK(c0 > 0.0);
    for (std::size_t i = 1; i < rep.sup_errors.size(); ++i) {
        double ci = rep.sup_errors[i] * (rep.ks[i] + 1.0);
        CHECK(std::abs(ci - c0) < 1e-9 * c0);
    }
    CHECK(rep.tail_monotone);
    CHECK(rep.slope > -1.05);
    CHECK(rep.slope < -0.6);
}

TEST_CASE("interior sweep matches a direct recomputation") {
    DomainGeometry d = make_preset("annulus", {1.0, 0.5}, 128);
    WeightFamily fam = make_family("exp-cos");
    PairGrid grid = default_interior_grid(d, 3);
    ConvergenceReport rep = ramadanov_interior(fam, d, 3, grid);

    SzegoSolver slim(d, fam.limit(d));
    SzegoSolver s2(d, fam.member(d, 2));
    double sup = 0.0;
    for (const auto& pr : grid.pairs) {
        cpx a = slim.eval(pr.first.z, pr.second.z);
        cpx b = s2.eval(pr.first.z, pr.second.z);
        sup = std::max(sup, std::abs(b - a));
    }
    CHECK(rep.sup_errors[1] == doctest::Approx(sup).epsilon(1e-12));
}

TEST_CASE("exp-cos interior errors shrink with k") {
    DomainGeometry d = make_preset("annulus", {1.0, 0.5}, 128);
    WeightFamily fam = make_family("exp-cos");
    ConvergenceReport rep = ramadanov_interior(fam, d, 5, default_interior_grid(d, 4));
    CHECK(rep.sup_errors.front() > 0.0);
    CHECK(rep.sup_errors.back() < 0.5 * rep.sup_errors.front());
    for (std::size_t i = 1; i < rep.sup_errors.size(); ++i)
        CHECK(rep.sup_errors[i] < rep.sup_errors[i - 1] * (1.0 + 1e-9));
    CHECK(rep.kind == "ramadanov-interior");
}

TEST_CASE("closure sweep with one boundary coordinate") {
    DomainGeometry d = make_preset("annulus", {1.0, 0.5}, 128);
    WeightFamily fam = make_family("exp-cos");
    PairGrid grid = default_closure_grid(d, 4);
    for (const auto& pr : grid.pairs)
        CHECK((pr.first.is_node != pr.second.is_node));
    ConvergenceReport rep = ramadanov_closure(fam, d, 4, grid);
    CHECK(rep.sup_errors.back() < rep.sup_errors.front());
    CHECK(rep.kind == "ramadanov-closure");
}

TEST_CASE("fixed boundary pole sweep") {
    DomainGeometry d = make_preset("annulus", {1.0, 0.5}, 128);
    WeightFamily fam = make_family("poly-abs2");
    std::size_t w0 = 5;
    std::vector<cpx> zgrid = default_boundary_point_zgrid(d, w0, 4);
    REQUIRE(zgrid.size() == 4);
    for (cpx z : zgrid) CHECK(std::abs(z - d.z[w0]) >= 0.2);
    ConvergenceReport rep = boundary_point_convergence(fam, d, w0, zgrid, 4);
    CHECK(rep.sup_errors.back() < rep.sup_errors.front());
    CHECK(rep.kind == "boundary-point");
}

TEST_CASE("garabedian regular part converges") {
    DomainGeometry d = make_preset("annulus", {1.0, 0.5}, 128);
    WeightFamily fam = make_family("exp-cos");
    ConvergenceReport rep = garabedian_convergence(fam, d, 4, default_interior_grid(d, 3));
    CHECK(rep.sup_errors.back() < rep.sup_errors.front());
    CHECK(rep.kind == "garabedian");
}

TEST_CASE("zero tracking on the annulus") {
    // on the annulus every member of this family factors as phi_k = |g_k|^2 with
    // g_k zero-free holomorphic (log phi_k has zero mean on each circle, so its
    // harmonic conjugate is single-valued); the weighted kernel is then S/(g conj(g(a)))
    // and the zero never moves at all -- tracked distances are pure roundoff
    DomainGeometry d = make_preset("annulus", {1.0, 0.5}, 128);
    WeightFamily fam = make_family("exp-cos");
    cpx a(0.7, 0.0);
    ZeroTrackReport rep = zero_tracking(fam, d, a, 4);
    REQUIRE(rep.limit_count == 1);
    CHECK(std::abs(rep.limit_zeros[0] - cpx(-0.5 / 0.7, 0.0)) < 1e-8);
    REQUIRE(rep.rows.size() == 4);
    for (const auto& row : rep.rows) CHECK(row.count == 1);
    CHECK(rep.k0 == 1);
    for (const auto& row : rep.rows) CHECK(row.hausdorff < 1e-10);
}

TEST_CASE("zero tracking on the 3-connected preset") {
    // here the log-weight has nonzero flux around the holes, no global |g|^2
    // factorization exists, and the pair of zeros genuinely drifts with k
    DomainGeometry d = make_preset("circle-holes", {}, 96);
    WeightFamily fam = make_family("exp-cos");
    ZeroTrackReport rep = zero_tracking(fam, d, cpx(0.0, 0.55), 4);
    REQUIRE(rep.limit_count == 2);
    REQUIRE(rep.rows.size() == 4);
    CHECK(rep.rows[0].count == 1);  // far from the unit weight one zero has left the domain
    for (std::size_t i = 1; i < rep.rows.size(); ++i) CHECK(rep.rows[i].count == 2);
    CHECK(rep.k0 == 2);
    for (std::size_t i = 2; i < rep.rows.size(); ++i)
        CHECK(rep.rows[i].hausdorff < rep.rows[i - 1].hausdorff);
    CHECK(rep.rows.back().hausdorff < 0.05);
}

TEST_CASE("family members approach the unit weight in Sobolev norms") {
    DomainGeometry d = make_preset("annulus", {1.0, 0.5}, 128);
    for (const char* id : {"exp-cos", "poly-abs2", "constant-blend"}) {
        WeightFamily fam = make_family(id);
        WeightField lim = fam.limit(d);
        for (double v : lim.phi) CHECK(v == 1.0);
        for (int s : {0, 3}) {
            double prev = 1e300;
            for (int k = 1; k <= 6; ++k) {
                BoundaryField diff;
                diff.domain_id = d.id;
                WeightField wk = fam.member(d, k);
                for (std::size_t i = 0; i < d.total_nodes(); ++i)
                    diff.values.push_back(cpx(wk.phi[i] - 1.0, 0.0));
                double n = cs_norm(diff, s, d);
                CHECK(n <= prev * (1.0 + 1e-12));
                prev = n;
            }
        }
    }
}

TEST_CASE("sweeps are deterministic") {
    DomainGeometry d = make_preset("annulus", {1.0, 0.5}, 128);
    WeightFamily fam = make_family("exp-cos");
    PairGrid grid = default_interior_grid(d, 3);
    ConvergenceReport r1 = ramadanov_interior(fam, d, 3, grid);
    ConvergenceReport r2 = ramadanov_interior(fam, d, 3, grid);
    REQUIRE(r1.sup_errors.size() == r2.sup_errors.size());
    for (std::size_t i = 0; i < r1.sup_errors.size(); ++i)
        CHECK(r1.sup_errors[i] == r2.sup_errors[i]);
}

TEST_CASE("grid preconditions are enforced") {
    DomainGeometry d = make_preset("disc", {1.0}, 64);
    WeightFamily fam = make_family("exp-cos");

    PairGrid shallow;
    shallow.grid_id = "bad";
    PointRef a{false, cpx(0.95, 0.0), 0};
    PointRef b{false, cpx(0.0, 0.0), 0};
    shallow.pairs.push_back({a, b});
    CHECK_THROWS_AS(ramadanov_interior(fam, d, 2, shallow), invalid_input);

    PairGrid nodes;
    nodes.grid_id = "bad";
    PointRef n1{true, cpx(), 0};
    PointRef n2{true, cpx(), 5};
    nodes.pairs.push_back({n1, n2});
    CHECK_THROWS_AS(ramadanov_closure(fam, d, 2, nodes), invalid_input);

    PairGrid interior_only;
    interior_only.grid_id = "bad";
    interior_only.pairs.push_back({b, b});
    CHECK_THROWS_AS(ramadanov_closure(fam, d, 2, interior_only), invalid_input);

    std::vector<cpx> close = {d.z[3] * 0.95};
    CHECK_THROWS_AS(boundary_point_convergence(fam, d, 3, close, 2), invalid_input);
    std::vector<cpx> fine = {cpx(-0.5, 0.0)};
    CHECK_THROWS_AS(boundary_point_convergence(fam, d, 9999, fine, 2), invalid_input);

    CHECK_THROWS_AS(make_family("fourier-bump"), invalid_input);
}

TEST_CASE("default interior points respect the domain") {
    DomainGeometry d = make_preset("circle-holes", {}, 96);
    std::vector<cpx> pts = default_interior_points(d, 5);
    REQUIRE(pts.size() == 5);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(winding_number(d, pts[i]) == 1);
        CHECK(boundary_distance(d, pts[i]) >= 0.1 - 1e-12);
        for (std::size_t j = 0; j < i; ++j) CHECK(std::abs(pts[i] - pts[j]) > 1e-3);
    }
}

TEST_CASE("exploratory boundary pairs are recorded but never asserted") {
    DomainGeometry d = make_preset("annulus", {1.0, 0.5}, 128);
    WeightFamily fam = make_family("exp-cos");
    AhlforsMap f = make_ahlfors(d, default_ahlfors_pole(d));
    std::vector<std::pair<std::size_t, std::size_t>> np = {{3, 67}, {10, 100}};
    std::vector<ExploratoryRow> rows = exploratory_boundary_pairs(fam, d, f, np, 3);
    REQUIRE(rows.size() == 6);
    for (const auto& r : rows) {
        CHECK(r.denom_abs > 0.0);
        CHECK(std::isfinite(r.value.real()));
        CHECK(std::isfinite(r.value.imag()));
        CHECK(r.k >= 1);
        CHECK(r.k <= 3);
    }
}

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "isofill/cat0/sweep.hpp"
#include "isofill/core/disc.hpp"

using namespace isofill;

TEST_CASE("exact radical helpers") {
    CHECK(ceil_sqrt(Rat(2)) == 2);
    CHECK(ceil_sqrt(Rat(4)) == 2);
    CHECK(ceil_sqrt(Rat(9, 4)) == 2);
    CHECK(ceil_sqrt(Rat(0)) == 0);

    RadicalSum s;
    s.add_sqrt(1, 2);
    s.add_sqrt(1, 8);  // sqrt2 + 2 sqrt2 = 3 sqrt2 ~ 4.2426
    CHECK(s.ceil() == 5);

    RadicalSum r;
    r.add_sqrt(1, Rat(9, 4));  // exactly 3/2
    r.add_rational(Rat(1, 2));
    CHECK(r.ceil() == 2);

    CHECK(cmp_sqrt(3, 1, 1, 8) > 0);   // 3 > 2*sqrt2
    CHECK(cmp_sqrt(2, 2, 1, 8) == 0);  // 2 sqrt2 == sqrt8
}

TEST_CASE("bounded shapes") {
    MetricFlagComplex k = unit_grid(1, 1);
    auto b = check_bounded(k);
    CHECK(b.max_edge_sq == 2);  // the diagonal
    CHECK(b.pieces(Rat(1, 2)) == 3);  // ceil(sqrt2 / (1/2))

    MetricFlagComplex seg;
    seg.set_edge_sq({0}, {1}, 1);
    seg.set_edge_sq({1}, {2}, 9);
    auto b2 = check_bounded(seg);
    CHECK(b2.max_edge_sq == 9);
    CHECK(b2.pieces(1) == 3);
    CHECK(b2.pieces(Rat(1, 2)) == 6);
}

TEST_CASE("thick shapes") {
    SECTION("single equilateral unit triangle") {
        MetricFlagComplex k;
        k.set_edge_sq({0}, {1}, 1);
        k.set_edge_sq({1}, {2}, 1);
        k.set_edge_sq({0}, {2}, 1);
        auto t = check_thick(k);
        REQUIRE(t.ok);
        CHECK(t.eps_sq == Rat(1, 12));  // (altitude/3)^2 = 3/36
        CHECK(t.eps_sq < Rat(1, 4));    // eps < 1/2
    }

    SECTION("right-isoceles grid shape") {
        auto t = check_thick(unit_grid(4, 4));
        REQUIRE(t.ok);
        CHECK(t.eps_sq == Rat(1, 18));
    }

    SECTION("degenerate needle is a witness") {
        MetricFlagComplex k;
        k.set_coord({0}, {0, 0});
        k.set_coord({1}, {1, 0});
        k.set_coord({2}, {2, 0});
        k.skeleton.add_edge({0}, {1});
        k.skeleton.add_edge({1}, {2});
        k.skeleton.add_edge({0}, {2});
        auto t = check_thick(k);
        CHECK_FALSE(t.ok);
        REQUIRE(t.witness.has_value());
        CHECK(t.witness->dimension == 2);
        CHECK(t.witness->sixteen_area_sq() == 0);
    }
}

TEST_CASE("suspension complex") {
    MetricFlagComplex k1 = suspension_complex(1);
    CHECK(k1.skeleton.vertex_count() == 5);
    CHECK(k1.triangles().size() == 4);
    CHECK_FALSE(k1.skeleton.are_adjacent({2}, {-2}));  // cone points not joined

    for (int m : {1, 2, 3, 5}) {
        MetricFlagComplex k = suspension_complex(m);
        VertexId p{m + 1}, q{-(m + 1)};
        for (int kk = 1; kk <= m; ++kk)
            CHECK(validate_loop(CombLoop{{p, {0}, q, {kk}}}, k.skeleton));
        CHECK(check_bounded(k).max_edge_sq > 0);  // always succeeds
        auto t = check_thick(k);
        if (m <= 2) {
            CHECK(t.ok);
        } else {
            CHECK_FALSE(t.ok);  // clamped abscissas degenerate the shapes
            CHECK(t.witness.has_value());
        }
    }
}

TEST_CASE("planar oracle") {
    MetricFlagComplex k = unit_grid(2, 2);
    PlanarGeodesicOracle oracle(k);

    SECTION("carriers") {
        CHECK(oracle.carrier({0, 0}).dim == 0);
        CHECK(oracle.carrier({Rat(1, 2), 0}).dim == 1);
        CHECK(oracle.carrier({Rat(1, 2), Rat(1, 4)}).dim == 2);
        CHECK(oracle.carrier({10, 10}).dim == -1);
        // diagonal interior point
        Carrier c = oracle.carrier({Rat(1, 2), Rat(1, 2)});
        CHECK(c.dim == 1);
    }

    SECTION("stars") {
        CHECK(oracle.in_star({Rat(1, 4), 0}, {0}));
        CHECK_FALSE(oracle.in_star({Rat(3, 4), 0}, {0}));
        CHECK(oracle.in_star({Rat(1, 2), 0}, {0}));  // midpoint belongs to both
        CHECK(oracle.in_star({Rat(1, 2), 0}, {1}));
    }

    SECTION("geodesic length is planar distance") {
        Geodesic g = oracle.geodesic({0, 0}, {2, 1});
        CHECK(g.len_sq == 5);
        CHECK(g.at(Rat(1, 2)) == Point{1, Rat(1, 2)});
    }

    SECTION("non-convex support is rejected") {
        // L-shape: drop one cell's triangles by removing its diagonal+corner.
        MetricFlagComplex l;
        // three unit cells of a 2x2 square, corner (1..2)x(1..2) missing
        auto add_cell = [&](int x, int y) {
            VertexId a{y * 10 + x}, b{y * 10 + x + 1}, c{(y + 1) * 10 + x + 1}, d{(y + 1) * 10 + x};
            l.set_coord(a, {x, y});
            l.set_coord(b, {x + 1, y});
            l.set_coord(c, {x + 1, y + 1});
            l.set_coord(d, {x, y + 1});
            l.skeleton.add_edge(a, b);
            l.skeleton.add_edge(b, c);
            l.skeleton.add_edge(c, d);
            l.skeleton.add_edge(d, a);
            l.skeleton.add_edge(a, c);
        };
        add_cell(0, 0);
        add_cell(1, 0);
        add_cell(0, 1);
        CHECK_THROWS_AS(PlanarGeodesicOracle(l), std::invalid_argument);
    }
}

namespace {

void check_sweep_report(const QuadraticFill& q, const MetricFlagComplex& k, const CombLoop& loop) {
    const auto& rep = q.report;
    // Filling is a valid disc over the loop.
    auto v = validate_filling(q.disc, q.map, loop, k.skeleton,
                              loop.has_distinct_vertices() ? BoundaryMode::Bijective
                                                           : BoundaryMode::MonotoneOnto);
    INFO(v.detail);
    CHECK(v.ok());
    CHECK(rep.within_bound);
    REQUIRE(rep.cells.size() == rep.paths.size());
    for (const auto& cell : rep.cells) {
        // exactly n(i)+n(i+1)-1 triangles, floored at zero for trivial cells
        int expect = cell.n_a + cell.n_b - 1;
        CHECK(static_cast<int>(cell.triangles) == std::max(expect, 0));
        // sweep events: chain indices non-increasing, one step at a time
        for (std::size_t m = 1; m < cell.events.size(); ++m) {
            auto [j0, k0] = cell.events[m - 1];
            auto [j1, k1] = cell.events[m];
            CHECK(j1 + k1 == j0 + k0 - 1);
            CHECK((j1 == j0 || k1 == k0));
        }
    }
    for (const auto& path : rep.paths) {
        // interior gaps >= eps; path length bound n(i) <= eps^-1 d + 1
        for (int j = 1; j < path.n(); ++j) {
            Rat gap = path.lams[j] - path.lams[j - 1];
            CHECK(gap * gap * path.len_sq >= rep.eps_sq);
        }
        if (path.n() >= 1) {
            Rat nm1(path.n() - 1);
            CHECK(nm1 * nm1 * rep.eps_sq <= path.len_sq);
        }
    }
}

}  // namespace

TEST_CASE("quadratic fill: one triangle") {
    MetricFlagComplex k;
    k.set_coord({0}, {0, 0});
    k.set_coord({1}, {1, 0});
    k.set_coord({2}, {0, 1});
    k.skeleton.add_edge({0}, {1});
    k.skeleton.add_edge({1}, {2});
    k.skeleton.add_edge({0}, {2});
    PlanarGeodesicOracle oracle(k);
    CombLoop loop{{{0}, {1}, {2}}};
    auto q = quadratic_fill(k, oracle, loop);
    check_sweep_report(q, k, loop);
}

TEST_CASE("quadratic fill: 4x4 grid, 16-edge boundary") {
    MetricFlagComplex k = unit_grid(4, 4);
    PlanarGeodesicOracle oracle(k);
    CombLoop loop = grid_boundary(4, 4);
    REQUIRE(loop.length() == 16);
    auto q = quadratic_fill(k, oracle, loop);
    check_sweep_report(q, k, loop);
    // eps = sqrt(1/18): N = ceil(32/eps) = ceil(96 sqrt 2) = 136,
    // 9 pieces per unit edge -> 144 subdivision points.
    CHECK(q.report.n_formula == 136);
    CHECK(q.report.subdivision_points == 144);
}

TEST_CASE("quadratic fill refuses non-thick complexes") {
    MetricFlagComplex tri;
    tri.set_coord({0}, {0, 0});
    tri.set_coord({1}, {1, 0});
    tri.set_coord({2}, {0, 1});
    tri.skeleton.add_edge({0}, {1});
    tri.skeleton.add_edge({1}, {2});
    tri.skeleton.add_edge({0}, {2});
    PlanarGeodesicOracle dummy(tri);  // thickness is checked before tracing
    MetricFlagComplex k = suspension_complex(3);
    CHECK_THROWS_AS(quadratic_fill(k, dummy, CombLoop{{{4}, {0}, {-4}, {1}}}),
                    std::invalid_argument);
}

TEST_CASE("quadratic fill on random convex fans") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 8; ++trial) {
        // points in convex position on a parabola
        std::uniform_int_distribution<int> gap(1, 4);
        int n = 5 + trial % 4;
        MetricFlagComplex k;
        Rat x = 0;
        std::vector<VertexId> ring;
        for (int i = 0; i < n; ++i) {
            x += gap(rng);
            VertexId v{i};
            k.set_coord(v, {x, x * x / 10});
            ring.push_back(v);
        }
        for (int i = 1; i < n; ++i) k.skeleton.add_edge(ring[i - 1], ring[i]);
        for (int i = 2; i < n; ++i) k.skeleton.add_edge(ring[0], ring[i]);
        auto thick = check_thick(k);
        REQUIRE(thick.ok);
        PlanarGeodesicOracle oracle(k);
        CombLoop loop{ring};
        auto q = quadratic_fill(k, oracle, loop);
        check_sweep_report(q, k, loop);
    }
}

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "isofill/core/disc.hpp"
#include "isofill/core/flag_complex.hpp"
#include "isofill/core/io.hpp"

using namespace isofill;

namespace {

FiniteFlagComplex square_with_diagonal() {
    FiniteFlagComplex k;
    for (int i = 0; i < 4; ++i) k.add_vertex({i});
    k.add_edge({0}, {1});
    k.add_edge({1}, {2});
    k.add_edge({2}, {3});
    k.add_edge({3}, {0});
    k.add_edge({0}, {2});
    return k;
}

TriangulatedDisc square_disc() {
    TriangulatedDisc p;
    p.triangles = {{0, 1, 2}, {0, 2, 3}};
    p.boundary = {0, 1, 2, 3};
    return p;
}

SimplicialFillingMap identity_map(int n) {
    SimplicialFillingMap f;
    for (int i = 0; i < n; ++i) f.assignment[i] = {i};
    return f;
}

}  // namespace

TEST_CASE("validate_loop basics") {
    FiniteFlagComplex k = square_with_diagonal();

    CHECK(validate_loop(CombLoop{{{0}, {1}, {2}, {3}}}, k));
    CHECK(validate_loop(CombLoop{{{0}, {0}, {1}}}, k));   // equal consecutive vertices allowed
    CHECK_FALSE(validate_loop(CombLoop{{{1}, {3}}}, k));  // 1-3 not an edge
    CHECK_FALSE(validate_loop(CombLoop{}, k));
    CHECK_THROWS_AS(validate_loop(CombLoop{{{0}, {7}}}, k), UnknownVertexError);
}

TEST_CASE("adjacency oracle contract") {
    FiniteFlagComplex k = square_with_diagonal();
    CHECK(k.are_adjacent({0}, {2}));
    CHECK(k.are_adjacent({2}, {0}));
    CHECK_FALSE(k.are_adjacent({1}, {1}));  // irreflexive
    CHECK_THROWS_AS(k.are_adjacent({0}, {9}), UnknownVertexError);
    CHECK_THROWS_AS(k.add_edge({0}, {0}), std::invalid_argument);

    auto common = k.candidate_neighbors({1}, {3});
    REQUIRE(common.has_value());
    CHECK(*common == std::vector<VertexId>{{0}, {2}});
}

TEST_CASE("canonical loop form is rotation and reflection invariant") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<int> len(1, 9), val(0, 5);
        CombLoop c;
        for (int i = 0, n = len(rng); i < n; ++i) c.vertices.push_back({val(rng)});
        CombLoop r = c;
        std::rotate(r.vertices.begin(), r.vertices.begin() + val(rng) % r.length(), r.vertices.end());
        if (trial % 2) std::reverse(r.vertices.begin(), r.vertices.end());
        CHECK(c.canonical() == r.canonical());
    }
}

TEST_CASE("single triangle fills its own loop") {
    FiniteFlagComplex k = square_with_diagonal();
    TriangulatedDisc p;
    p.triangles = {{0, 1, 2}};
    p.boundary = {0, 1, 2};
    auto r = validate_filling(p, identity_map(3), CombLoop{{{0}, {1}, {2}}}, k, BoundaryMode::Bijective);
    CHECK(r.ok());
    CHECK(count_triangles(p) == 1);
}

TEST_CASE("two triangles fill the square when the diagonal exists") {
    FiniteFlagComplex k = square_with_diagonal();
    TriangulatedDisc p = square_disc();
    CombLoop loop{{{0}, {1}, {2}, {3}}};
    CHECK(validate_filling(p, identity_map(4), loop, k, BoundaryMode::Bijective).ok());
    CHECK(count_triangles(p) == 2);

    SECTION("without the diagonal the image is not a simplex") {
        FiniteFlagComplex k2;
        for (int i = 0; i < 4; ++i) k2.add_vertex({i});
        k2.add_edge({0}, {1});
        k2.add_edge({1}, {2});
        k2.add_edge({2}, {3});
        k2.add_edge({3}, {0});
        auto r = validate_filling(p, identity_map(4), loop, k2, BoundaryMode::Bijective);
        CHECK(r.fault == FillingFault::NonSimplexImage);
        CHECK_FALSE(r.structural_fault());
    }

    SECTION("invariant under local relabeling and loop rotation") {
        TriangulatedDisc q;
        q.triangles = {{10, 11, 12}, {10, 12, 13}};
        q.boundary = {10, 11, 12, 13};
        SimplicialFillingMap f;
        for (int i = 0; i < 4; ++i) f.assignment[10 + i] = {i};
        CombLoop rotated{{{2}, {3}, {0}, {1}}};
        CHECK(validate_filling(q, f, rotated, k, BoundaryMode::Bijective).ok());
    }
}

TEST_CASE("degenerate images are allowed") {
    // A triangle may map two corners to the same vertex; the image then spans
    // an edge or a point, which is still a simplex.
    FiniteFlagComplex k;
    k.add_vertex({0});
    k.add_vertex({1});
    k.add_edge({0}, {1});
    TriangulatedDisc p;
    p.triangles = {{0, 1, 2}};
    p.boundary = {0, 1, 2};
    SimplicialFillingMap f;
    f.assignment[0] = {0};
    f.assignment[1] = {1};
    f.assignment[2] = {1};
    CombLoop loop{{{0}, {1}, {1}}};
    CHECK(validate_filling(p, f, loop, k, BoundaryMode::Bijective).ok());
}

TEST_CASE("monotone-onto boundary mode") {
    FiniteFlagComplex k = square_with_diagonal();
    // Hexagonal boundary mapping onto the square loop, edges (1,1') and (3,3')
    // collapsed.
    TriangulatedDisc p;
    p.triangles = {{0, 1, 2}, {0, 2, 3}, {1, 4, 2}, {3, 2, 5}};
    p.boundary = {0, 1, 4, 2, 5, 3};
    SimplicialFillingMap f = identity_map(4);
    f.assignment[4] = {2};
    f.assignment[5] = {3};
    CombLoop loop{{{0}, {1}, {2}, {3}}};
    CHECK(validate_filling(p, f, loop, k, BoundaryMode::MonotoneOnto).ok());
    auto r = validate_filling(p, f, loop, k, BoundaryMode::Bijective);
    CHECK(r.fault == FillingFault::BoundaryMismatch);
}

TEST_CASE("structural faults are detected") {
    FiniteFlagComplex k = square_with_diagonal();
    CombLoop loop{{{0}, {1}, {2}, {3}}};

    SECTION("edge in three triangles") {
        TriangulatedDisc p;
        p.triangles = {{0, 1, 2}, {0, 2, 3}, {2, 0, 3}};
        p.boundary = {0, 1, 2, 3};
        auto r = validate_filling(p, identity_map(4), loop, k, BoundaryMode::Bijective);
        CHECK(r.fault == FillingFault::NonSurfaceGluing);
        CHECK(r.structural_fault());
    }

    SECTION("two boundary components") {
        // An annulus: square 0123 with inner square 4567, no caps.
        TriangulatedDisc p;
        p.triangles = {{0, 1, 5}, {0, 5, 4}, {1, 2, 6}, {1, 6, 5},
                       {2, 3, 7}, {2, 7, 6}, {3, 0, 4}, {3, 4, 7}};
        p.boundary = {0, 1, 2, 3};
        auto r = validate_disc(p);
        CHECK(r.fault == FillingFault::MultipleBoundaries);
    }

    SECTION("declared genus must match") {
        TriangulatedDisc p = square_disc();
        p.genus = 1;
        CHECK(validate_disc(p).fault == FillingFault::EulerMismatch);
    }

    SECTION("pinched vertex") {
        // Two triangle fans joined only at vertex 0.
        TriangulatedDisc p;
        p.triangles = {{0, 1, 2}, {0, 3, 4}};
        p.boundary = {0, 1, 2, 0, 3, 4};
        auto r = validate_disc(p);
        CHECK(r.structural_fault());
    }
}

TEST_CASE("accepted fillings satisfy the edge counting bounds") {
    // 3 * triangles >= edges, and each boundary edge lies in exactly one
    // triangle (no interior pairing).
    TriangulatedDisc p = square_disc();
    REQUIRE(validate_disc(p).ok());
    auto topo = isofill::detail::analyze_disc(p);
    REQUIRE_FALSE(topo.fault);
    CHECK(3 * count_triangles(p) >= topo.edge_count);
    CHECK(topo.boundary_sides.size() == p.boundary.size());
}

TEST_CASE("text formats") {
    SECTION("complex round trip") {
        std::istringstream in(
            "flag-complex v1\n"
            "vertex 0\nvertex 1\nvertex 2\n"
            "edge 0 1\nedge 1 2\n# comment\nedge 2 0\n");
        FiniteFlagComplex k = read_flag_complex(in);
        CHECK(k.vertex_count() == 3);
        CHECK(k.edge_count() == 3);
        std::ostringstream out;
        write_flag_complex(out, k);
        std::istringstream back(out.str());
        FiniteFlagComplex k2 = read_flag_complex(back);
        CHECK(k2.edges() == k.edges());
    }

    SECTION("loop and filling") {
        std::istringstream in("loop 0 1 2 3\n");
        CombLoop c = read_loop(in);
        CHECK(c.length() == 4);

        std::istringstream fin(
            "triangle 0 1 2\ntriangle 0 2 3\n"
            "map 0 0\nmap 1 1\nmap 2 2\nmap 3 3\n"
            "boundary 0 1 2 3\n");
        auto [p, f] = read_filling(fin);
        CHECK(validate_filling(p, f, c, square_with_diagonal(), BoundaryMode::Bijective).ok());
        std::ostringstream out;
        write_filling(out, p, f);
        std::istringstream back(out.str());
        auto [p2, f2] = read_filling(back);
        CHECK(p2.triangles == p.triangles);
        CHECK(f2.assignment == f.assignment);
    }

    SECTION("malformed input") {
        std::istringstream a("flag-complex v2\n");
        CHECK_THROWS_AS(read_flag_complex(a), ParseError);
        std::istringstream b("loop\n");
        CHECK_THROWS_AS(read_loop(b), ParseError);
        std::istringstream c("triangle 0 1\n");
        CHECK_THROWS_AS(read_filling(c), ParseError);
    }
}

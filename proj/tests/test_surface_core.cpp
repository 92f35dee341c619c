#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <utility>
#include <vector>

#include "isofill/surface/flip.hpp"
#include "isofill/surface/intersection.hpp"
#include "isofill/surface/trace.hpp"

using namespace isofill;

TEST_CASE("canonical surfaces have consistent combinatorics") {
    struct Case {
        int g, p, tris, edges;
    };
    const Case cases[] = {{0, 3, 2, 3}, {0, 4, 4, 6},  {0, 6, 8, 12},
                          {1, 1, 2, 3}, {1, 2, 4, 6},  {2, 1, 6, 9},
                          {2, 3, 10, 15}, {3, 2, 12, 18}};
    for (const auto& c : cases) {
        IdealTriangulation T = new_surface(c.g, c.p);
        CHECK(T.genus == c.g);
        CHECK(T.punctures == c.p);
        CHECK(T.num_triangles() == c.tris);
        CHECK(T.num_edges() == c.edges);
        CHECK_NOTHROW(T.check());
        // every puncture is realized by some corner
        std::vector<bool> seen(c.p, false);
        for (int s = 0; s < T.num_slots(); ++s) seen[T.vertex_of[s]] = true;
        for (int v = 0; v < c.p; ++v) CHECK(seen[v]);
    }
    CHECK_THROWS_AS(new_surface(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(new_surface(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(new_surface(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(new_surface(-1, 3), std::invalid_argument);
}

TEST_CASE("vertex links close up around every puncture") {
    IdealTriangulation T = new_surface(2, 2);
    int total = 0;
    for (int v = 0; v < T.punctures; ++v) {
        auto link = T.vertex_link(v);
        CHECK(!link.empty());
        total += int(link.size());
        for (int c : link) CHECK(T.vertex_of[c] == v);
        for (size_t i = 0; i < link.size(); ++i)
            CHECK(T.next_corner_about_vertex(link[i]) == link[(i + 1) % link.size()]);
    }
    CHECK(total == T.num_slots());
}

TEST_CASE("puncture links are valid multicurves that trace to one closed strand") {
    for (auto [g, p] : std::vector<std::pair<int, int>>{{0, 4}, {1, 1}, {1, 3}, {2, 1}}) {
        IdealTriangulation T = new_surface(g, p);
        for (int v = 0; v < p; ++v) {
            Lamination L = puncture_link(T, v);
            std::string why;
            INFO("g=" << g << " p=" << p << " v=" << v << " why=" << why);
            CHECK(valid_lamination(T, L, &why));
            CHECK(L.is_multicurve_shape());
            auto strands = trace_strands(T, L);
            REQUIRE(strands.size() == 1);
            CHECK(strands[0].closed);
            CHECK(strands[0].passages.size() == size_t(T.vertex_link(v).size()));
            CHECK(strands_to_lamination(T, strands) == L);
        }
    }
}

TEST_CASE("triangle shapes reject inadmissible weights") {
    IdealTriangulation T = new_surface(1, 1);
    Lamination L(T);
    // odd total around a triangle is not realizable
    L.w = {1, 0, 0};
    CHECK_FALSE(valid_lamination(T, L));
    // triangle inequality violation forces a negative corner count
    L.w = {3, 1, 1};
    CHECK_FALSE(valid_lamination(T, L));
    L.w = {1, 1, 2};
    CHECK(valid_lamination(T, L));
    // arcs on an edge forbid strands crossing it: transverse count 0 must
    // still admit nonnegative corner counts
    L.w = {-1, 2, 0};
    CHECK_FALSE(valid_lamination(T, L));
    L.w = {-1, 1, 1};
    CHECK(valid_lamination(T, L));
}

TEST_CASE("edge-parallel arcs trace and round-trip") {
    IdealTriangulation T = new_surface(0, 4);
    for (int e = 0; e < T.num_edges(); ++e) {
        Lamination L(T);
        L.w[e] = -2;
        REQUIRE(valid_lamination(T, L));
        auto strands = trace_strands(T, L);
        REQUIRE(strands.size() == 1);
        CHECK(strands[0].parallel_edge == e);
        CHECK(strands[0].multiplicity == 2);
        CHECK(strands_to_lamination(T, strands) == L);
    }
}

TEST_CASE("strand round trip on random admissible multicurves") {
    // even sums around triangles with triangle inequalities give curves/arcs
    IdealTriangulation T = new_surface(1, 2);
    std::mt19937 rng(20240817);
    int tried = 0, kept = 0;
    while (tried < 4000 && kept < 60) {
        ++tried;
        Lamination L(T);
        for (int e = 0; e < T.num_edges(); ++e) L.w[e] = int(rng() % 7);
        if (!valid_lamination(T, L)) continue;
        ++kept;
        auto strands = trace_strands(T, L);
        CHECK(strands_to_lamination(T, strands) == L);
        for (const auto& s : strands) {
            if (s.parallel_edge >= 0) continue;
            // passages chain through adjacent triangles
            for (size_t i = 0; i + 1 < s.passages.size(); ++i)
                CHECK(IdealTriangulation::tri(T.glue[s.passages[i + 1].slot]) ==
                      IdealTriangulation::tri(s.passages[i].slot));
            if (s.closed)
                CHECK(IdealTriangulation::tri(T.glue[s.passages[0].slot]) ==
                      IdealTriangulation::tri(s.passages.back().slot));
        }
    }
    CHECK(kept >= 40);
}

TEST_CASE("mixed arc and curve systems trace and flip away from the arcs") {
    IdealTriangulation T = new_surface(1, 1);
    Lamination L(T);
    L.w = {-2, 1, 1};  // two copies of edge 0 plus a closed curve missing it
    REQUIRE(valid_lamination(T, L));
    auto strands = trace_strands(T, L);
    REQUIRE(strands.size() == 2);
    CHECK(strands_to_lamination(T, strands) == L);
    // the carried arcs block a flip of their own edge ...
    IdealTriangulation Tc = T;
    Lamination Lc = L;
    CHECK_THROWS_AS(flip_edge(Tc, 0, {&Lc}), std::invalid_argument);
    // ... but ride along unchanged when another edge flips
    flip_edge(T, 1, {&L});
    CHECK_NOTHROW(T.check());
    CHECK(valid_lamination(T, L));
    CHECK(L.w[0] == -2);
}

TEST_CASE("flips are involutions on the triangulation and its laminations") {
    std::mt19937 rng(987654);
    for (auto [g, p] : std::vector<std::pair<int, int>>{{0, 4}, {1, 1}, {1, 2}, {2, 1}}) {
        IdealTriangulation T = new_surface(g, p);
        // random valid lamination
        Lamination L(T);
        do {
            for (int e = 0; e < T.num_edges(); ++e) L.w[e] = int(rng() % 5);
        } while (!valid_lamination(T, L));
        for (int round = 0; round < 50; ++round) {
            int e = int(rng() % T.num_edges());
            if (!flippable(T, e)) continue;
            IdealTriangulation T0 = T;
            Lamination L0 = L;
            flip_edge(T, e, {&L});
            CHECK_NOTHROW(T.check());
            std::string why;
            INFO("g=" << g << " p=" << p << " round=" << round << " why=" << why);
            REQUIRE(valid_lamination(T, L, &why));
            IdealTriangulation T1 = T;
            Lamination L1 = L;
            flip_edge(T, e, {&L});
            CHECK(T.glue == T0.glue);
            CHECK(T.edge_of == T0.edge_of);
            CHECK(T.edge_slots == T0.edge_slots);
            CHECK(T.vertex_of == T0.vertex_of);
            CHECK(L == L0);
            // move on from the flipped position to vary the walk
            T = T1;
            L = L1;
        }
    }
}

TEST_CASE("flip transport matches the tropical rule for multicurves") {
    std::mt19937 rng(13579);
    IdealTriangulation T = new_surface(1, 2);
    for (int round = 0; round < 200; ++round) {
        Lamination L(T);
        do {
            for (int e = 0; e < T.num_edges(); ++e) L.w[e] = int(rng() % 6);
        } while (!valid_lamination(T, L) || !L.is_multicurve_shape());
        int e = int(rng() % T.num_edges());
        if (!flippable(T, e)) continue;
        int A = T.edge_slots[e].first, B = T.glue[A];
        int t0 = IdealTriangulation::tri(A), sa = IdealTriangulation::side(A);
        int t1 = IdealTriangulation::tri(B), sb = IdealTriangulation::side(B);
        Int wa = L.w[T.edge_of[IdealTriangulation::slot(t0, sa + 2)]];
        Int wb = L.w[T.edge_of[IdealTriangulation::slot(t0, sa + 1)]];
        Int wc = L.w[T.edge_of[IdealTriangulation::slot(t1, sb + 2)]];
        Int wd = L.w[T.edge_of[IdealTriangulation::slot(t1, sb + 1)]];
        Int expect = std::max(wa + wc, wb + wd) - L.w[e];
        IdealTriangulation Tc = T;
        Lamination Lc = L;
        flip_edge(Tc, e, {&Lc});
        CHECK(Lc.w[e] == expect);
    }
}

TEST_CASE("intersection numbers: symmetry, self-annihilation, torus pairs") {
    IdealTriangulation T = new_surface(1, 1);
    // the three edges pairwise cross once as arcs; as curve coordinates the
    // two standard curves meet once
    Lamination a(T), b(T);
    a.w = {1, 1, 0};  // closed curve crossing edges 0 and 1
    b.w = {1, 0, 1};  // closed curve crossing edges 0 and 2
    REQUIRE(valid_lamination(T, a));
    REQUIRE(valid_lamination(T, b));
    REQUIRE(trace_strands(T, a).size() == 1);
    REQUIRE(trace_strands(T, b).size() == 1);
    CHECK(intersection_number(T, a, b) == 1);
    CHECK(intersection_number(T, b, a) == 1);
    CHECK(intersection_number(T, a, a) == 0);
    CHECK(intersection_number(T, b, b) == 0);
    // parallel copies multiply
    Lamination a2(T), b3(T);
    for (int e = 0; e < 3; ++e) {
        a2.w[e] = a.w[e] * 2;
        b3.w[e] = b.w[e] * 3;
    }
    CHECK(intersection_number(T, a2, b3) == 6);
    // a puncture link misses everything embedded
    Lamination link = puncture_link(T, 0);
    CHECK(intersection_number(T, link, a) == 0);
    CHECK(intersection_number(T, a, link) == 0);
}

TEST_CASE("intersection numbers against edge arcs equal transverse weights") {
    IdealTriangulation T = new_surface(1, 1);
    Lamination a(T);
    a.w = {1, 1, 0};
    REQUIRE(valid_lamination(T, a));
    for (int e = 0; e < 3; ++e) {
        Lamination arc(T);
        arc.w[e] = -1;
        REQUIRE(valid_lamination(T, arc));
        CHECK(intersection_number(T, a, arc) == a.w[e]);
        CHECK(intersection_number(T, arc, a) == a.w[e]);
    }
}

TEST_CASE("intersection numbers are preserved by flips") {
    std::mt19937 rng(24680);
    for (auto [g, p] : std::vector<std::pair<int, int>>{{1, 1}, {0, 5}, {1, 2}}) {
        IdealTriangulation T = new_surface(g, p);
        Lamination a(T), b(T);
        do {
            for (int e = 0; e < T.num_edges(); ++e) a.w[e] = int(rng() % 4);
        } while (!valid_lamination(T, a));
        do {
            for (int e = 0; e < T.num_edges(); ++e) b.w[e] = int(rng() % 4);
        } while (!valid_lamination(T, b));
        Int before = intersection_number(T, a, b);
        CHECK(before == intersection_number(T, b, a));
        for (int round = 0; round < 12; ++round) {
            int e = int(rng() % T.num_edges());
            if (!flippable(T, e)) continue;
            flip_edge(T, e, {&a, &b});
            INFO("g=" << g << " p=" << p << " round=" << round);
            CHECK(intersection_number(T, a, b) == before);
        }
    }
}

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "isofill/surface/mapping.hpp"
#include "isofill/surface/walks.hpp"

using namespace isofill;

namespace {

/// The boundary curve of a neighbourhood of edge e, when it is a single
/// essential curve; throws otherwise.
Lamination edge_link_curve(const IdealTriangulation& T, int e) {
    for (const ClosedWalk& w : edge_neighborhood_walks(T, e)) {
        ClosedWalk r = reduce_closed_walk(T, w);
        if (classify_closed_walk(T, r).kind != WalkClass::essential) continue;
        return walk_lamination(T, r);
    }
    throw std::runtime_error("edge_link_curve: no essential boundary circuit");
}

}  // namespace

TEST_CASE("components split laminations into connected pieces") {
    IdealTriangulation T = new_surface(1, 1);
    Lamination z(T);
    CHECK(components(T, z).empty());

    Lamination a(T);
    a.w = {2, 2, 0};  // two parallel copies of the (1,1,0) curve
    auto cs = components(T, a);
    REQUIRE(cs.size() == 2);
    CHECK(cs[0] == cs[1]);
    CHECK(weight_sum(cs[0], cs[1]) == a);

    Lamination arcs(T);
    arcs.w = {-3, 0, 0};
    auto as = components(T, arcs);
    REQUIRE(as.size() == 3);
    for (const auto& c : as) CHECK(c.w[0] == -1);
}

TEST_CASE("essentiality distinguishes puncture-parallel curves") {
    IdealTriangulation T = new_surface(0, 5);
    Lamination z(T);
    CHECK_FALSE(is_essential(T, z));
    // A puncture link bounds a once-punctured disc.
    CHECK_FALSE(is_essential(T, puncture_link(T, 0)));
    // An edge is an essential arc.
    Lamination arc(T);
    arc.w[0] = -1;
    CHECK(is_essential(T, arc));

    IdealTriangulation T11 = new_surface(1, 1);
    Lamination a(T11);
    a.w = {1, 1, 0};
    CHECK(is_essential(T11, a));
}

TEST_CASE("edge neighbourhood boundaries are curves missing the edge") {
    for (auto [g, p] : std::vector<std::pair<int, int>>{{0, 4}, {0, 6}, {1, 2}}) {
        IdealTriangulation T = new_surface(g, p);
        for (int e = 0; e < T.num_edges(); ++e) {
            auto walks = edge_neighborhood_walks(T, e);
            auto [u, v] = T.edge_endpoints(e);
            REQUIRE(walks.size() == (u == v ? 2u : 1u));
            Lamination arc(T);
            arc.w[e] = -1;
            for (const ClosedWalk& w : walks) {
                ClosedWalk r = reduce_closed_walk(T, w);
                auto cls = classify_closed_walk(T, r);
                if (cls.kind == WalkClass::trivial) continue;
                Lamination L = walk_lamination(T, r);
                CHECK(L.transverse(e) == 0);
                CHECK(misses(T, L, arc));
                CHECK(misses(T, L, puncture_link(T, u)));
                CHECK(misses(T, L, puncture_link(T, v)));
            }
        }
    }
}

TEST_CASE("walk classification matches intersection-based essentiality") {
    // Reduced boundary circuits, converted to laminations, agree with
    // is_essential on the traced curve.
    IdealTriangulation T = new_surface(0, 6);
    for (int e = 0; e < T.num_edges(); ++e) {
        for (const ClosedWalk& w : edge_neighborhood_walks(T, e)) {
            ClosedWalk r = reduce_closed_walk(T, w);
            auto cls = classify_closed_walk(T, r);
            if (cls.kind == WalkClass::trivial) continue;
            Lamination L = walk_lamination(T, r);
            CHECK(is_essential(T, L) == (cls.kind == WalkClass::essential));
        }
    }
}

TEST_CASE("dehn twists satisfy the defining identities on the torus") {
    IdealTriangulation T = new_surface(1, 1);
    Lamination a(T), b(T);
    a.w = {1, 0, 1};
    b.w = {1, 1, 0};
    REQUIRE(intersection_number(T, a, b) == 1);

    MappingClass tb0 = dehn_twist(T, b, 0);
    CHECK(apply(tb0, a) == a);

    MappingClass tb = dehn_twist(T, b, 1);
    CHECK(apply(tb, b) == b);

    for (long n = 1; n <= 4; ++n) {
        MappingClass tbn = dehn_twist(T, b, n);
        Lamination an = apply(tbn, a);
        CHECK(intersection_number(T, an, a) == Int(n));
        // powers compose additively
        Lamination it = a;
        for (long i = 0; i < n; ++i) it = apply(tb, it);
        CHECK(it == an);
        // negative power is the inverse action
        MappingClass tbm = dehn_twist(T, b, -n);
        CHECK(apply(tbm, an) == a);
        CHECK(intersection_number(T, apply(tbm, a), a) == Int(n));
    }
}

TEST_CASE("dehn twists satisfy the intersection identity on the five-punctured sphere") {
    IdealTriangulation T = new_surface(0, 5);
    // Find a cutting pair among edge-neighbourhood curves.
    Lamination a(T), b(T);
    Int iab = 0;
    for (int e = 0; e < T.num_edges() && iab == 0; ++e) {
        for (int f = e + 1; f < T.num_edges() && iab == 0; ++f) {
            try {
                Lamination x = edge_link_curve(T, e), y = edge_link_curve(T, f);
                Int i = intersection_number(T, x, y);
                if (i > 0) {
                    a = x;
                    b = y;
                    iab = i;
                }
            } catch (const std::runtime_error&) {
            }
        }
    }
    REQUIRE(iab > 0);

    MappingClass tb = dehn_twist(T, b, 1);
    CHECK(apply(tb, b) == b);
    for (long n = 1; n <= 4; ++n) {
        Lamination an = apply(dehn_twist(T, b, n), a);
        CHECK(intersection_number(T, an, a) == Int(n) * iab * iab);
    }
    // And with the roles reversed.
    MappingClass ta = dehn_twist(T, a, 1);
    CHECK(apply(ta, a) == a);
    Lamination bn = apply(dehn_twist(T, a, 3), b);
    CHECK(intersection_number(T, bn, b) == 3 * iab * iab);
}

TEST_CASE("a twist word composed with its formal inverse is the identity") {
    IdealTriangulation T = new_surface(1, 2);
    Lamination b = edge_link_curve(T, 0);
    MappingClass tb = dehn_twist(T, b, 2);
    MappingClass loop = compose(tb, inverse(tb));
    std::mt19937 rng(4242);
    for (int round = 0; round < 10; ++round) {
        // random multicurve from random nonneg weights, repaired by tracing
        Lamination L(T);
        std::uniform_int_distribution<int> d(0, 3);
        for (auto& w : L.w) w = d(rng);
        if (!valid_lamination(T, L)) continue;
        CHECK(apply(loop, L) == L);
        CHECK(apply(inverse(tb), apply(tb, L)) == L);
    }
}

#include "isofill/surface/boundary.hpp"

namespace {

/// All valid multicurves with weights in [0, wmax] on T, nonzero.
std::vector<Lamination> small_multicurves(const IdealTriangulation& T, int wmax) {
    std::vector<Lamination> out;
    int E = T.num_edges();
    std::vector<int> w(E, 0);
    while (true) {
        int i = 0;
        while (i < E && w[i] == wmax) w[i++] = 0;
        if (i == E) break;
        ++w[i];
        Lamination L(T);
        for (int e = 0; e < E; ++e) L.w[e] = w[e];
        if (valid_lamination(T, L)) out.push_back(L);
    }
    return out;
}

}  // namespace

TEST_CASE("curves meeting once on the torus fill it") {
    IdealTriangulation T = new_surface(1, 1);
    Lamination a(T), b(T);
    a.w = {1, 0, 1};
    b.w = {1, 1, 0};
    CHECK(fills(T, a, b));
    CHECK(boundary_neighborhood(T, a, b).is_zero());
}

TEST_CASE("the neighbourhood boundary of two parallel curves is the curve itself") {
    IdealTriangulation T = new_surface(0, 6);
    Lamination c = edge_link_curve(T, 0);
    Lamination bd = boundary_neighborhood(T, c, c);
    CHECK(bd == c);
}

TEST_CASE("neighbourhood boundaries miss both inputs") {
    std::mt19937 rng(20240826);
    for (auto [g, p] : std::vector<std::pair<int, int>>{{0, 5}, {0, 6}, {1, 2}}) {
        IdealTriangulation T = new_surface(g, p);
        std::vector<Lamination> seeds;
        for (int e = 0; e < T.num_edges(); ++e) {
            try {
                seeds.push_back(edge_link_curve(T, e));
            } catch (const std::runtime_error&) {
            }
        }
        REQUIRE(seeds.size() >= 2);
        std::uniform_int_distribution<size_t> pick(0, seeds.size() - 1);
        std::uniform_int_distribution<int> pow(-2, 2);
        for (int round = 0; round < 12; ++round) {
            Lamination c1 = seeds[pick(rng)];
            Lamination c2 = seeds[pick(rng)];
            Lamination tw = seeds[pick(rng)];
            int k = pow(rng);
            if (k != 0) {
                try {
                    c2 = apply(dehn_twist(T, tw, k), c2);
                } catch (const std::runtime_error&) {
                    continue;  // twist curve not reducible to annulus position
                }
            }
            Lamination bd = boundary_neighborhood(T, c1, c2);
            if (bd.is_zero()) continue;
            CHECK(is_essential(T, bd));
            CHECK(misses(T, bd, c1));
            CHECK(misses(T, bd, c2));
        }
    }
}

TEST_CASE("fills agrees with exhaustive low-weight search for a common miss") {
    for (auto [g, p] : std::vector<std::pair<int, int>>{{1, 1}, {0, 4}}) {
        IdealTriangulation T = new_surface(g, p);
        auto all = small_multicurves(T, 2);
        std::vector<Lamination> curves;
        for (const auto& L : all)
            if (is_essential(T, L)) curves.push_back(L);
        REQUIRE(!curves.empty());
        int checked = 0;
        for (size_t i = 0; i < curves.size() && checked < 12; i += 3) {
            for (size_t j = i + 1; j < curves.size() && checked < 12; j += 4) {
                const Lamination &c1 = curves[i], &c2 = curves[j];
                if (misses(T, c1, c2)) continue;
                bool common_miss = false;
                for (const auto& x : curves)
                    if (misses(T, x, c1) && misses(T, x, c2)) {
                        common_miss = true;
                        break;
                    }
                CHECK(fills(T, c1, c2) == !common_miss);
                ++checked;
            }
        }
        REQUIRE(checked > 0);
    }
}

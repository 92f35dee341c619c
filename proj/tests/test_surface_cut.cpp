#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "isofill/surface/boundary.hpp"
#include "isofill/surface/cut.hpp"
#include "isofill/surface/mapping.hpp"

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

/// (genus, original punctures, boundary punctures) of a piece.
std::array<int, 3> signature(const Subsurface& s) {
    return {s.piece.genus, s.original_punctures(), s.boundaries()};
}

}  // namespace

TEST_CASE("cutting along a curve around two punctures splits off a three-holed sphere") {
    IdealTriangulation T = new_surface(0, 6);
    Lamination c = edge_link_curve(T, 0);
    CutComplex cc = cut(T, c);
    REQUIRE(cc.pieces.size() == 2);
    std::vector<std::array<int, 3>> sig{signature(cc.pieces[0]), signature(cc.pieces[1])};
    std::sort(sig.begin(), sig.end());
    CHECK(sig[0] == std::array<int, 3>{0, 2, 1});
    CHECK(sig[1] == std::array<int, 3>{0, 4, 1});
}

TEST_CASE("cutting along a curve around three punctures gives two symmetric pieces") {
    IdealTriangulation T = new_surface(0, 6);
    bool found = false;
    for (int e = 0; e < T.num_edges() && !found; ++e)
        for (int f = e + 1; f < T.num_edges() && !found; ++f) {
            Lamination c1(T), c2(T);
            try {
                c1 = edge_link_curve(T, e);
                c2 = edge_link_curve(T, f);
            } catch (const std::runtime_error&) {
                continue;
            }
            if (intersection_number(T, c1, c2) != 2) continue;
            // The neighbourhood of the union is a three-holed sphere with the
            // three punctures inside; its one essential boundary circle
            // surrounds all three.
            Lamination bd = boundary_neighborhood(T, c1, c2);
            if (bd.is_zero() || components(T, bd).size() != 1) continue;
            CutComplex cc = cut(T, bd);
            if (cc.pieces.size() != 2) continue;
            if (signature(cc.pieces[0]) == std::array<int, 3>{0, 3, 1} &&
                signature(cc.pieces[1]) == std::array<int, 3>{0, 3, 1})
                found = true;
        }
    CHECK(found);
}

TEST_CASE("a nonseparating curve cuts a twice-punctured torus into one planar piece") {
    IdealTriangulation T = new_surface(1, 2);
    bool found = false;
    for (const Lamination& c : small_multicurves(T, 2)) {
        if (!is_essential(T, c) || components(T, c).size() != 1) continue;
        CutComplex cc = cut(T, c);
        if (cc.pieces.size() != 1) continue;
        CHECK(signature(cc.pieces[0]) == std::array<int, 3>{0, 2, 2});
        found = true;
        break;
    }
    CHECK(found);
}

TEST_CASE("cutting preserves the Euler characteristic") {
    for (auto [g, p] : std::vector<std::pair<int, int>>{{0, 5}, {0, 6}, {1, 2}}) {
        IdealTriangulation T = new_surface(g, p);
        int chi = 2 - 2 * g - p;
        int tested = 0;
        for (const Lamination& c : small_multicurves(T, 1)) {
            if (!is_essential(T, c)) continue;
            if (++tested > 25) break;
            CutComplex cc = cut(T, c);
            int sum = 0, bounds = 0, tris = 0;
            for (const Subsurface& s : cc.pieces) {
                sum += 2 - 2 * s.piece.genus - s.piece.punctures;
                bounds += s.boundaries();
                tris += s.piece.num_triangles();
            }
            CHECK(sum == chi);
            CHECK(tris == T.num_triangles());
            // Two boundary circles per cutting component, after removing
            // parallel copies.
            std::size_t comps = 0;
            for (const Strand& s : cc.curve_strands)
                if (s.parallel_edge < 0) ++comps;
            CHECK(bounds == static_cast<int>(2 * comps));
        }
        CHECK(tested > 0);
    }
}

TEST_CASE("transfer carries disjoint laminations into the pieces") {
    IdealTriangulation T = new_surface(0, 6);
    int tested = 0, arc_checked = 0;
    for (const Lamination& m : small_multicurves(T, 2)) {
        auto comps = components(T, m);
        if (comps.size() < 2) continue;
        std::size_t ci = comps.size();
        for (std::size_t i = 0; i < comps.size(); ++i)
            if (is_essential(T, comps[i])) {
                ci = i;
                break;
            }
        if (ci == comps.size()) continue;
        const Lamination& c = comps[ci];
        Lamination rest(T);
        for (std::size_t i = 0; i < comps.size(); ++i)
            if (i != ci) rest = weight_sum(rest, comps[i]);
        CutComplex cc = cut(T, c);
        std::vector<Lamination> tr;
        try {
            tr = transfer(cc, rest);
        } catch (const std::invalid_argument&) {
            continue;  // a component is parallel to the cutting curve
        }
        if (++tested > 40) break;
        std::size_t moved = 0;
        for (std::size_t i = 0; i < tr.size(); ++i) {
            CHECK(valid_lamination(cc.pieces[i].piece, tr[i]));
            moved += components(cc.pieces[i].piece, tr[i]).size();
        }
        CHECK(moved == comps.size() - 1);

        // An arc on an uncut edge crosses `rest` the same number of times
        // before and after the cut.
        for (int e = 0; e < T.num_edges(); ++e) {
            if (cc.curve.transverse(e) != 0 || rest.transverse(e) == 0) continue;
            Lamination arc(T);
            arc.w[e] = -1;
            auto ta = transfer(cc, arc);
            Int before = intersection_number(T, arc, rest), after = 0;
            for (std::size_t i = 0; i < ta.size(); ++i)
                after += intersection_number(cc.pieces[i].piece, ta[i], tr[i]);
            CHECK(before == after);
            if (before > 0) ++arc_checked;
            break;
        }
    }
    CHECK(tested >= 10);
    CHECK(arc_checked > 0);
}

TEST_CASE("kappa counts the arcs a crossing curve leaves in the pieces") {
    IdealTriangulation T = new_surface(0, 6);
    bool found = false;
    for (int e = 0; e < T.num_edges() && !found; ++e)
        for (int f = 0; f < T.num_edges() && !found; ++f) {
            if (e == f) continue;
            Lamination c1(T), c2(T);
            try {
                c1 = edge_link_curve(T, e);
                c2 = edge_link_curve(T, f);
            } catch (const std::runtime_error&) {
                continue;
            }
            if (intersection_number(T, c1, c2) != 2) continue;
            found = true;
            CutComplex cc = cut(T, c1);
            ArcSystem k = kappa(cc, c2);
            // Two crossings cut the curve into two arcs, four endpoints in
            // all, one arc on each side of the cutting curve.
            REQUIRE(k.arcs.size() == 2);
            CHECK(k.arcs[0].piece != k.arcs[1].piece);
            CHECK(kappa(cc, weight_sum(c2, c2)) == k);
        }
    CHECK(found);
}

TEST_CASE("kappa ignores parallel copies and splits over disjoint unions") {
    std::mt19937 rng(20260826);
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
        std::uniform_int_distribution<std::size_t> pick(0, seeds.size() - 1);
        std::uniform_int_distribution<int> pow(-2, 2);
        int done = 0;
        for (int round = 0; round < 40 && done < 8; ++round) {
            Lamination c = seeds[pick(rng)];
            Lamination l = seeds[pick(rng)];
            int k = pow(rng);
            if (k != 0) {
                try {
                    l = apply(dehn_twist(T, seeds[pick(rng)], k), l);
                } catch (const std::runtime_error&) {
                    continue;  // twist curve not reducible to annulus position
                }
            }
            CutComplex cc = cut(T, c);
            ArcSystem k1;
            try {
                k1 = kappa(cc, l);
            } catch (const std::invalid_argument&) {
                continue;  // a component of l misses c
            }
            CHECK(!k1.arcs.empty());
            CHECK(kappa(cc, weight_sum(l, l)) == k1);
            ++done;
        }
        CHECK(done > 0);
    }
}

TEST_CASE("cut and its projections reject malformed inputs") {
    IdealTriangulation T = new_surface(0, 5);
    Lamination zero(T);
    CHECK_THROWS_AS(cut(T, zero), std::invalid_argument);
    CHECK_THROWS_AS(cut(T, puncture_link(T, 0)), std::invalid_argument);
    Lamination arc(T);
    arc.w[0] = -1;
    CHECK_THROWS_AS(cut(T, arc), std::invalid_argument);

    Lamination c = edge_link_curve(T, 0);
    CutComplex cc = cut(T, c);
    // The curve itself is parallel to the cutting curve: no preferred side.
    CHECK_THROWS_AS(transfer(cc, c), std::invalid_argument);
    for (int e = 0; e < T.num_edges(); ++e) {
        Lamination d(T);
        try {
            d = edge_link_curve(T, e);
        } catch (const std::runtime_error&) {
            continue;
        }
        if (intersection_number(T, c, d) > 0) {
            CHECK_THROWS_AS(transfer(cc, d), std::invalid_argument);
            break;
        }
    }
    // kappa wants every component to cut the reference multicurve.
    CHECK_THROWS_AS(kappa(cc, c), std::invalid_argument);
}

#pragma once

#include <array>
#include <stdexcept>
#include <utility>
#include <vector>

#include "isofill/core/disc.hpp"
#include "isofill/tighten/loop.hpp"

namespace isofill {

/// Cap a 4-loop of curve systems with a disc of exactly 2 or 4 triangles.
/// When a diagonal pair is disjoint or equal the square splits along it;
/// otherwise the square is coned from a component γ of the neighbourhood
/// boundary of (c_0, c_2), which both remaining vertices miss because they
/// miss c_0 ∪ c_2. Local boundary vertices are 0..3 in loop order; the cone
/// vertex, when present, is 4.
inline std::pair<TriangulatedDisc, SimplicialFillingMap> cap_square(const LaminationComplex& K,
                                                                    const CombLoop& square) {
    const IdealTriangulation& T = K.surface();
    if (3 * T.genus - 3 + T.punctures < 2)
        throw std::invalid_argument("cap_square: surface complexity must be at least 2");
    if (square.length() != 4 || !validate_loop(square, K))
        throw std::invalid_argument("cap_square: input is not a 4-loop");

    TriangulatedDisc disc;
    disc.boundary = {0, 1, 2, 3};
    SimplicialFillingMap f;
    for (int i = 0; i < 4; ++i) f.assignment[i] = square.at(std::size_t(i));

    auto close_diagonal = [&](int i) {  // diagonal {i, i+2}
        disc.triangles = {{i, (i + 1) % 4, (i + 2) % 4}, {i, (i + 2) % 4, (i + 3) % 4}};
        // The triangles share only the diagonal: side 2 of the first, side 0
        // of the second. Boundary sides stay unpaired.
        disc.gluings = {{SideRef{0, 2}, SideRef{1, 0}}};
    };
    auto diag_ok = [&](int i) {
        VertexId u = square.at(std::size_t(i)), v = square.at(std::size_t(i + 2));
        return u == v || K.are_adjacent(u, v);
    };

    if (diag_ok(0)) {
        close_diagonal(0);
        return {std::move(disc), std::move(f)};
    }
    if (diag_ok(1)) {
        close_diagonal(1);
        return {std::move(disc), std::move(f)};
    }

    Lamination B = boundary_neighborhood(T, K.lamination(square.at(0)), K.lamination(square.at(2)));
    if (B.is_zero())
        throw std::logic_error("cap_square: neighbourhood boundary of a non-filling pair vanished");
    Lamination g = detail::ordered_components(T, B).front();
    VertexId cone = K.vertex(g);
    for (int i = 0; i < 4; ++i) {
        VertexId v = square.at(std::size_t(i));
        if (v != cone && !K.are_adjacent(v, cone))
            throw std::logic_error("cap_square: cone curve crosses a square vertex");
    }
    f.assignment[4] = cone;
    disc.triangles = {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}};
    for (int t = 0; t < 4; ++t)
        disc.gluings.push_back({SideRef{t, 1}, SideRef{(t + 1) % 4, 2}});
    return {std::move(disc), std::move(f)};
}

/// A loop in the arc-and-curve complex pushed into the curve complex.
struct PushedLoop {
    std::vector<Lamination> curves;
    HomotopyAnnulus annulus;
};

namespace detail {

/// The essential peripheral curves of the complement of the arc carried by
/// edge e: the essential circuits of a regular neighbourhood of e and its
/// endpoint punctures, in lexicographic weight order.
inline std::vector<Lamination> arc_peripheral_curves(const IdealTriangulation& T, int e) {
    std::vector<Lamination> out;
    for (const ClosedWalk& w : edge_neighborhood_walks(T, e)) {
        ClosedWalk r = reduce_closed_walk(T, w);
        if (classify_closed_walk(T, r).kind != WalkClass::essential) continue;
        out.push_back(walk_lamination(T, r));
    }
    std::sort(out.begin(), out.end(),
              [](const Lamination& a, const Lamination& b) { return a.w < b.w; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace detail

/// Replace every arc vertex of a loop in the arc-and-curve complex by an
/// essential peripheral curve of its complement (lowest weight vector). A
/// curve disjoint from the arc misses a small neighbourhood of it, hence its
/// boundary, so each replacement keeps the loop valid; the annulus records
/// two triangles per replaced vertex (≤ 2n ≤ 3n in total).
///
/// Vertices must be multicurves or single arcs; composite arc systems are
/// outside this encoding's reach and rejected.
inline PushedLoop push_to_curve_complex(const IdealTriangulation& T,
                                        const std::vector<Lamination>& loop) {
    const long n = long(loop.size());
    if (n < 3) throw std::invalid_argument("push_to_curve_complex: loop too short");
    for (long i = 0; i < n; ++i) {
        const Lamination& v = loop[std::size_t(i)];
        if (!valid_lamination(T, v) || !is_essential(T, v) ||
            !misses(T, v, loop[std::size_t((i + 1) % n)]))
            throw std::invalid_argument("push_to_curve_complex: invalid loop at index " +
                                        std::to_string(i));
    }

    PushedLoop out{loop, {}};
    for (long i = 0; i < n; ++i) {
        Lamination& v = out.curves[std::size_t(i)];
        if (v.is_multicurve_shape()) continue;
        int arc_edge = -1;
        for (int e = 0; e < T.num_edges(); ++e) {
            if (v.w[e] >= 0) continue;
            if (arc_edge >= 0 || v.w[e] != -1)
                throw CapabilityError(
                    "push_to_curve_complex: vertex " + std::to_string(i) +
                    " is a composite arc system; only single-arc vertices are supported");
            arc_edge = e;
        }
        for (int e = 0; e < T.num_edges(); ++e)
            if (e != arc_edge && v.w[e] != 0)
                throw CapabilityError("push_to_curve_complex: vertex " + std::to_string(i) +
                                      " mixes an arc with other components");

        std::vector<Lamination> per = detail::arc_peripheral_curves(T, arc_edge);
        if (per.empty())
            throw std::logic_error("push_to_curve_complex: arc at index " + std::to_string(i) +
                                   " has no essential peripheral curve");
        const Lamination &L = out.curves[std::size_t((i + n - 1) % n)],
                         &R = out.curves[std::size_t((i + 1) % n)];
        Lamination c = per.front();
        if (!misses(T, c, L) || !misses(T, c, R))
            throw std::logic_error("push_to_curve_complex: replacement crosses a neighbor at "
                                   "index " + std::to_string(i));
        out.annulus.triangles.push_back({L, v, c});
        out.annulus.triangles.push_back({v, c, R});
        v = std::move(c);
    }
    return out;
}

}  // namespace isofill

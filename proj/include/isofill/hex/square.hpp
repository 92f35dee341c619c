#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "isofill/surface/boundary.hpp"
#include "isofill/surface/complex.hpp"
#include "isofill/surface/cut.hpp"
#include "isofill/surface/mapping.hpp"

namespace isofill {

/// A length-4 loop in the arc complex split by a separating curve: arcs
/// arcs[0], arcs[2] live in the piece Y, arcs[1], arcs[3] in the piece Z,
/// with arcs[2] = twist_Y^k(arcs[0]) and arcs[3] = twist_Z^k(arcs[1]).
/// Consecutive arcs are disjoint because they live on opposite sides.
struct SquareLoopSpec {
    IdealTriangulation T;
    Lamination gamma;  // essential separating curve, punctures on both sides
    CutComplex cutc;   // cut along gamma: exactly two pieces
    int piece_Y = -1, piece_Z = -1;
    std::array<Lamination, 4> arcs;  // aY1, aZ1, aY2, aZ2 in loop order
    MappingClass twist_Y, twist_Z;   // the k-th twist powers applied
};

/// Certified lower bound for the arc-and-curve graph distance of two
/// essential systems on the surface Y: 0 when they are equal or disjoint,
/// 1 when they cross without filling, 3 when they fill. Crossing systems
/// with arc components cannot coexist on one triangulation (arcs are
/// carried by edges, and edges are disjoint), so the crossing branches only
/// ever see multicurves.
inline int distance_lower_bound(const IdealTriangulation& Y, const Lamination& a,
                                const Lamination& b) {
    if (!is_essential(Y, a) || !is_essential(Y, b))
        throw std::invalid_argument("distance_lower_bound: inputs must be essential");
    if (a == b || misses(Y, a, b)) return 0;
    if (!a.is_multicurve_shape() || !b.is_multicurve_shape())
        throw CapabilityError(
            "distance_lower_bound: crossing arc systems are not representable on a fixed "
            "triangulation");
    return fills(Y, a, b) ? 3 : 1;
}

namespace detail {

/// Piece holding an uncrossed parent edge (both of its triangles sit in one
/// piece, since a crossed edge would meet the curve).
inline int edge_piece(const CutComplex& cc, int e) {
    return cc.piece_of[IdealTriangulation::tri(cc.parent.edge_slots[e].first)];
}

/// Whether the multicurve y lies in `piece` and is essential there (so in
/// particular not parallel to the cutting curve, which transfer rejects).
inline bool lies_in_piece(const CutComplex& cc, const Lamination& y, int piece) {
    if (intersection_number(cc.parent, cc.curve, y) != 0) return false;
    std::vector<Lamination> tr;
    try {
        tr = transfer(cc, y);
    } catch (const std::invalid_argument&) {
        return false;  // a component parallel to the cutting curve
    }
    for (std::size_t p = 0; p < tr.size(); ++p) {
        if (int(p) == piece) {
            if (tr[p].is_zero() || !is_essential(cc.pieces[p].piece, tr[p])) return false;
        } else if (!tr[p].is_zero()) {
            return false;
        }
    }
    return true;
}

}  // namespace detail

/// Build the square loop on S_{g,p}: find the first separating curve (in
/// window order) whose two pieces both carry a puncture, an eligible arc,
/// and complexity ξ ≥ 1; then twist each side's arc by the k-th power of a
/// twist along an essential curve of that side.
///
/// The twist curve is chosen disjoint from the side's arc: the image of an
/// arc crossing the twist curve would cross the original arc, and two
/// crossing arcs cannot both be carried by edges of one triangulation. The
/// resulting squares are therefore degenerate (arcs[2] = arcs[0] as isotopy
/// classes) for every k; the twist word is still applied and recorded.
inline SquareLoopSpec build_square_loop(int g, int p, long k) {
    bool ok = (g >= 2 && p >= 2) || (g == 1 && p >= 4) || (g == 0 && p >= 6);
    if (!ok)
        throw std::invalid_argument("build_square_loop: need g>=2,p>=2 or g=1,p>=4 or g=0,p>=6");
    if (k < 0) throw std::invalid_argument("build_square_loop: twist power must be >= 0");

    SquareLoopSpec spec;
    spec.T = new_surface(g, p);
    const IdealTriangulation& T = spec.T;

    std::vector<Lamination> window;
    for (Int wmax = 1; wmax <= 3; ++wmax) {
        window = curve_window(T, wmax);
        for (const Lamination& c : window) {
            CutComplex cc;
            try {
                cc = cut(T, c);
            } catch (const std::invalid_argument&) {
                continue;
            }
            if (cc.pieces.size() != 2) continue;
            bool good = true;
            std::array<int, 2> arc_edge{-1, -1};
            for (int s = 0; s < 2 && good; ++s) {
                const Subsurface& sub = cc.pieces[std::size_t(s)];
                if (sub.original_punctures() < 1) good = false;
                if (3 * sub.piece.genus - 3 + sub.piece.punctures < 1) good = false;
                for (int e = 0; e < T.num_edges() && arc_edge[std::size_t(s)] < 0; ++e)
                    if (c.transverse(e) == 0 && detail::edge_piece(cc, e) == s)
                        arc_edge[std::size_t(s)] = e;
                if (arc_edge[std::size_t(s)] < 0) good = false;
            }
            if (!good) continue;

            // Twist each side; a side can fail when no disjoint essential
            // curve survives in the window, in which case try the next γ.
            spec.gamma = c;
            spec.cutc = cc;
            spec.piece_Y = 0;
            spec.piece_Z = 1;
            std::array<Lamination, 2> a1, a2;
            std::array<MappingClass, 2> tw;
            bool twisted = true;
            for (int s = 0; s < 2 && twisted; ++s) {
                a1[std::size_t(s)] = Lamination(T);
                a1[std::size_t(s)].w[arc_edge[std::size_t(s)]] = -1;
                twisted = false;
                for (const Lamination& y : window) {
                    if (!detail::lies_in_piece(cc, y, s)) continue;
                    if (intersection_number(T, y, a1[std::size_t(s)]) != 0) continue;
                    try {
                        tw[std::size_t(s)] = dehn_twist(T, y, k);
                        a2[std::size_t(s)] = apply(tw[std::size_t(s)], a1[std::size_t(s)]);
                    } catch (const std::exception&) {
                        continue;
                    }
                    twisted = true;
                    break;
                }
            }
            if (!twisted) continue;

            spec.arcs = {a1[0], a1[1], a2[0], a2[1]};
            spec.twist_Y = tw[0];
            spec.twist_Z = tw[1];
            for (int i = 0; i < 4; ++i)
                if (intersection_number(T, spec.arcs[std::size_t(i)],
                                        spec.arcs[std::size_t((i + 1) % 4)]) != 0)
                    throw std::logic_error("build_square_loop: square adjacency failed");
            return spec;
        }
    }
    throw std::logic_error("build_square_loop: no separating curve found in window (weights <= 3)");
}

}  // namespace isofill

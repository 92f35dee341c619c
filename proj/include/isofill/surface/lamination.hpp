#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isofill/surface/triangulation.hpp"

namespace isofill {

/// Strand structure of a lamination inside one triangle.
///   corner[s]: arcs cutting corner s, i.e. joining sides s-1 and s;
///   across[s]: transverse strand count on side s = corner[s] + corner[s+1].
struct TriangleShape {
    Int corner[3];
    Int across[3];
};

/// Integer-weighted lamination on an ideal triangulation: a disjoint union of
/// essential simple closed curves and ideal arcs.
///
/// Encoding: w[e] >= 0 is the transverse intersection count with edge e;
/// w[e] < 0 means |w[e]| parallel copies of the arc isotopic to e (and then
/// nothing crosses e, which the corner counts enforce). Every transverse
/// strand is closed; arc components only ever appear carried by edges, and
/// an arc in general position is represented by first flipping it onto an
/// edge.
struct Lamination {
    std::vector<Int> w;  // one per edge

    Lamination() = default;
    explicit Lamination(const IdealTriangulation& T) : w(T.num_edges(), 0) {}

    bool is_zero() const {
        for (const Int& x : w)
            if (x != 0) return false;
        return true;
    }

    bool is_multicurve_shape() const {  // no arc components
        for (const Int& x : w)
            if (x < 0) return false;
        return true;
    }

    Int transverse(int e) const { return w[e] < 0 ? Int(0) : w[e]; }

    bool operator==(const Lamination&) const = default;
};

/// Solve the strand structure of `L` in triangle t; nullopt if inconsistent.
inline std::optional<TriangleShape> triangle_shape(const IdealTriangulation& T,
                                                   const Lamination& L, int t) {
    TriangleShape sh;
    for (int s = 0; s < 3; ++s)
        sh.across[s] = L.transverse(T.edge_of[IdealTriangulation::slot(t, s)]);
    // corner[s] + corner[s+1] = across[s]
    Int twice0 = sh.across[0] - sh.across[1] + sh.across[2];
    if (twice0 < 0 || twice0 % 2 != 0) return std::nullopt;
    sh.corner[0] = twice0 / 2;
    sh.corner[1] = sh.across[0] - sh.corner[0];
    sh.corner[2] = sh.across[2] - sh.corner[0];
    if (sh.corner[1] < 0 || sh.corner[2] < 0) return std::nullopt;
    return sh;
}

/// Structural validity: consistent strand structure in every triangle. Edges
/// carrying parallel arcs are automatically uncrossed, because their
/// transverse count 0 forces both adjacent corner counts to 0. Essentiality
/// of components is a separate, deeper check.
inline bool valid_lamination(const IdealTriangulation& T, const Lamination& L,
                             std::string* why = nullptr) {
    if (static_cast<int>(L.w.size()) != T.num_edges()) {
        if (why) *why = "size mismatch with triangulation";
        return false;
    }
    for (int t = 0; t < T.num_triangles(); ++t) {
        if (!triangle_shape(T, L, t)) {
            if (why) *why = "inconsistent strand structure in triangle " + std::to_string(t);
            return false;
        }
    }
    return true;
}

/// Disjoint union of weight data. Only meaningful when the two systems are
/// known to admit disjoint representatives; callers are responsible.
inline Lamination weight_sum(const Lamination& a, const Lamination& b) {
    Lamination out = a;
    for (std::size_t i = 0; i < out.w.size(); ++i) out.w[i] += b.w[i];
    return out;
}

/// The peripheral curve around puncture v: one corner arc at every corner
/// visit around v. Consecutive corner arcs share their crossing of the
/// connecting edge, so each visit contributes one crossing: the side it
/// crosses on the way to the next corner.
inline Lamination puncture_link(const IdealTriangulation& T, int v) {
    Lamination L(T);
    for (int c : T.vertex_link(v)) {
        int t = IdealTriangulation::tri(c), s = IdealTriangulation::side(c);
        L.w[T.edge_of[IdealTriangulation::slot(t, s)]] += 1;
    }
    return L;
}

}  // namespace isofill

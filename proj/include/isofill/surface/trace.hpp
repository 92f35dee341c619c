#pragma once

#include <set>
#include <vector>

#include "isofill/surface/lamination.hpp"

namespace isofill {

/// A point where a strand enters a triangle: it crosses the edge under
/// `slot` at the given 0-based index along that side's direction, heading
/// into tri(slot).
struct Passage {
    int slot;
    Int index;

    auto operator<=>(const Passage&) const = default;
};

namespace detail {

/// Side-index <-> canonical edge position (first-slot direction).
inline Int edge_position(const IdealTriangulation& T, const Lamination& L, int slot, Int i) {
    int e = T.edge_of[slot];
    return T.slot_is_forward(slot) ? i : L.transverse(e) - 1 - i;
}

inline Int side_index(const IdealTriangulation& T, const Lamination& L, int slot, Int pos) {
    int e = T.edge_of[slot];
    return T.slot_is_forward(slot) ? pos : L.transverse(e) - 1 - pos;
}

/// Cross the edge: the same point, seen from the other triangle.
inline Passage cross_edge(const IdealTriangulation& T, const Lamination& L, int slot, Int i) {
    int m = T.glue[slot];
    return {m, side_index(T, L, m, edge_position(T, L, slot, i))};
}

/// Where the strand entering via (slot, i) leaves the triangle: a Passage
/// whose slot is inside the SAME triangle, before crossing its edge.
inline Passage advance_in_triangle(const IdealTriangulation& T, const TriangleShape& sh, int slot,
                                   Int i) {
    int t = IdealTriangulation::tri(slot), s = IdealTriangulation::side(slot);
    // Blocks along side s (from corner s to corner s+1):
    //   [0, corner[s])              corner arcs at corner s
    //   [corner[s], across[s])      corner arcs at corner s+1
    int sn = (s + 1) % 3, sp = (s + 2) % 3;
    if (i < sh.corner[s]) {
        // k-th arc from corner s: exits side s-1 at distance k from corner s,
        // i.e. at index across[s-1]-1-k (side s-1 runs corner s-1 -> corner s).
        Int k = i;
        return {IdealTriangulation::slot(t, sp), sh.across[sp] - 1 - k};
    }
    // k-th arc from corner s+1: exits side s+1 at index k.
    Int k = sh.across[s] - 1 - i;
    return {IdealTriangulation::slot(t, sn), k};
}

inline std::vector<TriangleShape> all_shapes(const IdealTriangulation& T, const Lamination& L) {
    std::vector<TriangleShape> out;
    out.reserve(T.num_triangles());
    for (int t = 0; t < T.num_triangles(); ++t) {
        auto sh = triangle_shape(T, L, t);
        if (!sh) throw std::invalid_argument("lamination is structurally invalid");
        out.push_back(*sh);
    }
    return out;
}

}  // namespace detail

/// One connected component of a lamination, as an explicit strand: a closed
/// transverse curve, or parallel copies of an edge.
struct Strand {
    bool closed = false;
    std::vector<Passage> passages;  // entry points, in traversal order
    int parallel_edge = -1;  // >= 0: the component is |multiplicity| copies of this edge
    Int multiplicity = 1;

    int length() const { return static_cast<int>(passages.size()); }
};

/// Decompose a lamination into explicit strands. Parallel closed copies come
/// out as separate identical strands; edge-parallel arcs as one strand with
/// multiplicity. The union of all strands reproduces the weights exactly.
inline std::vector<Strand> trace_strands(const IdealTriangulation& T, const Lamination& L) {
    auto shapes = detail::all_shapes(T, L);
    std::vector<Strand> out;
    for (int e = 0; e < T.num_edges(); ++e)
        if (L.w[e] < 0) {
            Strand s;
            s.parallel_edge = e;
            s.multiplicity = -L.w[e];
            out.push_back(std::move(s));
        }

    // visited transverse points, keyed by (edge, canonical position)
    std::set<std::pair<int, Int>> seen;
    for (int e = 0; e < T.num_edges(); ++e) {
        for (Int pos = 0; pos < L.transverse(e); ++pos) {
            if (seen.count({e, pos})) continue;
            Strand s;
            s.closed = true;
            Passage p{T.edge_slots[e].first,
                      detail::side_index(T, L, T.edge_slots[e].first, pos)};
            while (!seen.count({T.edge_of[p.slot], detail::edge_position(T, L, p.slot, p.index)})) {
                s.passages.push_back(p);
                seen.insert({T.edge_of[p.slot], detail::edge_position(T, L, p.slot, p.index)});
                Passage ex = detail::advance_in_triangle(
                    T, shapes[IdealTriangulation::tri(p.slot)], p.slot, p.index);
                p = detail::cross_edge(T, L, ex.slot, ex.index);
            }
            out.push_back(std::move(s));
        }
    }
    return out;
}

/// Canonical isotopy key of a strand: slot itinerary minimized over rotation
/// and direction. Two strands on the same triangulation are isotopic iff
/// their keys agree.
inline std::vector<int> strand_key(const IdealTriangulation& T, const Strand& s) {
    if (s.parallel_edge >= 0) return {-1, s.parallel_edge};
    std::vector<int> fwd;
    fwd.reserve(s.passages.size());
    for (const auto& p : s.passages) fwd.push_back(p.slot);
    // reversed itinerary: enters via the slot each forward passage exits into
    std::vector<int> rev;
    for (auto it = s.passages.rbegin(); it != s.passages.rend(); ++it)
        rev.push_back(T.glue[it->slot]);
    auto min_rotation = [](std::vector<int> v) {
        if (v.empty()) return v;
        std::vector<int> best = v;
        for (std::size_t r = 1; r < v.size(); ++r) {
            std::rotate(v.begin(), v.begin() + 1, v.end());
            best = std::min(best, v);
        }
        return best;
    };
    return std::min(min_rotation(fwd), min_rotation(rev));
}

/// Rebuild a lamination from a set of strands. Only valid when the strands
/// are realizable disjointly; used for round-trip checking.
inline Lamination strands_to_lamination(const IdealTriangulation& T,
                                        const std::vector<Strand>& strands) {
    Lamination L(T);
    for (const Strand& s : strands) {
        if (s.parallel_edge >= 0) {
            L.w[s.parallel_edge] -= s.multiplicity;
            continue;
        }
        for (const Passage& p : s.passages) L.w[T.edge_of[p.slot]] += 1;
    }
    return L;
}

}  // namespace isofill

#pragma once

#include <optional>
#include <vector>

#include "isofill/surface/intersection.hpp"
#include "isofill/surface/trace.hpp"

namespace isofill {

/// A closed combinatorial path transverse to the triangulation, recorded as
/// the sequence of slots it enters. Consecutive entries satisfy
/// tri(glue[w[k+1]]) == tri(w[k]): the path leaves the triangle it is in.
using ClosedWalk = std::vector<int>;

/// Cancel backtracks (an edge crossed and immediately re-crossed) until the
/// walk is cyclically reduced. The surface deformation-retracts onto the dual
/// spine of the triangulation, so reduced cyclic crossing words classify free
/// homotopy classes of loops.
inline ClosedWalk reduce_closed_walk(const IdealTriangulation& T, ClosedWalk w) {
    ClosedWalk out;
    out.reserve(w.size());
    for (int s : w) {
        if (!out.empty() && s == T.glue[out.back()])
            out.pop_back();
        else
            out.push_back(s);
    }
    while (out.size() >= 2 && out.front() == T.glue[out.back()]) {
        out.erase(out.begin());
        out.pop_back();
    }
    return out;
}

/// The crossing itinerary of the link of puncture v: one edge crossing per
/// corner visit, in rotation order.
inline ClosedWalk vertex_link_walk(const IdealTriangulation& T, int v) {
    ClosedWalk w;
    for (int c : T.vertex_link(v)) w.push_back(T.glue[c]);
    return w;
}

struct WalkClass {
    enum Kind { trivial, peripheral, essential } kind;
    int vertex = -1;     // the encircled puncture, when peripheral
    int multiplicity = 1;  // walk = primitive class traversed this many times
};

/// Classify the free homotopy class of a closed walk: null-homotopic,
/// parallel to a puncture (bounding a once-punctured disc), or essential.
inline WalkClass classify_closed_walk(const IdealTriangulation& T, const ClosedWalk& walk) {
    ClosedWalk r = reduce_closed_walk(T, walk);
    if (r.empty()) return {WalkClass::trivial, -1, 1};
    std::vector<int> prim = detail::primitive_word(r);
    int mult = static_cast<int>(r.size() / prim.size());
    std::vector<int> canon = detail::closed_canon(T, r);
    for (int v = 0; v < T.punctures; ++v) {
        ClosedWalk lw = reduce_closed_walk(T, vertex_link_walk(T, v));
        if (detail::closed_canon(T, lw) == canon) return {WalkClass::peripheral, v, mult};
    }
    return {WalkClass::essential, -1, mult};
}

/// Normal coordinates of a reduced closed walk: a reduced transversal is
/// already taut against every edge, so crossing counts are its weights.
inline Lamination walk_lamination(const IdealTriangulation& T, const ClosedWalk& reduced) {
    Lamination L(T);
    for (int s : reduced) L.w[T.edge_of[s]] += 1;
    if (!valid_lamination(T, L))
        throw std::logic_error("walk_lamination: walk is not in normal position");
    return L;
}

/// Boundary circuits of a regular neighbourhood of edge e together with its
/// endpoint punctures: one circuit when the endpoints differ, two when e is a
/// loop. Circuits are returned unreduced.
inline std::vector<ClosedWalk> edge_neighborhood_walks(const IdealTriangulation& T, int e) {
    auto [s1, s2] = T.edge_slots[e];
    // Corners whose rotation step crosses e: the start corners of its slots.
    int c1 = IdealTriangulation::slot(IdealTriangulation::tri(s1), IdealTriangulation::side(s1));
    int c2 = IdealTriangulation::slot(IdealTriangulation::tri(s2), IdealTriangulation::side(s2));
    auto slide = [&](int c) {  // move along e inside tri(c), to its far corner
        return IdealTriangulation::slot(IdealTriangulation::tri(c),
                                        IdealTriangulation::side(c) + 1);
    };
    std::vector<ClosedWalk> out;
    std::vector<int> starts = {slide(c1), slide(c2)};
    std::vector<char> used(T.num_slots(), 0);
    for (int start : starts) {
        if (used[start]) continue;
        ClosedWalk w;
        int cur = start;
        do {
            if (cur == c1 || cur == c2) {
                cur = slide(cur);  // turn around the endpoint of e: no crossing
            } else {
                used[cur] = 1;
                w.push_back(T.glue[cur]);
                cur = T.next_corner_about_vertex(cur);
            }
        } while (cur != start);
        out.push_back(std::move(w));
    }
    return out;
}

/// Split a lamination into its connected components, one lamination each.
/// Parallel copies (of a closed strand or of an edge) come out as separate
/// identical components.
inline std::vector<Lamination> components(const IdealTriangulation& T, const Lamination& L) {
    std::vector<Lamination> out;
    for (const Strand& s : trace_strands(T, L)) {
        if (s.parallel_edge >= 0) {
            Lamination one(T);
            one.w[s.parallel_edge] = -1;
            for (Int i = 0; i < s.multiplicity; ++i) out.push_back(one);
            continue;
        }
        out.push_back(strands_to_lamination(T, {s}));
    }
    return out;
}

/// A lamination is essential when it is nonzero and no component bounds a
/// disc or a once-punctured disc. Closed normal strands are never
/// null-homotopic, so only puncture-parallel components disqualify; an edge of
/// an ideal triangulation is always an essential arc.
inline bool is_essential(const IdealTriangulation& T, const Lamination& L) {
    if (L.is_zero()) return false;
    for (const Strand& s : trace_strands(T, L)) {
        if (s.parallel_edge >= 0) continue;
        ClosedWalk w = detail::slot_view(T, s, false);
        if (classify_closed_walk(T, w).kind != WalkClass::essential) return false;
    }
    return true;
}

/// Two laminations miss when they have disjoint representatives.
inline bool misses(const IdealTriangulation& T, const Lamination& A, const Lamination& B) {
    return intersection_number(T, A, B) == 0;
}

inline bool cuts(const IdealTriangulation& T, const Lamination& A, const Lamination& B) {
    return !misses(T, A, B);
}

}  // namespace isofill

#pragma once

#include <array>
#include <vector>

#include "isofill/surface/trace.hpp"

namespace isofill {

inline bool flippable(const IdealTriangulation& T, int e) {
    auto [x, y] = T.edge_slots[e];
    return IdealTriangulation::tri(x) != IdealTriangulation::tri(y);
}

/// Flip edge e in place, transporting the given laminations.
///
/// The square has corners P,Q,R,S read from the slot edge_slots[e].first:
/// that slot runs P -> R with Q the far corner on its own side and S the far
/// corner on the mate's side; sides a = QP, b = RQ, c = SR, d = PS. The new
/// diagonal e' = QS reuses edge id e and, in each of the two triangles,
/// occupies the slot position the old diagonal had. Triangle QRS goes to the
/// lower-indexed triangle and QSP to the higher-indexed one, and the slot
/// pair of e is swapped. This exact layout makes the flip a strict
/// involution: flipping the same edge twice restores every array.
///
/// Lamination transport: the new weight of e counts the strands forced
/// across QS (the two corner counts at Q and S plus the through-strands),
/// which for multicurves is the tropical rule
///     w'(e) = max(w(a)+w(c), w(b)+w(d)) - w(e),
/// evaluated on transverse counts so that arcs parallel to the square's
/// sides pass through unchanged. An edge carrying arc components cannot be
/// flipped while transporting that lamination: its parallel arcs would cross
/// the new diagonal and no weight vector encodes that position.
inline void flip_edge(IdealTriangulation& T, int e, const std::vector<Lamination*>& lams = {}) {
    if (!flippable(T, e)) throw std::invalid_argument("flip: edge has both sides in one triangle");
    const int A = T.edge_slots[e].first, B = T.glue[A];
    const int tm = IdealTriangulation::tri(A), sm = IdealTriangulation::side(A);
    const int tn = IdealTriangulation::tri(B), sn = IdealTriangulation::side(B);

    // old side slots around the square, in the marker frame
    const int slot_b = IdealTriangulation::slot(tm, sm + 1);  // R -> Q
    const int slot_a = IdealTriangulation::slot(tm, sm + 2);  // Q -> P
    const int slot_d = IdealTriangulation::slot(tn, sn + 1);  // P -> S
    const int slot_c = IdealTriangulation::slot(tn, sn + 2);  // S -> R
    const int vP = T.vertex_of[IdealTriangulation::slot(tm, sm)];
    const int vR = T.vertex_of[IdealTriangulation::slot(tm, sm + 1)];
    const int vQ = T.vertex_of[IdealTriangulation::slot(tm, sm + 2)];
    const int vS = T.vertex_of[IdealTriangulation::slot(tn, sn + 2)];

    // new weights of e, gathered before mutating anything
    std::vector<Int> new_we;
    new_we.reserve(lams.size());
    for (Lamination* L : lams) {
        if (L->w[e] < 0)
            throw std::invalid_argument("flip: edge carries arc components of a lamination");
        auto s0 = triangle_shape(T, *L, tm), s1 = triangle_shape(T, *L, tn);
        if (!s0 || !s1) throw std::invalid_argument("flip: invalid lamination");
        // corner indices in the marker frame: P,R,Q at sm,sm+1,sm+2 of tm and
        // R,P,S at sn,sn+1,sn+2 of tn
        Int at_q = s0->corner[(sm + 2) % 3];
        Int at_s = s1->corner[(sn + 2) % 3];
        Int thr = s0->corner[sm] - s1->corner[(sn + 1) % 3];  // a-c minus b-d throughs
        new_we.push_back(at_q + at_s + (thr < 0 ? -thr : thr));
    }

    // destinations: QRS into the lower-indexed triangle, QSP into the higher,
    // with e' at the old diagonal position of each
    const int t_lo = tm < tn ? tm : tn, t_hi = tm < tn ? tn : tm;
    const int p_lo = tm < tn ? sm : sn, p_hi = tm < tn ? sn : sm;
    struct Move {
        int old_slot, new_slot;
    };
    const std::array<Move, 4> mv = {{{slot_c, IdealTriangulation::slot(t_lo, p_lo + 1)},
                                     {slot_b, IdealTriangulation::slot(t_lo, p_lo + 2)},
                                     {slot_a, IdealTriangulation::slot(t_hi, p_hi + 1)},
                                     {slot_d, IdealTriangulation::slot(t_hi, p_hi + 2)}}};
    std::array<int, 4> mate{};
    std::array<int, 4> eid{};
    std::array<bool, 4> was_first{};  // position in edge_slots before mutation
    for (int i = 0; i < 4; ++i) {
        mate[i] = T.glue[mv[i].old_slot];
        eid[i] = T.edge_of[mv[i].old_slot];
        was_first[i] = T.edge_slots[eid[i]].first == mv[i].old_slot;
    }
    auto new_of = [&](int old_slot) -> int {
        for (const auto& m : mv)
            if (m.old_slot == old_slot) return m.new_slot;
        return -1;
    };
    for (int i = 0; i < 4; ++i) {
        int ns = mv[i].new_slot;
        int partner = new_of(mate[i]);
        int target = partner >= 0 ? partner : mate[i];
        T.glue[ns] = target;
        T.glue[target] = ns;
        T.edge_of[ns] = eid[i];
        auto& es = T.edge_slots[eid[i]];
        (was_first[i] ? es.first : es.second) = ns;
    }
    // the new diagonal occupies the old diagonal slots; its first slot is the
    // old mate slot B, which the involution argument requires
    const int ne_lo = IdealTriangulation::slot(t_lo, p_lo);
    const int ne_hi = IdealTriangulation::slot(t_hi, p_hi);
    T.glue[ne_lo] = ne_hi;
    T.glue[ne_hi] = ne_lo;
    T.edge_of[ne_lo] = T.edge_of[ne_hi] = e;
    T.edge_slots[e] = (A == ne_lo) ? std::pair<int, int>{ne_hi, ne_lo}
                                   : std::pair<int, int>{ne_lo, ne_hi};
    // corners: t_lo = (Q, S, R) from p_lo, t_hi = (S, Q, P) from p_hi
    T.vertex_of[IdealTriangulation::slot(t_lo, p_lo)] = vQ;
    T.vertex_of[IdealTriangulation::slot(t_lo, p_lo + 1)] = vS;
    T.vertex_of[IdealTriangulation::slot(t_lo, p_lo + 2)] = vR;
    T.vertex_of[IdealTriangulation::slot(t_hi, p_hi)] = vS;
    T.vertex_of[IdealTriangulation::slot(t_hi, p_hi + 1)] = vQ;
    T.vertex_of[IdealTriangulation::slot(t_hi, p_hi + 2)] = vP;

    for (std::size_t i = 0; i < lams.size(); ++i) lams[i]->w[e] = new_we[i];
}

}  // namespace isofill

#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "isofill/surface/intersection.hpp"
#include "isofill/surface/trace.hpp"
#include "isofill/surface/walks.hpp"

namespace isofill {

namespace detail {

/// A transverse point on an edge, remembered together with its trajectory:
/// the strand it belongs to, the passage at which the strand crosses the
/// edge, and whether that passage enters the edge's primary slot (when it
/// enters the mate, the trajectory through the primary slot is the strand
/// read backwards).
struct EdgePoint {
    const Strand* st = nullptr;
    std::size_t pass = 0;
    bool enters_primary = true;
};

/// Slot the trajectory entered i steps before crossing into the primary
/// slot (i = 0 gives the primary slot itself).
inline int trajectory_prev(const IdealTriangulation& T, const EdgePoint& r, std::size_t i) {
    std::size_t n = r.st->passages.size();
    if (r.enters_primary) return r.st->passages[(r.pass + n - (i % n)) % n].slot;
    return T.glue[r.st->passages[(r.pass + i % n) % n].slot];
}

/// Order of two transversal points of different systems on a shared edge, in
/// the edge's canonical direction. In minimal position every crossing of a
/// shared corridor can be pushed to the corridor's forward end, so at the
/// edge itself the strands are still in the order in which their backward
/// trajectories diverge: at the divergence triangle both chords leave
/// through the same side c, and the chord arriving from side c+2 cuts the
/// corner at the start of side c, placing it nearer position 0. That order
/// propagates unchanged along the corridor (crossing an edge reverses the
/// side direction, and the nesting of parallel chords inside a triangle
/// reverses it back). Trajectories that never diverge are parallel strands,
/// which the cut operations do not accept.
inline bool edge_point_below(const IdealTriangulation& T, const EdgePoint& p, const EdgePoint& q) {
    std::size_t limit = p.st->passages.size() * q.st->passages.size() + 1;
    int shared = trajectory_prev(T, p, 0);
    for (std::size_t i = 1; i <= limit; ++i) {
        int a = trajectory_prev(T, p, i);
        int b = trajectory_prev(T, q, i);
        if (a == b) {
            shared = a;
            continue;
        }
        int c = IdealTriangulation::side(T.glue[shared]);
        return IdealTriangulation::side(a) != (c + 2) % 3;
    }
    throw std::invalid_argument("cut: lamination component parallel to the cutting curve");
}

/// All transverse points of a system of closed strands, indexed by
/// [edge][canonical position].
inline std::vector<std::vector<EdgePoint>> edge_points(const IdealTriangulation& T,
                                                       const Lamination& L,
                                                       const std::vector<Strand>& strands) {
    std::vector<std::vector<EdgePoint>> pts(T.num_edges());
    for (int e = 0; e < T.num_edges(); ++e)
        pts[e].resize(static_cast<std::size_t>(L.transverse(e)));
    for (const Strand& s : strands) {
        if (s.parallel_edge >= 0) continue;
        for (std::size_t k = 0; k < s.passages.size(); ++k) {
            int sl = s.passages[k].slot;
            Int pos = edge_position(T, L, sl, s.passages[k].index);
            pts[T.edge_of[sl]][static_cast<std::size_t>(pos)] = {&s, k, T.slot_is_forward(sl)};
        }
    }
    return pts;
}

/// Number of reference points below the given point on its edge, found by
/// binary search (the cross-system order is compatible with both canonical
/// orders, so the predicate is monotone).
inline Int point_gap(const IdealTriangulation& T, const std::vector<EdgePoint>& ref,
                     const EdgePoint& q) {
    std::size_t lo = 0, hi = ref.size();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (edge_point_below(T, ref[mid], q))
            lo = mid + 1;
        else
            hi = mid;
    }
    return Int(lo);
}

struct UnionFind {
    std::vector<std::size_t> up;
    explicit UnionFind(std::size_t n) : up(n) { std::iota(up.begin(), up.end(), std::size_t(0)); }
    std::size_t find(std::size_t x) {
        while (up[x] != x) x = up[x] = up[up[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { up[find(a)] = find(b); }
};

/// Cell of a triangle cut by the chords of a multicurve: `corner < 0` is the
/// central cell; otherwise the cell of the given corner stack whose outer
/// boundary is the chord of that rank.
struct TriCell {
    int corner = -1;
    Int rank = 0;

    bool operator==(const TriCell&) const = default;
};

/// Cell adjacent to the interior of side f at the gap between consecutive
/// chord endpoints (gap g lies between points g-1 and g in side direction).
inline TriCell cell_at_gap(const TriangleShape& sh, int f, const Int& g) {
    if (g < sh.corner[f]) return {f, g};
    if (g == sh.corner[f]) return {};
    return {(f + 1) % 3, sh.across[f] - g};
}

/// One crossing of a chord of the cutting system: the chord of `rank` in the
/// stack at `corner` of triangle `t`, crossed moving away from the corner
/// (`outward`) or towards it.
struct ChordCrossing {
    int t = -1;
    int corner = -1;
    Int rank = 0;
    bool outward = true;
};

/// Chords separating two cells of a triangle, in crossing order. The cells
/// of a triangle form a tree (three stacks joined at the central cell), so
/// the path is unique.
inline void cell_path(const TriangleShape& sh, int t, TriCell a, TriCell b,
                      std::vector<ChordCrossing>& out) {
    if (a == b) return;
    if (a.corner >= 0 && (b.corner == a.corner)) {
        if (a.rank < b.rank)
            for (Int r = a.rank; r < b.rank; ++r) out.push_back({t, a.corner, r, true});
        else
            for (Int r = a.rank - 1; r >= b.rank; --r) out.push_back({t, a.corner, r, false});
        return;
    }
    if (a.corner >= 0)
        for (Int r = a.rank; r < sh.corner[a.corner]; ++r) out.push_back({t, a.corner, r, true});
    if (b.corner >= 0)
        for (Int r = sh.corner[b.corner] - 1; r >= b.rank; --r)
            out.push_back({t, b.corner, r, false});
}

}  // namespace detail

/// One piece of a surface cut along a multicurve. Each boundary circle of
/// the cut is collapsed to a puncture of the piece, so the piece is again an
/// ideally triangulated punctured surface; `boundary_vertex` distinguishes
/// those collapsed punctures from punctures of the original surface.
struct Subsurface {
    IdealTriangulation piece;
    std::vector<int> tri_map;           // piece triangle -> parent triangle
    std::vector<char> boundary_vertex;  // piece vertex -> comes from the cutting curve

    int boundaries() const {
        return static_cast<int>(std::count(boundary_vertex.begin(), boundary_vertex.end(), 1));
    }
    int original_punctures() const { return piece.punctures - boundaries(); }
};

/// Result of cutting a surface along an essential multicurve: the pieces,
/// plus the gap bookkeeping that maps transversal data on the parent surface
/// into the pieces. Every parent triangle survives as exactly one piece
/// triangle (its central cell); the chains of bigon cells between chords
/// collapse, identifying the gaps between consecutive chord endpoints into
/// the piece edges.
class CutComplex {
  public:
    IdealTriangulation parent;
    Lamination curve;  // the cutting multicurve, parallel copies removed
    std::vector<Strand> curve_strands;
    std::vector<TriangleShape> shapes;  // of `curve` on `parent`
    std::vector<Subsurface> pieces;
    std::vector<int> piece_of;      // parent triangle -> piece index
    std::vector<int> tri_in_piece;  // parent triangle -> triangle index within its piece

    // Gap nodes: for each parent slot, one node per gap between consecutive
    // transversal points of `curve` (n points = n + 1 gaps, in side order).
    std::vector<std::size_t> node_off;
    std::vector<int> node_piece;  // node -> piece index
    std::vector<int> node_edge;   // node -> edge id within that piece

    std::size_t node(int slot, const Int& gap) const {
        return node_off[static_cast<std::size_t>(slot)] + static_cast<std::size_t>(gap);
    }
};

/// Cut the surface along an essential multicurve. Parallel components of C
/// are collapsed to a single copy first. Throws std::invalid_argument when C
/// has arc components, is empty, or has an inessential component.
inline CutComplex cut(const IdealTriangulation& T, const Lamination& C) {
    if (!C.is_multicurve_shape())
        throw std::invalid_argument("cut: cutting system must be a multicurve");

    CutComplex cc;
    cc.parent = T;

    // Drop parallel copies: isotopic closed strands trace identical keys.
    std::map<std::vector<int>, Strand> uniq;
    for (Strand& s : trace_strands(T, C)) uniq.emplace(strand_key(T, s), std::move(s));
    std::vector<Strand> kept;
    kept.reserve(uniq.size());
    for (auto& [key, s] : uniq) kept.push_back(std::move(s));
    cc.curve = strands_to_lamination(T, kept);
    if (cc.curve.is_zero()) throw std::invalid_argument("cut: empty cutting system");
    if (!is_essential(T, cc.curve))
        throw std::invalid_argument("cut: cutting system must be essential");
    // Re-trace so strand passage indices match the deduplicated weights.
    cc.curve_strands = trace_strands(T, cc.curve);
    cc.shapes = detail::all_shapes(T, cc.curve);

    const int S = T.num_slots();
    cc.node_off.assign(S + 1, 0);
    for (int sl = 0; sl < S; ++sl)
        cc.node_off[sl + 1] =
            cc.node_off[sl] + static_cast<std::size_t>(cc.curve.transverse(T.edge_of[sl])) + 1;
    std::size_t total = cc.node_off[S];
    detail::UnionFind uf(total);

    // The two sides of each physical gap are one and the same interval.
    for (int e = 0; e < T.num_edges(); ++e) {
        auto [a, b] = T.edge_slots[e];
        Int n = cc.curve.transverse(e);
        for (Int g = 0; g <= n; ++g) uf.unite(cc.node(a, g), cc.node(b, n - g));
    }
    // Each cell of a corner stack is a bigon once its two chord sides are
    // collapsed, identifying its two gap sides.
    for (int t = 0; t < T.num_triangles(); ++t)
        for (int v = 0; v < 3; ++v) {
            int sv = IdealTriangulation::slot(t, v);
            int sp = IdealTriangulation::slot(t, v + 2);  // side v - 1
            Int np = cc.curve.transverse(T.edge_of[sp]);
            for (Int j = 0; j < cc.shapes[t].corner[v]; ++j)
                uf.unite(cc.node(sv, j), cc.node(sp, np - j));
        }

    // Each class of gaps is one edge of the cut complex; its two ends are the
    // gaps bounding the central cells of two triangles, and those central
    // sides are glued.
    std::map<std::size_t, std::vector<int>> ends;  // class root -> central parent slots
    std::vector<int> central_node_of_slot(S);
    for (int t = 0; t < T.num_triangles(); ++t)
        for (int s = 0; s < 3; ++s) {
            int sl = IdealTriangulation::slot(t, s);
            std::size_t nd = cc.node(sl, cc.shapes[t].corner[s]);
            ends[uf.find(nd)].push_back(sl);
        }
    std::vector<int> partner(S, -1);
    for (auto& [root, slots] : ends) {
        if (slots.size() != 2) throw std::logic_error("cut: gap chain without two central ends");
        partner[slots[0]] = slots[1];
        partner[slots[1]] = slots[0];
    }

    // Split into connected components of triangles under the new gluing.
    const int NT = T.num_triangles();
    cc.piece_of.assign(NT, -1);
    cc.tri_in_piece.assign(NT, -1);
    std::map<std::size_t, std::pair<int, int>> class_edge;  // root -> (piece, edge)
    for (int t0 = 0; t0 < NT; ++t0) {
        if (cc.piece_of[t0] >= 0) continue;
        int p = static_cast<int>(cc.pieces.size());
        Subsurface sub;
        std::vector<int> stack{t0};
        cc.piece_of[t0] = p;
        cc.tri_in_piece[t0] = 0;
        sub.tri_map.push_back(t0);
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            for (int s = 0; s < 3; ++s) {
                int u = IdealTriangulation::tri(partner[IdealTriangulation::slot(t, s)]);
                if (cc.piece_of[u] >= 0) continue;
                cc.piece_of[u] = p;
                cc.tri_in_piece[u] = static_cast<int>(sub.tri_map.size());
                sub.tri_map.push_back(u);
                stack.push_back(u);
            }
        }
        IdealTriangulation& P = sub.piece;
        P.glue.assign(3 * sub.tri_map.size(), -1);
        P.edge_of.assign(P.glue.size(), -1);
        for (std::size_t pt = 0; pt < sub.tri_map.size(); ++pt)
            for (int s = 0; s < 3; ++s) {
                int sl = IdealTriangulation::slot(sub.tri_map[pt], s);
                int psl = IdealTriangulation::slot(static_cast<int>(pt), s);
                if (P.glue[psl] >= 0) continue;
                int mate = partner[sl];
                int pmate = IdealTriangulation::slot(cc.tri_in_piece[IdealTriangulation::tri(mate)],
                                                     IdealTriangulation::side(mate));
                detail::glue_slots(P, psl, pmate);
                std::size_t root = uf.find(cc.node(
                    sl, cc.shapes[IdealTriangulation::tri(sl)].corner[IdealTriangulation::side(sl)]));
                class_edge[root] = {p, P.edge_of[psl]};
            }
        P.punctures = P.assign_vertices();
        int chi = P.punctures - P.num_edges() + P.num_triangles();
        if ((2 - chi) % 2 != 0 || chi > 2)
            throw std::logic_error("cut: piece has inconsistent Euler characteristic");
        P.genus = (2 - chi) / 2;
        P.check();
        sub.boundary_vertex.assign(P.punctures, 0);
        for (std::size_t pt = 0; pt < sub.tri_map.size(); ++pt)
            for (int s = 0; s < 3; ++s)
                if (cc.shapes[sub.tri_map[pt]].corner[s] > 0)
                    sub.boundary_vertex[P.vertex_at_corner(static_cast<int>(pt), s)] = 1;
        cc.pieces.push_back(std::move(sub));
    }

    cc.node_piece.assign(total, -1);
    cc.node_edge.assign(total, -1);
    for (std::size_t nd = 0; nd < total; ++nd) {
        auto it = class_edge.find(uf.find(nd));
        if (it == class_edge.end()) throw std::logic_error("cut: unclassified gap");
        cc.node_piece[nd] = it->second.first;
        cc.node_edge[nd] = it->second.second;
    }
    return cc;
}

/// Carry a lamination disjoint from the cutting multicurve into the pieces,
/// one lamination per piece. Components parallel to a component of the
/// cutting curve are rejected: they have no preferred side.
inline std::vector<Lamination> transfer(const CutComplex& cc, const Lamination& L) {
    const IdealTriangulation& T = cc.parent;
    if (intersection_number(T, cc.curve, L) != 0)
        throw std::invalid_argument("transfer: lamination must be disjoint from the cutting curve");

    auto cpts = detail::edge_points(T, cc.curve, cc.curve_strands);
    std::vector<Strand> ls = trace_strands(T, L);

    // Count the points of L inside each physical gap of each edge.
    std::vector<std::vector<Int>> cnt(T.num_edges());
    for (int e = 0; e < T.num_edges(); ++e)
        cnt[e].assign(static_cast<std::size_t>(cc.curve.transverse(e)) + 1, 0);
    for (const Strand& s : ls) {
        if (s.parallel_edge >= 0) continue;
        for (std::size_t k = 0; k < s.passages.size(); ++k) {
            int sl = s.passages[k].slot;
            int e = T.edge_of[sl];
            detail::EdgePoint q{&s, k, T.slot_is_forward(sl)};
            Int g = detail::point_gap(T, cpts[e], q);
            cnt[e][static_cast<std::size_t>(g)] += 1;
        }
    }

    std::vector<Lamination> out;
    out.reserve(cc.pieces.size());
    for (const Subsurface& sub : cc.pieces) out.emplace_back(sub.piece);

    // Every gap of one class carries the same count (strands disjoint from
    // the curve cross the bigon chains from end to end); that common count is
    // the transverse weight of the piece edge.
    std::vector<std::vector<char>> seen(cc.pieces.size());
    for (std::size_t p = 0; p < cc.pieces.size(); ++p)
        seen[p].assign(cc.pieces[p].piece.num_edges(), 0);
    for (int e = 0; e < T.num_edges(); ++e) {
        int sl0 = T.edge_slots[e].first;
        Int n = cc.curve.transverse(e);
        for (Int g = 0; g <= n; ++g) {
            std::size_t nd = cc.node(sl0, g);
            Int& w = out[cc.node_piece[nd]].w[cc.node_edge[nd]];
            const Int& c = cnt[e][static_cast<std::size_t>(g)];
            if (!seen[cc.node_piece[nd]][cc.node_edge[nd]]) {
                seen[cc.node_piece[nd]][cc.node_edge[nd]] = 1;
                w = c;
            } else if (w != c) {
                throw std::logic_error("transfer: gap counts disagree along a collapsed chain");
            }
        }
    }
    // Edge-parallel arc components keep riding their edge, which survives
    // whole (a cut edge would meet the curve).
    for (const Strand& s : ls) {
        if (s.parallel_edge < 0) continue;
        int e = s.parallel_edge;
        if (cc.curve.transverse(e) != 0)
            throw std::logic_error("transfer: arc component meets the cutting curve");
        std::size_t nd = cc.node(T.edge_slots[e].first, 0);
        Int& w = out[cc.node_piece[nd]].w[cc.node_edge[nd]];
        if (w > 0) throw std::logic_error("transfer: mixed arc and transverse weight");
        w -= s.multiplicity;
    }
    return out;
}

/// One arc of a lamination cut along the reference multicurve, living in a
/// piece of the cut surface. Either parallel to a piece edge, or recorded by
/// the piece slots it enters between central cells together with the chords
/// of the cutting curve at its two ends (triangle, corner stack, rank, and
/// the side of the chord the arc leaves from / arrives at: 0 nearer the
/// corner, 1 away from it). The code is orientation-normalized.
struct CutArc {
    int piece = -1;
    int parallel_edge = -1;
    std::vector<int> walk;  // entered piece slots
    std::array<Int, 4> from{-1, -1, -1, -1};
    std::array<Int, 4> to{-1, -1, -1, -1};

    auto operator<=>(const CutArc&) const = default;
};

/// Arc system in the pieces: sorted, with parallel copies collapsed.
struct ArcSystem {
    std::vector<CutArc> arcs;

    bool operator==(const ArcSystem&) const = default;
};

namespace detail {

/// One symbol of a strand's itinerary relative to the cutting curve: either
/// an edge crossing (the entered parent slot and the gap of the cutting
/// system, in the edge's canonical direction, the point lands in) or a
/// crossing of a chord of the cutting curve (resolved to the chord's strand
/// and the passage at which that strand enters the chord's triangle).
struct ItinLetter {
    bool cross = false;
    int slot = -1;
    Int gap = 0;
    ChordCrossing x;
    std::size_t cstrand = 0;
    std::size_t kc = 0;
};

}  // namespace detail

/// Project a lamination to the arc system it leaves in the surface cut along
/// the reference multicurve. Every component of L must cut the curve.
///
/// The strands of L are first laid out jointly with the curve in normal
/// position. Two curves that are separately taut need not be mutually taut,
/// so inessential crossing pairs are then removed: a pair of crossings
/// consecutive along the strand, hitting the same curve strand and returning
/// to the same side of it, bounds a bigon exactly when the loop made of the
/// strand piece and the curve piece between them is null-homotopic. Removing
/// such a pair slides the strand piece into the gap lane alongside the curve,
/// which crosses nothing new; every non-minimal position admits such a pair,
/// so the loop terminates in minimal position (asserted at the end).
inline ArcSystem kappa(const CutComplex& cc, const Lamination& L) {
    const IdealTriangulation& T = cc.parent;
    for (const Lamination& comp : components(T, L))
        if (intersection_number(T, cc.curve, comp) == 0)
            throw std::invalid_argument("kappa: a component misses the reference multicurve");

    auto cpts = detail::edge_points(T, cc.curve, cc.curve_strands);
    std::set<CutArc> seen;
    Int crossings = 0;

    auto oriented_min = [&cc](CutArc a) {
        CutArc r = a;
        std::reverse(r.walk.begin(), r.walk.end());
        for (int& sl : r.walk) sl = cc.pieces[static_cast<std::size_t>(r.piece)].piece.glue[sl];
        std::swap(r.from, r.to);
        return std::min(a, r);
    };

    auto side_gap = [&](int sl, const Int& canonical) {
        return T.slot_is_forward(sl) ? canonical : cc.curve.transverse(T.edge_of[sl]) - canonical;
    };

    // The strand and passage of the curve whose chord a crossing hits. The
    // chord's endpoint on side `corner` has side index `rank`; the curve
    // either enters the triangle there (the chord starts at that passage) or
    // exits there (the chord started one passage earlier).
    auto chord_passage = [&](const detail::ChordCrossing& x) {
        int sv = IdealTriangulation::slot(x.t, x.corner);
        int e = T.edge_of[sv];
        Int pos = T.slot_is_forward(sv) ? x.rank : cc.curve.transverse(e) - 1 - x.rank;
        const detail::EdgePoint& ep = cpts[e][static_cast<std::size_t>(pos)];
        std::size_t ci = static_cast<std::size_t>(ep.st - cc.curve_strands.data());
        std::size_t nc = ep.st->passages.size();
        if (ep.st->passages[ep.pass].slot == sv) return std::pair{ci, ep.pass};
        return std::pair{ci, (ep.pass + nc - 1) % nc};
    };

    // Whether the lamination sits on the left of the curve's forward
    // direction just before (or just after) the given crossing. Triangles are
    // oriented counterclockwise, so entering a triangle through side v and
    // leaving through side v-1 keeps corner v on the left; the lamination is
    // on the corner side before an outward crossing and after an inward one.
    auto on_left = [&](const detail::ItinLetter& X, bool before) {
        int se = cc.curve_strands[X.cstrand].passages[X.kc].slot;
        bool corner_left = IdealTriangulation::side(se) == X.x.corner;
        bool corner_side = before ? X.x.outward : !X.x.outward;
        return corner_side == corner_left;
    };

    for (const Strand& s : trace_strands(T, L)) {
        if (s.parallel_edge >= 0) {
            // The arc rides its edge, which the curve subdivides; each gap
            // segment is parallel to the piece edge its gap collapses onto.
            int e = s.parallel_edge;
            int sl0 = T.edge_slots[e].first;
            Int n = cc.curve.transverse(e);
            for (Int g = 0; g <= n; ++g) {
                std::size_t nd = cc.node(sl0, g);
                CutArc a;
                a.piece = cc.node_piece[nd];
                a.parallel_edge = cc.node_edge[nd];
                seen.insert(a);
            }
            continue;
        }

        const std::size_t np = s.passages.size();
        std::vector<Int> gap(np);
        for (std::size_t k = 0; k < np; ++k) {
            int sl = s.passages[k].slot;
            detail::EdgePoint q{&s, k, T.slot_is_forward(sl)};
            gap[k] = detail::point_gap(T, cpts[T.edge_of[sl]], q);
        }

        // Joint normal position, read off as a cyclic itinerary.
        std::vector<detail::ItinLetter> word;
        for (std::size_t k = 0; k < np; ++k) {
            int sl_in = s.passages[k].slot;
            int sl_out = T.glue[s.passages[(k + 1) % np].slot];
            int t = IdealTriangulation::tri(sl_in);
            const TriangleShape& sh = cc.shapes[t];
            detail::ItinLetter g;
            g.slot = sl_in;
            g.gap = gap[k];
            word.push_back(g);
            detail::TriCell a = detail::cell_at_gap(sh, IdealTriangulation::side(sl_in),
                                                    side_gap(sl_in, gap[k]));
            detail::TriCell b = detail::cell_at_gap(sh, IdealTriangulation::side(sl_out),
                                                    side_gap(sl_out, gap[(k + 1) % np]));
            std::vector<detail::ChordCrossing> path;
            detail::cell_path(sh, t, a, b, path);
            for (const auto& x : path) {
                detail::ItinLetter X;
                X.cross = true;
                X.x = x;
                std::tie(X.cstrand, X.kc) = chord_passage(x);
                word.push_back(X);
            }
        }

        // Remove one inessential crossing pair, if any.
        auto remove_bigon = [&]() {
            std::vector<std::size_t> xs;
            for (std::size_t i = 0; i < word.size(); ++i)
                if (word[i].cross) xs.push_back(i);
            if (xs.size() < 2) return false;
            for (std::size_t a = 0; a < xs.size(); ++a) {
                std::size_t b = (a + 1) % xs.size();
                const detail::ItinLetter& xi = word[xs[a]];
                const detail::ItinLetter& xj = word[xs[b]];
                if (xi.cstrand != xj.cstrand) continue;
                bool left = on_left(xi, true);
                if (left != on_left(xj, false)) continue;
                const Strand& cs = cc.curve_strands[xi.cstrand];
                const std::size_t ncp = cs.passages.size();
                std::vector<detail::ItinLetter> between;
                for (std::size_t p = (xs[a] + 1) % word.size(); p != xs[b];
                     p = (p + 1) % word.size())
                    between.push_back(word[p]);
                // Edges the curve crosses between the two chords, in either
                // direction; two crossings on one chord enclose an empty
                // stretch or a full turn.
                std::vector<std::pair<int, std::size_t>> cands;
                if (xi.kc == xj.kc)
                    cands = {{+1, 0}, {+1, ncp}, {-1, ncp}};
                else
                    cands = {{+1, (xj.kc + ncp - xi.kc) % ncp},
                             {-1, (xi.kc + ncp - xj.kc) % ncp}};
                for (auto [dir, len] : cands) {
                    std::vector<std::size_t> cpass;
                    for (std::size_t d = 0; d < len; ++d)
                        cpass.push_back(dir > 0 ? (xi.kc + 1 + d) % ncp
                                                : (xi.kc + ncp - d) % ncp);
                    // Along the strand from the first crossing to the second,
                    // then back along the curve.
                    ClosedWalk w;
                    for (const auto& g : between) w.push_back(g.slot);
                    for (auto it = cpass.rbegin(); it != cpass.rend(); ++it)
                        w.push_back(dir > 0 ? T.glue[cs.passages[*it].slot]
                                            : cs.passages[*it].slot);
                    if (!reduce_closed_walk(T, w).empty()) continue;
                    // Null-homotopic return to the same side: slide the
                    // strand piece into the gap lane alongside the curve (the
                    // lane left of the curve's travel is the gap towards the
                    // entered side's starting corner).
                    std::vector<detail::ItinLetter> next;
                    for (std::size_t kp : cpass) {
                        int slc = cs.passages[kp].slot;
                        Int sg = cs.passages[kp].index + (left ? 0 : 1);
                        detail::ItinLetter g;
                        g.slot = dir > 0 ? slc : T.glue[slc];
                        g.gap = side_gap(slc, sg);
                        next.push_back(g);
                    }
                    for (std::size_t p = (xs[b] + 1) % word.size(); p != xs[a];
                         p = (p + 1) % word.size())
                        next.push_back(word[p]);
                    word = std::move(next);
                    return true;
                }
            }
            return false;
        };
        while (remove_bigon()) {}

        std::vector<std::size_t> xs;
        for (std::size_t i = 0; i < word.size(); ++i)
            if (word[i].cross) xs.push_back(i);
        crossings += Int(xs.size());
        if (xs.empty()) throw std::logic_error("kappa: component without crossings slipped through");

        // Piece containing the cell the strand enters just after a crossing:
        // the next cell of the corner stack (which collapses onto a piece
        // edge) or, past the last chord, the central cell of the triangle.
        auto cell_piece = [&](const detail::ChordCrossing& x) {
            Int r = x.outward ? x.rank + 1 : x.rank;
            if (r == cc.shapes[x.t].corner[x.corner]) return cc.piece_of[x.t];
            // Gap nodes are indexed in each slot's own side direction; the
            // cell inside chord `r` touches side `corner` at side gap `r`.
            return cc.node_piece[cc.node(IdealTriangulation::slot(x.t, x.corner), r)];
        };

        for (std::size_t i = 0; i < xs.size(); ++i) {
            const detail::ItinLetter& e0 = word[xs[i]];
            const detail::ItinLetter& e1 = word[xs[(i + 1) % xs.size()]];
            CutArc a;
            a.piece = cell_piece(e0.x);
            a.from = {Int(e0.x.t), Int(e0.x.corner), e0.x.rank, Int(e0.x.outward ? 1 : 0)};
            a.to = {Int(e1.x.t), Int(e1.x.corner), e1.x.rank, Int(e1.x.outward ? 0 : 1)};
            // A piece edge is crossed exactly when the strand lands in a
            // central cell (the gaps of the bigon chains collapse into that
            // edge); backtracks across a piece edge cancel.
            for (std::size_t p = (xs[i] + 1) % word.size(); p != xs[(i + 1) % xs.size()];
                 p = (p + 1) % word.size()) {
                const detail::ItinLetter& g = word[p];
                int t = IdealTriangulation::tri(g.slot);
                int f = IdealTriangulation::side(g.slot);
                if (side_gap(g.slot, g.gap) != cc.shapes[t].corner[f]) continue;
                if (cc.piece_of[t] != a.piece)
                    throw std::logic_error("kappa: arc strayed out of its piece");
                int psl = IdealTriangulation::slot(cc.tri_in_piece[t], f);
                const IdealTriangulation& P = cc.pieces[static_cast<std::size_t>(
                                                            cc.piece_of[t])].piece;
                if (!a.walk.empty() && psl == P.glue[a.walk.back()])
                    a.walk.pop_back();
                else
                    a.walk.push_back(psl);
            }
            seen.insert(oriented_min(a));
        }
    }

    Lamination closed(T);
    for (int e = 0; e < T.num_edges(); ++e) closed.w[e] = std::max(L.w[e], Int(0));
    if (crossings != intersection_number(T, cc.curve, closed))
        throw std::logic_error("kappa: realization is not in minimal position");

    ArcSystem out;
    out.arcs.assign(seen.begin(), seen.end());
    return out;
}

}  // namespace isofill

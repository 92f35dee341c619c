#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "isofill/surface/intersection.hpp"
#include "isofill/surface/walks.hpp"

namespace isofill {

namespace detail {

/// Exact planar model of one triangle: corners (0,0), (1,0), (0,1) in ccw
/// order; side s runs from corner s to corner s+1.
using Pt = std::pair<Rat, Rat>;

inline Rat cross2(const Pt& o, const Pt& a, const Pt& b) {
    return (a.first - o.first) * (b.second - o.second) -
           (a.second - o.second) * (b.first - o.first);
}

inline Pt side_point(int s, const Rat& lam) {
    static const std::array<Pt, 3> corner = {Pt{0, 0}, Pt{1, 0}, Pt{0, 1}};
    const Pt &a = corner[s], &b = corner[(s + 1) % 3];
    return {a.first + lam * (b.first - a.first), a.second + lam * (b.second - a.second)};
}

/// One triangle traversal of a strand, as a straight segment.
struct RealChord {
    int tri;
    Pt a, b;  // entry, exit
};

/// Joint realization: both systems positioned on every edge with all points
/// distinct. A system-1 point at canonical position p on an edge carrying
/// (n1, n2) points sits at parameter (p+1)/(n1+1); a system-2 point at
/// (p+1)/(n2+1) plus a uniform offset small enough to preserve strict order.
inline Rat joint_lambda(const IdealTriangulation& T, const Lamination& L1, const Lamination& L2,
                        int sys, int edge, const Int& pos) {
    Int n1 = L1.transverse(edge), n2 = L2.transverse(edge);
    if (sys == 0) return Rat(pos + 1, n1 + 1);
    return Rat(pos + 1, n2 + 1) + Rat(1, 4 * (n1 + 1) * (n2 + 1));
}

inline RealChord realize_chord(const IdealTriangulation& T, const Lamination& L1,
                               const Lamination& L2, int sys, const Strand& st, size_t gap) {
    const Lamination& L = sys == 0 ? L1 : L2;
    size_t np = st.passages.size();
    const Passage& pin = st.passages[gap];
    const Passage& pnx = st.passages[(gap + 1) % np];
    int sl_in = pin.slot;
    int sl_out = T.glue[pnx.slot];
    if (IdealTriangulation::tri(sl_in) != IdealTriangulation::tri(sl_out))
        throw std::logic_error("realize_chord: passage slots disagree on the triangle");
    Rat lam_in = joint_lambda(T, L1, L2, sys, T.edge_of[sl_in],
                              edge_position(T, L, sl_in, pin.index));
    Rat lam_out = joint_lambda(T, L1, L2, sys, T.edge_of[pnx.slot],
                               edge_position(T, L, pnx.slot, pnx.index));
    RealChord c;
    c.tri = IdealTriangulation::tri(sl_in);
    c.a = side_point(IdealTriangulation::side(sl_in),
                     T.slot_is_forward(sl_in) ? lam_in : 1 - lam_in);
    c.b = side_point(IdealTriangulation::side(sl_out),
                     T.slot_is_forward(sl_out) ? lam_out : 1 - lam_out);
    return c;
}

/// A transversal intersection of a first-system chord with a second-system
/// chord in the joint realization.
struct JointCrossing {
    int xs, ys;      // joint strand indices (second system offset by |A|)
    size_t gx, gy;   // gaps: which triangle traversal of each strand
    Rat tx, ty;      // position along each chord, for in-triangle ordering
    std::array<int, 4> rot;  // ccw germ order; germs: 0 x_in, 1 x_out, 2 y_in, 3 y_out
    bool dead = false;
};

/// Proper (interior) intersection of segments a0-a1 and b0-b1.
inline bool chords_cross(const Pt& a0, const Pt& a1, const Pt& b0, const Pt& b1, Rat& ta,
                         Rat& tb) {
    Rat d0 = cross2(b0, b1, a0), d1 = cross2(b0, b1, a1);
    Rat d2 = cross2(a0, a1, b0), d3 = cross2(a0, a1, b1);
    if (!((d0 < 0) != (d1 < 0)) || d0 == 0 || d1 == 0) return false;
    if (!((d2 < 0) != (d3 < 0)) || d2 == 0 || d3 == 0) return false;
    ta = d0 / (d0 - d1);
    tb = d2 / (d2 - d3);
    return true;
}

}  // namespace detail

/// The essential boundary components of a regular neighbourhood of C1 ∪ C2 in
/// minimal position, as a multicurve with components deduplicated.
/// Null-homotopic and puncture-parallel boundary circles are discarded.
inline Lamination boundary_neighborhood(const IdealTriangulation& T, const Lamination& C1,
                                        const Lamination& C2) {
    if (!C1.is_multicurve_shape() || !C2.is_multicurve_shape())
        throw std::invalid_argument("boundary_neighborhood: inputs must be multicurves");
    std::vector<Strand> A = trace_strands(T, C1), B = trace_strands(T, C2);

    // Joint strand indexing: strand s of A is s; strand s of B is |A| + s.
    auto strand_of = [&](int joint) -> const Strand& {
        return joint < int(A.size()) ? A[joint] : B[joint - A.size()];
    };
    int nstrands = int(A.size() + B.size());

    // Straight-line chords of every triangle traversal, grouped by triangle.
    struct ChordRef {
        int joint;
        size_t gap;
        detail::RealChord c;
    };
    std::vector<std::vector<ChordRef>> by_tri(T.num_triangles());
    for (int s = 0; s < nstrands; ++s) {
        int sys = s < int(A.size()) ? 0 : 1;
        const Strand& st = strand_of(s);
        for (size_t g = 0; g < st.passages.size(); ++g) {
            ChordRef r{s, g, detail::realize_chord(T, C1, C2, sys, st, g)};
            by_tri[r.c.tri].push_back(std::move(r));
        }
    }

    // All transversal crossings of the realization. The realization need not
    // be in minimal position yet; excess pairs are removed as empty bigons
    // below.
    std::vector<detail::JointCrossing> cr;
    for (const auto& lst : by_tri)
        for (const ChordRef& x : lst) {
            if (x.joint >= int(A.size())) continue;
            for (const ChordRef& y : lst) {
                if (y.joint < int(A.size())) continue;
                detail::JointCrossing jc;
                if (!detail::chords_cross(x.c.a, x.c.b, y.c.a, y.c.b, jc.tx, jc.ty)) continue;
                jc.xs = x.joint;
                jc.ys = y.joint;
                jc.gx = x.gap;
                jc.gy = y.gap;
                // ccw germ order around the crossing point, from the chord
                // directions: y_out lies ccw-adjacent to x_out exactly when
                // det(dir_x, dir_y) > 0.
                detail::Pt dx{x.c.b.first - x.c.a.first, x.c.b.second - x.c.a.second};
                detail::Pt dy{y.c.b.first - y.c.a.first, y.c.b.second - y.c.a.second};
                Rat det = dx.first * dy.second - dx.second * dy.first;
                jc.rot = det > 0 ? std::array<int, 4>{0, 2, 1, 3} : std::array<int, 4>{0, 3, 1, 2};
                cr.push_back(std::move(jc));
            }
        }

    // Order the crossings along every strand by (triangle traversal, position
    // along the chord).
    std::vector<std::vector<int>> along(nstrands);
    auto gap_of = [&](const detail::JointCrossing& c, int joint) {
        return joint < int(A.size()) ? c.gx : c.gy;
    };
    auto t_of = [&](const detail::JointCrossing& c, int joint) -> const Rat& {
        return joint < int(A.size()) ? c.tx : c.ty;
    };
    auto sort_along = [&](int s) {
        std::sort(along[s].begin(), along[s].end(), [&](int ca, int cb) {
            size_t ga = gap_of(cr[ca], s), gb = gap_of(cr[cb], s);
            if (ga != gb) return ga < gb;
            return t_of(cr[ca], s) < t_of(cr[cb], s);
        });
    };
    for (size_t ci = 0; ci < cr.size(); ++ci) {
        along[cr[ci].xs].push_back(int(ci));
        along[cr[ci].ys].push_back(int(ci));
    }
    for (int s = 0; s < nstrands; ++s) sort_along(s);

    // Segment darts and face orbits of the 4-valent ribbon graph; rebuilt
    // after every bigon removal.
    struct Dart {
        int strand;
        size_t from, to;  // crossing ids at tail and head
        size_t lo, hi;    // gaps of the segment's endpoints, in strand order
        size_t steps;     // number of edge crossings along the segment
        bool fwd;
    };
    std::vector<Dart> darts;
    std::vector<std::array<int, 4>> away;            // per crossing, per germ: outgoing dart
    std::vector<std::vector<int>> faces;             // dart ids, in face order
    auto build_faces = [&]() {
        darts.clear();
        faces.clear();
        away.assign(cr.size(), {-1, -1, -1, -1});
        for (int s = 0; s < nstrands; ++s) {
            const auto& lst = along[s];
            if (lst.empty()) continue;
            const Strand& st = strand_of(s);
            size_t n = lst.size(), np = st.passages.size();
            for (size_t i = 0; i < n; ++i) {
                int ca = lst[i], cb = lst[(i + 1) % n];
                Dart d;
                d.strand = s;
                d.from = ca;
                d.to = cb;
                d.lo = gap_of(cr[ca], s);
                d.hi = gap_of(cr[cb], s);
                // The wrap-around segment travels the rest of the loop even
                // when both of its ends share a triangle traversal.
                d.steps = i + 1 == n ? d.hi + np - d.lo : d.hi - d.lo;
                if (d.steps > np) d.steps -= np;
                d.fwd = true;
                int fid = int(darts.size());
                darts.push_back(d);
                d.fwd = false;
                std::swap(d.from, d.to);
                darts.push_back(d);
                bool xr = s < int(A.size());
                away[ca][xr ? 1 : 3] = fid;      // outgoing germ at ca
                away[cb][xr ? 0 : 2] = fid + 1;  // incoming germ at cb, pointing back
            }
        }
        for (size_t ci = 0; ci < cr.size(); ++ci) {
            if (cr[ci].dead) continue;
            for (int gm = 0; gm < 4; ++gm)
                if (away[ci][gm] < 0) throw std::logic_error("boundary: missing germ dart");
        }
        // Face orbits: arrive via dart d, continue along the dart one step
        // clockwise from d's reversal in the ccw rotation.
        auto face_next = [&](int d) {
            size_t c = darts[d].to;
            int back = d ^ 1;
            const auto& r = cr[c].rot;
            int pos = -1;
            for (int i = 0; i < 4; ++i)
                if (away[c][r[i]] == back) pos = i;
            if (pos < 0) throw std::logic_error("boundary: dart not in rotation");
            return away[c][r[(pos + 3) % 4]];
        };
        std::vector<char> used(darts.size(), 0);
        for (size_t d0 = 0; d0 < darts.size(); ++d0) {
            if (used[d0]) continue;
            std::vector<int> f;
            int d = int(d0);
            do {
                used[d] = 1;
                f.push_back(d);
                d = face_next(d);
            } while (!used[d]);
            faces.push_back(std::move(f));
        }
    };

    // The slot itinerary of a face circuit: along each dart, the edges the
    // parallel boundary arc crosses, in travel direction.
    auto face_walk = [&](const std::vector<int>& f) {
        ClosedWalk w;
        for (int d : f) {
            const Dart& dt = darts[d];
            const Strand& st = strand_of(dt.strand);
            size_t n = st.passages.size();
            if (dt.fwd)
                for (size_t i = 1; i <= dt.steps; ++i)
                    w.push_back(st.passages[(dt.lo + i) % n].slot);
            else
                for (size_t i = 0; i < dt.steps; ++i)
                    w.push_back(T.glue[st.passages[(dt.lo + dt.steps - i) % n].slot]);
        }
        return w;
    };

    // Remove empty bigons until the picture is in minimal position: a face
    // with exactly two corners whose circuit is null-homotopic bounds a disc
    // (faces are complementary regions, so it is automatically innermost) and
    // its two crossings cancel. Punctured bigons reduce to peripheral
    // circuits and stay.
    while (true) {
        build_faces();
        bool removed = false;
        for (const auto& f : faces) {
            if (f.size() == 1) throw std::logic_error("boundary: monogon face");
            if (f.size() != 2) continue;
            if (!reduce_closed_walk(T, face_walk(f)).empty()) continue;
            size_t c1 = darts[f[0]].from, c2 = darts[f[0]].to;
            cr[c1].dead = cr[c2].dead = true;
            for (int s = 0; s < nstrands; ++s)
                std::erase_if(along[s],
                              [&](int ci) { return ci == int(c1) || ci == int(c2); });
            removed = true;
            break;
        }
        if (!removed) break;
    }
    size_t live = 0;
    for (const auto& c : cr)
        if (!c.dead) ++live;
    if (Int(live) != intersection_number(T, C1, C2))
        throw std::logic_error("boundary: realization not reduced to minimal position");

    std::vector<ClosedWalk> circuits;
    for (const auto& f : faces) circuits.push_back(face_walk(f));

    // Crossing-free strands: each parallel class contributes one annulus,
    // hence two boundary circles of the core's class.
    std::map<std::vector<int>, ClosedWalk> annuli;
    for (int s = 0; s < nstrands; ++s) {
        if (!along[s].empty()) continue;
        ClosedWalk w = detail::slot_view(T, strand_of(s), false);
        annuli[detail::closed_canon(T, w)] = w;
    }
    for (auto& [k, w] : annuli) {
        circuits.push_back(w);
        circuits.push_back(w);
    }

    // Reduce, classify, deduplicate, and sum the essential classes.
    std::map<std::vector<int>, Lamination> comps;
    for (const ClosedWalk& c : circuits) {
        ClosedWalk r = reduce_closed_walk(T, c);
        auto cls = classify_closed_walk(T, r);
        if (cls.kind != WalkClass::essential) continue;
        if (cls.multiplicity != 1)
            throw std::logic_error("boundary: essential circuit is a proper power");
        comps.emplace(detail::closed_canon(T, r), walk_lamination(T, r));
    }
    Lamination out(T);
    for (auto& [k, L] : comps) out = weight_sum(out, L);
    return out;
}

/// C1 and C2 jointly fill the surface exactly when every complementary piece
/// of their union is a disc or a once-punctured disc, i.e. when the
/// neighbourhood boundary has no essential component.
inline bool fills(const IdealTriangulation& T, const Lamination& C1, const Lamination& C2) {
    if (C1.is_zero() || C2.is_zero())
        throw std::invalid_argument("fills: inputs must be nonempty");
    return boundary_neighborhood(T, C1, C2).is_zero();
}

}  // namespace isofill

#pragma once

#include <algorithm>
#include <vector>

#include "isofill/surface/trace.hpp"

namespace isofill {

namespace detail {

/// One strand's crossings as the sequence of slots it enters.
inline std::vector<int> slot_view(const IdealTriangulation& T, const Strand& s, bool reversed) {
    size_t n = s.passages.size();
    std::vector<int> v(n);
    if (!reversed)
        for (size_t i = 0; i < n; ++i) v[i] = s.passages[i].slot;
    else
        for (size_t i = 0; i < n; ++i) v[i] = T.glue[s.passages[n - 1 - i].slot];
    return v;
}

inline std::vector<int> primitive_word(const std::vector<int>& s) {
    size_t n = s.size();
    for (size_t p = 1; p <= n; ++p) {
        if (n % p != 0) continue;
        bool ok = true;
        for (size_t i = 0; ok && i < n; ++i) ok = s[i] == s[(i + p) % n];
        if (ok) return std::vector<int>(s.begin(), s.begin() + p);
    }
    return s;
}

inline std::vector<int> min_rotation(const std::vector<int>& w) {
    size_t n = w.size();
    std::vector<int> best = w, cur(n);
    for (size_t r = 1; r < n; ++r) {
        for (size_t i = 0; i < n; ++i) cur[i] = w[(i + r) % n];
        if (cur < best) best = cur;
    }
    return best;
}

/// Canonical form of a closed itinerary up to rotation, direction, and
/// repetition, used to recognize strands parallel to a common geodesic.
inline std::vector<int> closed_canon(const IdealTriangulation& T, const std::vector<int>& slots) {
    std::vector<int> fwd = min_rotation(primitive_word(slots));
    std::vector<int> rev(slots.size());
    for (size_t i = 0; i < slots.size(); ++i) rev[i] = T.glue[slots[slots.size() - 1 - i]];
    std::vector<int> bwd = min_rotation(primitive_word(rev));
    return std::min(fwd, bwd);
}

/// Which side of a corridor the strand leaves to, behind the first matched
/// crossing: the strand arrives into tri(v[i]) through `prev` and the
/// corridor continues through the mate of v[i]; +1 / -1 distinguishes the two
/// remaining sides of that triangle.
inline int back_end(const IdealTriangulation& T, const std::vector<int>& v, size_t i) {
    size_t n = v.size();
    int prev = v[(i + n - 1) % n];
    int exit = T.glue[v[i]];
    if (IdealTriangulation::tri(prev) != IdealTriangulation::tri(exit))
        throw std::logic_error("corridor: disconnected back end");
    int x = IdealTriangulation::side(exit), s = IdealTriangulation::side(prev);
    if (s == x) throw std::logic_error("corridor: strand backtracks");
    return s == (x + 1) % 3 ? -1 : +1;
}

/// Same, in front of the last matched crossing: the strand leaves tri(v[q])
/// through the mate of v[(q+1) % n].
inline int front_end(const IdealTriangulation& T, const std::vector<int>& v, size_t q) {
    size_t n = v.size();
    int exit = T.glue[v[(q + 1) % n]];
    if (IdealTriangulation::tri(exit) != IdealTriangulation::tri(v[q]))
        throw std::logic_error("corridor: disconnected front end");
    int y = IdealTriangulation::side(v[q]), s = IdealTriangulation::side(exit);
    if (s == y) throw std::logic_error("corridor: strand backtracks");
    return s == (y + 1) % 3 ? +1 : -1;
}

/// Location of one essential crossing between strands a and b.
struct StrandCrossing {
    size_t a_pos;   // between a.passages[a_pos-1] and [a_pos % size]
    size_t b_pos;   // forward passage index of b entering the shared triangle
    bool reversed;  // b runs through the corridor against a's direction
};

/// Essential crossings from maximal shared edge-runs of u against one
/// directed view vb of strand b. Two closed strands cross exactly when the
/// four divergence ends of a maximal common corridor are linked, i.e. the
/// strands separate on opposite sides at the back and at the front.
inline void corridor_crossings(const IdealTriangulation& T, const std::vector<int>& u,
                               const std::vector<int>& vb, bool rev,
                               std::vector<StrandCrossing>& out) {
    size_t nu = u.size(), nv = vb.size();
    if (nu == 0 || nv == 0) return;
    for (size_t i = 0; i < nu; ++i) {
        for (size_t j = 0; j < nv; ++j) {
            if (u[i] != vb[j]) continue;
            // maximal start: no shared crossing immediately behind
            if (u[(i + nu - 1) % nu] == vb[(j + nv - 1) % nv]) continue;
            size_t m = 1;
            while (u[(i + m) % nu] == vb[(j + m) % nv])
                if (++m > nu + nv) throw std::logic_error("corridor: unbounded shared run");
            int ub = back_end(T, u, i), uf = front_end(T, u, (i + m - 1) % nu);
            int bb = back_end(T, vb, j), bf = front_end(T, vb, (j + m - 1) % nv);
            if (ub == bb || uf == bf) throw std::logic_error("corridor: ends do not diverge");
            if (ub != uf) {
                size_t bj = rev ? nv - 1 - j : j;
                out.push_back({i + 1, bj, rev});
            }
        }
    }
}

/// All essential crossings between two traced closed strands in minimal
/// position, with a's positions in forward order.
inline std::vector<StrandCrossing> strand_crossings(const IdealTriangulation& T, const Strand& a,
                                                    const Strand& b) {
    std::vector<StrandCrossing> out;
    if (a.parallel_edge >= 0 || b.parallel_edge >= 0)
        throw std::invalid_argument("strand_crossings: edge-parallel strands handled separately");
    std::vector<int> u = slot_view(T, a, false);
    std::vector<int> vf = slot_view(T, b, false), vr = slot_view(T, b, true);
    if (closed_canon(T, u) == closed_canon(T, vf))
        return out;  // parallel to a common closed geodesic
    corridor_crossings(T, u, vf, false, out);
    corridor_crossings(T, u, vr, true, out);
    return out;
}

}  // namespace detail

/// Geometric intersection number of two laminations on T: closed components
/// are paired through corridor analysis, and each arc component carried by
/// an edge meets a transverse strand once per crossing of that edge.
inline Int intersection_number(const IdealTriangulation& T, const Lamination& A,
                               const Lamination& B) {
    std::vector<Strand> sa = trace_strands(T, A), sb = trace_strands(T, B);
    Int total = 0;
    for (const Strand& x : sa)
        for (const Strand& y : sb) {
            if (x.parallel_edge >= 0 || y.parallel_edge >= 0) continue;
            total += Int(detail::strand_crossings(T, x, y).size());
        }
    for (int e = 0; e < T.num_edges(); ++e) {
        Int na = A.w[e] < 0 ? -A.w[e] : Int(0), nb = B.w[e] < 0 ? -B.w[e] : Int(0);
        total += na * B.transverse(e) + nb * A.transverse(e);
    }
    return total;
}

}  // namespace isofill

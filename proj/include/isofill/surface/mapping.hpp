#pragma once

#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "isofill/surface/flip.hpp"
#include "isofill/surface/walks.hpp"

namespace isofill {

/// One elementary move in a mapping-class word: an edge flip, or a
/// relabeling isomorphism of the current triangulation onto a target one.
struct MappingMove {
    int flip = -1;              // >= 0: flip this edge
    std::vector<int> slot_map;  // nonempty: relabel slots s -> slot_map[s]
    std::vector<int> edge_map;  // induced edge bijection
    std::vector<int> es_first;  // edge_slots.first of the resulting triangulation

    bool is_flip() const { return flip >= 0; }
};

/// A mapping class, encoded as a closed loop of flips and relabelings based
/// at a fixed triangulation: after the whole word the triangulation returns
/// to `base` exactly, so the word acts on weight vectors.
struct MappingClass {
    IdealTriangulation base;
    std::vector<MappingMove> word;
};

namespace detail {

inline void apply_relabel(const MappingMove& m, IdealTriangulation& T, Lamination* L) {
    const auto& pi = m.slot_map;
    IdealTriangulation T2 = T;
    for (int s = 0; s < T.num_slots(); ++s) {
        T2.glue[pi[s]] = pi[T.glue[s]];
        T2.edge_of[pi[s]] = m.edge_map[T.edge_of[s]];
        T2.vertex_of[pi[s]] = T.vertex_of[s];
    }
    for (int e = 0; e < T.num_edges(); ++e) {
        int a = pi[T.edge_slots[e].first], b = pi[T.edge_slots[e].second];
        int e2 = m.edge_map[e];
        T2.edge_slots[e2] = m.es_first[e2] == a ? std::make_pair(a, b) : std::make_pair(b, a);
        if (T2.edge_slots[e2].first != m.es_first[e2])
            throw std::logic_error("relabel: inconsistent edge slot table");
    }
    if (L) {
        Lamination L2 = *L;
        for (int e = 0; e < T.num_edges(); ++e) L2.w[m.edge_map[e]] = L->w[e];
        *L = std::move(L2);
    }
    T = std::move(T2);
}

/// Total transverse weight of a nonnegative lamination.
inline Int transverse_total(const Lamination& L) {
    Int t = 0;
    for (const Int& w : L.w) t += w;
    return t;
}

inline std::vector<Int> state_signature(const IdealTriangulation& T, const Lamination& L) {
    std::vector<Int> sig;
    sig.reserve(T.num_slots() + L.w.size());
    for (int g : T.glue) sig.push_back(g);
    for (const Int& w : L.w) sig.push_back(w);
    return sig;
}

/// Greedy weight-reducing flips (ties broken by lowest edge index), with a
/// breadth-first detour across equal-weight plateaus when no single flip
/// reduces the total. Returns the flip sequence that brings `b` to total
/// transverse weight 2 (an annulus position), mutating T and b.
inline std::vector<int> shorten_to_annulus(IdealTriangulation& T, Lamination& b) {
    std::vector<int> flips;
    const std::size_t plateau_cap = 50000;
    while (transverse_total(b) > 2) {
        Int cur = transverse_total(b);
        int best = -1;
        Int best_total = cur;
        for (int e = 0; e < T.num_edges(); ++e) {
            if (!flippable(T, e)) continue;
            IdealTriangulation Tc = T;
            Lamination bc = b;
            flip_edge(Tc, e, {&bc});
            Int t = transverse_total(bc);
            if (t < best_total) {
                best_total = t;
                best = e;
            }
        }
        if (best >= 0) {
            flip_edge(T, best, {&b});
            flips.push_back(best);
            continue;
        }
        // Plateau: search equal-weight states for one that admits a
        // strictly-reducing flip.
        struct Node {
            IdealTriangulation T;
            Lamination b;
            std::vector<int> path;
        };
        std::map<std::vector<Int>, char> seen;
        std::queue<Node> q;
        seen[state_signature(T, b)] = 1;
        q.push({T, b, {}});
        bool advanced = false;
        while (!q.empty() && !advanced) {
            Node n = std::move(q.front());
            q.pop();
            for (int e = 0; e < n.T.num_edges() && !advanced; ++e) {
                if (!flippable(n.T, e)) continue;
                IdealTriangulation Tc = n.T;
                Lamination bc = n.b;
                flip_edge(Tc, e, {&bc});
                Int t = transverse_total(bc);
                if (t > cur) continue;
                auto sig = state_signature(Tc, bc);
                if (seen.count(sig)) continue;
                seen[sig] = 1;
                std::vector<int> path = n.path;
                path.push_back(e);
                if (t < cur) {
                    for (int f : path) flip_edge(T, f, {&b});
                    flips.insert(flips.end(), path.begin(), path.end());
                    advanced = true;
                    break;
                }
                if (seen.size() > plateau_cap)
                    throw std::runtime_error("dehn_twist: curve cannot be shortened further");
                q.push({std::move(Tc), std::move(bc), std::move(path)});
            }
        }
        if (!advanced) throw std::runtime_error("dehn_twist: curve cannot be shortened further");
    }
    return flips;
}

/// Search for a relabeling isomorphism of Tf onto Tc that fixes every slot
/// outside the two triangles adjacent to edge e, matches puncture labels, and
/// carries weights bf to bc. Returns the move, or nothing.
inline std::optional<MappingMove> annulus_relabel(const IdealTriangulation& Tc,
                                                  const Lamination& bc,
                                                  const IdealTriangulation& Tf,
                                                  const Lamination& bf, int e) {
    int ta = IdealTriangulation::tri(Tc.edge_slots[e].first);
    int tb = IdealTriangulation::tri(Tc.edge_slots[e].second);
    const int S = Tc.num_slots(), E = Tc.num_edges();
    for (int swap = 0; swap < 2; ++swap) {
        int ia = swap ? tb : ta, ib = swap ? ta : tb;
        for (int ra = 0; ra < 3; ++ra) {
            for (int rb = 0; rb < 3; ++rb) {
                std::vector<int> pi(S);
                for (int s = 0; s < S; ++s) pi[s] = s;
                for (int s = 0; s < 3; ++s) {
                    pi[IdealTriangulation::slot(ta, s)] = IdealTriangulation::slot(ia, s + ra);
                    pi[IdealTriangulation::slot(tb, s)] = IdealTriangulation::slot(ib, s + rb);
                }
                bool id = true;
                for (int s = 0; s < S && id; ++s) id = pi[s] == s;
                if (id) continue;
                bool ok = true;
                for (int s = 0; s < S && ok; ++s) ok = pi[Tf.glue[s]] == Tc.glue[pi[s]];
                for (int s = 0; s < S && ok; ++s) ok = Tc.vertex_of[pi[s]] == Tf.vertex_of[s];
                if (!ok) continue;
                std::vector<int> em(E, -1);
                for (int s = 0; s < S && ok; ++s) {
                    int& m = em[Tf.edge_of[s]];
                    if (m < 0)
                        m = Tc.edge_of[pi[s]];
                    else
                        ok = m == Tc.edge_of[pi[s]];
                }
                if (!ok) continue;
                for (int x = 0; x < E && ok; ++x) ok = bc.w[em[x]] == bf.w[x];
                if (!ok) continue;
                MappingMove mv;
                mv.slot_map = std::move(pi);
                mv.edge_map = std::move(em);
                mv.es_first.resize(E);
                for (int x = 0; x < E; ++x) mv.es_first[x] = Tc.edge_slots[x].first;
                return mv;
            }
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Act on a lamination: replay the word from the base triangulation,
/// transporting the weights through every flip and relabeling.
inline Lamination apply(const MappingClass& mc, const Lamination& L) {
    IdealTriangulation T = mc.base;
    Lamination out = L;
    for (const MappingMove& m : mc.word) {
        if (m.is_flip())
            flip_edge(T, m.flip, {&out});
        else
            detail::apply_relabel(m, T, &out);
    }
    return out;
}

/// Formal inverse: the reversed word with every move inverted. Flips are
/// their own inverses at the state where they occur.
inline MappingClass inverse(const MappingClass& mc) {
    IdealTriangulation T = mc.base;
    std::vector<MappingMove> inv;
    for (const MappingMove& m : mc.word) {
        if (m.is_flip()) {
            inv.push_back(m);
            flip_edge(T, m.flip);
            continue;
        }
        MappingMove r;
        r.slot_map.resize(m.slot_map.size());
        r.edge_map.resize(m.edge_map.size());
        for (std::size_t s = 0; s < m.slot_map.size(); ++s) r.slot_map[m.slot_map[s]] = int(s);
        for (std::size_t x = 0; x < m.edge_map.size(); ++x) r.edge_map[m.edge_map[x]] = int(x);
        r.es_first.resize(T.num_edges());
        for (int x = 0; x < T.num_edges(); ++x) r.es_first[x] = T.edge_slots[x].first;
        inv.push_back(std::move(r));
        detail::apply_relabel(m, T, nullptr);
    }
    std::reverse(inv.begin(), inv.end());
    return {mc.base, std::move(inv)};
}

/// Concatenation: first mc1's word, then mc2's (both based at the same
/// triangulation), acting as mc2 after mc1.
inline MappingClass compose(const MappingClass& mc1, const MappingClass& mc2) {
    MappingClass out = mc1;
    out.word.insert(out.word.end(), mc2.word.begin(), mc2.word.end());
    return out;
}

/// The k-th power of the Dehn twist about the simple closed curve b: shorten
/// b by flips to an annulus position (total transverse weight 2), realize one
/// twist there as a flip followed by a relabeling isomorphism, and conjugate
/// back. The handedness is a fixed deterministic choice.
inline MappingClass dehn_twist(const IdealTriangulation& T, const Lamination& b, long k = 1) {
    if (!b.is_multicurve_shape())
        throw std::invalid_argument("dehn_twist: core must be a multicurve, not an arc system");
    auto strands = trace_strands(T, b);
    if (strands.size() != 1 || !strands[0].closed)
        throw std::invalid_argument("dehn_twist: core must be a single closed curve");
    if (!is_essential(T, b)) throw std::invalid_argument("dehn_twist: core must be essential");

    MappingClass mc{T, {}};
    if (k == 0) return mc;

    IdealTriangulation Tc = T;
    Lamination bc = b;
    std::vector<int> shorten = detail::shorten_to_annulus(Tc, bc);

    // One twist at the annulus: flip one of the two crossed edges, then map
    // the result back onto Tc by a label isomorphism fixing b.
    std::vector<MappingMove> core;
    for (int e = 0; e < Tc.num_edges() && core.empty(); ++e) {
        if (bc.w[e] == 0 || !flippable(Tc, e)) continue;
        IdealTriangulation Tf = Tc;
        Lamination bf = bc;
        flip_edge(Tf, e, {&bf});
        auto rel = detail::annulus_relabel(Tc, bc, Tf, bf, e);
        if (!rel) continue;
        MappingMove fm;
        fm.flip = e;
        core.push_back(fm);
        core.push_back(std::move(*rel));
    }
    if (core.empty()) throw std::runtime_error("dehn_twist: no annulus relabeling found");

    for (int f : shorten) {
        MappingMove m;
        m.flip = f;
        mc.word.push_back(m);
    }
    if (k > 0) {
        for (long i = 0; i < k; ++i)
            mc.word.insert(mc.word.end(), core.begin(), core.end());
    } else {
        // Inverse core: undo the relabel, then flip the diagonal back.
        MappingClass one{Tc, core};
        MappingClass inv_one = inverse(one);
        for (long i = 0; i < -k; ++i)
            mc.word.insert(mc.word.end(), inv_one.word.begin(), inv_one.word.end());
    }
    for (auto it = shorten.rbegin(); it != shorten.rend(); ++it) {
        MappingMove m;
        m.flip = *it;
        mc.word.push_back(m);
    }
    return mc;
}

}  // namespace isofill

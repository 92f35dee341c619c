#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "isofill/core/disc.hpp"
#include "isofill/core/flag_complex.hpp"

namespace isofill {

/// Result of a budgeted minimal filling search. Either a witness filling of
/// minimal triangle count, or exhaustion of the budget. `upper_bound_only` is
/// set when the oracle cannot enumerate insertion candidates exhaustively, in
/// which case a success is only an upper bound and exhaustion proves nothing
/// outside the explored universe.
struct FillResult {
    std::optional<std::pair<TriangulatedDisc, SimplicialFillingMap>> filling;
    std::size_t triangle_count = 0;
    int budget = 0;
    bool upper_bound_only = false;
    std::uint64_t nodes_explored = 0;

    bool success() const { return filling.has_value(); }
};

namespace detail {

/// Exact minimal disc filling cost of a boundary word, within a budget.
///
/// Moves on the cyclic image word, each reflecting a disc construction:
///   ear(i):       images at i-1, i+1 adjacent or equal; one triangle, drop i.
///                 (Spurs, where the two images are equal, are ears with a
///                 degenerate triangle: a spur cannot cost zero, because any
///                 disc whose boundary walks the full n-gon has >= n-2
///                 triangles.)
///   chord(i, j):  nonconsecutive, images adjacent or equal; zero triangles,
///                 split into two independent subwords.
///   insert(i, u): u adjacent-or-equal to both endpoints of edge (i, i+1);
///                 one triangle, word grows by one.
/// A 3-word is one triangle.
class FillSearch {
public:
    FillSearch(const AdjacencyOracle& oracle) : oracle_(oracle) {}

    std::uint64_t nodes = 0;

    std::optional<int> solve(const std::vector<VertexId>& word, int budget) {
        ++nodes;
        const int n = static_cast<int>(word.size());
        if (n - 2 > budget) return std::nullopt;
        if (n == 3) return budget >= 1 ? std::optional<int>(1) : std::nullopt;

        CombLoop canon = CombLoop{word}.canonical();
        auto it = memo_.find(canon);
        if (it != memo_.end()) {
            const Entry& e = it->second;
            if (e.cost) return *e.cost <= budget ? e.cost : std::nullopt;  // cost is globally exact
            if (budget <= e.budget) return std::nullopt;
        }

        std::optional<int> best;
        auto offer = [&](std::optional<int> c) {
            if (c && (!best || *c < *best)) best = c;
        };
        // Work on the canonical rotation so the memo and the deterministic
        // tie-break agree across relabelings of the same cyclic word.
        const std::vector<VertexId>& w = canon.vertices;
        int cap = budget;

        for (const Move& m : moves(w, cap)) {
            switch (m.kind) {
                case Move::Chord: {
                    auto [s1, s2] = split(w, m.i, m.j);
                    // Shorter side first: it fails fastest and tightens cap.
                    if (s1.size() > s2.size()) std::swap(s1, s2);
                    auto c1 = solve(s1, cap - (static_cast<int>(s2.size()) - 2));
                    if (!c1) break;
                    auto c2 = solve(s2, cap - *c1);
                    if (!c2) break;
                    offer(*c1 + *c2);
                    break;
                }
                case Move::Ear: {
                    auto c = solve(erase_at(w, m.i), cap - 1);
                    if (c) offer(*c + 1);
                    break;
                }
                case Move::Insert: {
                    auto c = solve(insert_after(w, m.i, m.u), cap - 1);
                    if (c) offer(*c + 1);
                    break;
                }
            }
            if (best) cap = std::min(cap, *best - 1);  // only look for strictly better
            if (cap < static_cast<int>(w.size()) - 2) break;
        }

        if (best)
            memo_[canon] = Entry{budget, best};
        else if (it == memo_.end() || budget > it->second.budget)
            memo_[canon] = Entry{budget, std::nullopt};
        return best;
    }

    /// Re-derives the first (in move enumeration order) optimal plan and emits
    /// triangles over the given local vertex labels.
    void emit(const std::vector<VertexId>& word, std::vector<int> locals, int cost,
              std::vector<std::array<int, 3>>& tris, std::map<int, VertexId>& img, int& next_local) {
        const int n = static_cast<int>(word.size());
        for (int k = 0; k < n; ++k) img.emplace(locals[k], word[k]);
        if (n == 3) {
            tris.push_back({locals[0], locals[1], locals[2]});
            return;
        }
        // emit() runs on the caller's labeling, not the canonical rotation, so
        // re-search move order here; costs come from the memoized solve.
        for (const Move& m : moves(word, cost)) {
            switch (m.kind) {
                case Move::Chord: {
                    auto [s1, s2] = split(word, m.i, m.j);
                    auto [l1, l2] = split_locals(locals, m.i, m.j);
                    auto c1 = solve(s1, cost);
                    if (!c1) break;
                    auto c2 = solve(s2, cost - *c1);
                    if (!c2 || *c1 + *c2 != cost) break;
                    emit(s1, l1, *c1, tris, img, next_local);
                    emit(s2, l2, *c2, tris, img, next_local);
                    return;
                }
                case Move::Ear: {
                    auto rest = erase_at(word, m.i);
                    auto c = solve(rest, cost - 1);
                    if (!c || *c + 1 != cost) break;
                    const int n_ = n;
                    tris.push_back({locals[(m.i + n_ - 1) % n_], locals[m.i], locals[(m.i + 1) % n_]});
                    std::vector<int> rl = locals;
                    rl.erase(rl.begin() + m.i);
                    emit(rest, rl, *c, tris, img, next_local);
                    return;
                }
                case Move::Insert: {
                    auto grown = insert_after(word, m.i, m.u);
                    auto c = solve(grown, cost - 1);
                    if (!c || *c + 1 != cost) break;
                    int w = next_local++;
                    img.emplace(w, m.u);
                    tris.push_back({locals[m.i], locals[(m.i + 1) % n], w});
                    std::vector<int> gl = locals;
                    gl.insert(gl.begin() + m.i + 1, w);
                    emit(grown, gl, *c, tris, img, next_local);
                    return;
                }
            }
        }
        throw std::logic_error("fill plan reconstruction diverged from search");
    }

private:
    struct Entry {
        int budget = 0;                // budget the verdict was computed under
        std::optional<int> cost;       // exact minimum when present
    };

    struct Move {
        enum Kind { Chord, Ear, Insert } kind;
        int i = 0, j = 0;
        VertexId u{};
    };

    bool joinable(VertexId a, VertexId b) const { return a == b || oracle_.are_adjacent(a, b); }

    std::vector<Move> moves(const std::vector<VertexId>& w, int budget) const {
        const int n = static_cast<int>(w.size());
        std::vector<Move> out;
        for (int i = 0; i < n; ++i)
            for (int j = i + 2; j < n; ++j) {
                if (i == 0 && j == n - 1) continue;  // consecutive cyclically
                if (joinable(w[i], w[j])) out.push_back({Move::Chord, i, j, {}});
            }
        for (int i = 0; i < n; ++i)
            if (joinable(w[(i + n - 1) % n], w[(i + 1) % n])) out.push_back({Move::Ear, i, 0, {}});
        // Inserts only pay off if the grown word is still affordable.
        if (n - 1 <= budget) {
            for (int i = 0; i < n; ++i) {
                auto cand = oracle_.candidate_neighbors(w[i], w[(i + 1) % n]);
                if (!cand) continue;
                std::sort(cand->begin(), cand->end());
                for (VertexId u : *cand) out.push_back({Move::Insert, i, 0, u});
            }
        }
        return out;
    }

    static std::vector<VertexId> erase_at(const std::vector<VertexId>& w, int i) {
        std::vector<VertexId> out = w;
        out.erase(out.begin() + i);
        return out;
    }

    static std::vector<VertexId> insert_after(const std::vector<VertexId>& w, int i, VertexId u) {
        std::vector<VertexId> out = w;
        out.insert(out.begin() + i + 1, u);
        return out;
    }

    static std::pair<std::vector<VertexId>, std::vector<VertexId>> split(const std::vector<VertexId>& w,
                                                                         int i, int j) {
        std::vector<VertexId> a(w.begin() + i, w.begin() + j + 1);
        std::vector<VertexId> b(w.begin() + j, w.end());
        b.insert(b.end(), w.begin(), w.begin() + i + 1);
        return {a, b};
    }

    static std::pair<std::vector<int>, std::vector<int>> split_locals(const std::vector<int>& w, int i,
                                                                      int j) {
        std::vector<int> a(w.begin() + i, w.begin() + j + 1);
        std::vector<int> b(w.begin() + j, w.end());
        b.insert(b.end(), w.begin(), w.begin() + i + 1);
        return {a, b};
    }

    const AdjacencyOracle& oracle_;
    std::map<CombLoop, Entry> memo_;
};

}  // namespace detail

inline FillResult minimal_fill(const CombLoop& loop, const AdjacencyOracle& oracle, int budget) {
    if (budget <= 0) throw std::invalid_argument("minimal_fill: budget must be positive");
    if (!validate_loop(loop, oracle)) throw std::invalid_argument("minimal_fill: invalid loop");

    // Words shorter than 3 are padded with repeats; the boundary then maps
    // onto the loop monotonically rather than bijectively.
    std::vector<VertexId> word = loop.vertices;
    while (word.size() < 3) word.push_back(word.back());

    detail::FillSearch search(oracle);
    FillResult result;
    result.budget = budget;
    result.upper_bound_only = !oracle.is_finite();
    auto cost = search.solve(word, budget);
    result.nodes_explored = search.nodes;
    if (!cost) return result;

    TriangulatedDisc p;
    SimplicialFillingMap f;
    std::vector<int> locals(word.size());
    for (std::size_t k = 0; k < word.size(); ++k) locals[k] = static_cast<int>(k);
    int next_local = static_cast<int>(word.size());
    search.emit(word, locals, *cost, p.triangles, f.assignment, next_local);
    p.boundary = locals;
    result.filling = {std::move(p), std::move(f)};
    result.triangle_count = result.filling->first.triangle_count();
    return result;
}

/// Replayable exhaustion certificate: the deterministic search, run over an
/// exhaustively enumerable complex, explored every word reachable inside the
/// budget and found no filling.
struct InfeasibilityCertificate {
    CombLoop loop;  // canonical form
    int budget = 0;
    std::size_t universe_vertices = 0;
    std::size_t universe_edges = 0;
    std::uint64_t nodes_explored = 0;
};

inline std::ostream& operator<<(std::ostream& out, const InfeasibilityCertificate& c) {
    out << "infeasible v1\n";
    out << "loop";
    for (VertexId v : c.loop.vertices) out << " " << v.id;
    out << "\nbudget " << c.budget << "\nuniverse " << c.universe_vertices << " " << c.universe_edges
        << "\nnodes " << c.nodes_explored << "\n";
    return out;
}

inline std::optional<InfeasibilityCertificate> certify_infeasible_within(const CombLoop& loop,
                                                                         const AdjacencyOracle& oracle,
                                                                         int budget) {
    if (!oracle.is_finite())
        throw CapabilityError("certify_infeasible_within requires an enumerable complex");
    if (budget < 0) throw std::invalid_argument("certify_infeasible_within: negative budget");
    if (budget == 0) {
        // Every filling is a triangulated surface, hence nonempty.
        InfeasibilityCertificate cert;
        cert.loop = loop.canonical();
        cert.budget = 0;
        cert.universe_vertices = oracle.vertices()->size();
        if (auto* f = dynamic_cast<const FiniteFlagComplex*>(&oracle)) cert.universe_edges = f->edge_count();
        return cert;
    }
    FillResult r = minimal_fill(loop, oracle, budget);
    if (r.success()) return std::nullopt;
    InfeasibilityCertificate cert;
    cert.loop = loop.canonical();
    cert.budget = budget;
    cert.universe_vertices = oracle.vertices()->size();
    cert.nodes_explored = r.nodes_explored;
    // Edge count is only available on concrete finite complexes.
    if (auto* f = dynamic_cast<const FiniteFlagComplex*>(&oracle)) cert.universe_edges = f->edge_count();
    return cert;
}

/// Flag-complex 1-skeleton of the suspension of the integer line, truncated to
/// |n| <= window. The two cone points get ids window+1 and -(window+1). Every
/// integer vertex is joined to both cone points and to its neighbors; the cone
/// points are not joined to each other.
inline FiniteFlagComplex truncated_suspension(int window, VertexId* top = nullptr,
                                              VertexId* bottom = nullptr) {
    if (window < 1) throw std::invalid_argument("suspension window must be >= 1");
    FiniteFlagComplex k;
    VertexId p{window + 1}, q{-(window + 1)};
    k.add_vertex(p);
    k.add_vertex(q);
    for (int n = -window; n <= window; ++n) {
        k.add_vertex({n});
        k.add_edge({n}, p);
        k.add_edge({n}, q);
        if (n > -window) k.add_edge({n - 1}, {n});
    }
    if (top) *top = p;
    if (bottom) *bottom = q;
    return k;
}

}  // namespace isofill

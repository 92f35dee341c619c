#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace isofill {

/// Opaque vertex handle. For finite complexes these are plain integers; for
/// oracle-backed complexes (curve/arc complexes) they index laminations held
/// by the oracle.
struct VertexId {
    std::int64_t id = 0;

    friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

struct UnknownVertexError : std::runtime_error {
    explicit UnknownVertexError(VertexId v)
        : std::runtime_error("unknown vertex id " + std::to_string(v.id)), vertex(v) {}
    VertexId vertex;
};

struct CapabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Edge relation of a flag complex. A flag complex is determined by its
/// 1-skeleton, so the oracle only answers pairwise adjacency; simplices are
/// cliques. Oracles must be pure: same answer for the same pair, all session.
class AdjacencyOracle {
public:
    virtual ~AdjacencyOracle() = default;

    virtual bool has_vertex(VertexId v) const = 0;

    /// Symmetric, irreflexive. Throws UnknownVertexError for foreign ids.
    virtual bool are_adjacent(VertexId u, VertexId v) const = 0;

    /// Finite vertex enumeration, when the complex supports it.
    virtual std::optional<std::vector<VertexId>> vertices() const { return std::nullopt; }

    /// Vertices adjacent to both u and v. Exhaustive when vertices() is
    /// available; otherwise a window (nullopt = unsupported).
    virtual std::optional<std::vector<VertexId>> candidate_neighbors(VertexId u, VertexId v) const;

    bool is_finite() const { return vertices().has_value(); }

protected:
    void require_vertex(VertexId v) const {
        if (!has_vertex(v)) throw UnknownVertexError(v);
    }
};

inline std::optional<std::vector<VertexId>> AdjacencyOracle::candidate_neighbors(VertexId u,
                                                                                 VertexId v) const {
    auto all = vertices();
    if (!all) return std::nullopt;
    std::vector<VertexId> out;
    for (VertexId w : *all) {
        if (w == u || w == v) continue;
        if (are_adjacent(w, u) && are_adjacent(w, v)) out.push_back(w);
    }
    return out;
}

/// Finite flag complex given by vertices and edges; all simplices are implied.
class FiniteFlagComplex : public AdjacencyOracle {
public:
    FiniteFlagComplex() = default;

    void add_vertex(VertexId v) { vertices_.insert(v); }

    void add_edge(VertexId u, VertexId v) {
        if (u == v) throw std::invalid_argument("flag complex: loop edge");
        vertices_.insert(u);
        vertices_.insert(v);
        edges_.insert(ordered(u, v));
    }

    bool has_vertex(VertexId v) const override { return vertices_.count(v) > 0; }

    bool are_adjacent(VertexId u, VertexId v) const override {
        require_vertex(u);
        require_vertex(v);
        if (u == v) return false;
        return edges_.count(ordered(u, v)) > 0;
    }

    std::optional<std::vector<VertexId>> vertices() const override {
        return std::vector<VertexId>(vertices_.begin(), vertices_.end());
    }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::set<std::pair<VertexId, VertexId>>& edges() const { return edges_; }

private:
    static std::pair<VertexId, VertexId> ordered(VertexId u, VertexId v) {
        return u < v ? std::make_pair(u, v) : std::make_pair(v, u);
    }

    std::set<VertexId> vertices_;
    std::set<std::pair<VertexId, VertexId>> edges_;
};

/// Combinatorial loop: cyclic vertex sequence where consecutive entries are
/// adjacent or equal. Length is the number of entries (edges), j >= 1.
struct CombLoop {
    std::vector<VertexId> vertices;

    std::size_t length() const { return vertices.size(); }

    VertexId at(std::size_t i) const { return vertices[i % vertices.size()]; }

    bool has_distinct_vertices() const {
        std::set<VertexId> s(vertices.begin(), vertices.end());
        return s.size() == vertices.size();
    }

    /// Lexicographically minimal rotation+reflection; memoization key.
    CombLoop canonical() const {
        if (vertices.empty()) return *this;
        std::vector<VertexId> best = vertices;
        const std::size_t n = vertices.size();
        auto consider = [&](const std::vector<VertexId>& seq) {
            for (std::size_t r = 0; r < n; ++r) {
                std::vector<VertexId> rot(n);
                for (std::size_t i = 0; i < n; ++i) rot[i] = seq[(i + r) % n];
                if (rot < best) best = std::move(rot);
            }
        };
        consider(vertices);
        std::vector<VertexId> rev(vertices.rbegin(), vertices.rend());
        consider(rev);
        return CombLoop{std::move(best)};
    }

    friend bool operator==(const CombLoop& a, const CombLoop& b) = default;
    friend auto operator<=>(const CombLoop& a, const CombLoop& b) = default;
};

/// True iff every cyclically consecutive pair is adjacent or equal.
/// Unknown vertices surface as UnknownVertexError, distinct from "not a loop".
inline bool validate_loop(const CombLoop& loop, const AdjacencyOracle& oracle) {
    if (loop.vertices.empty()) return false;
    for (VertexId v : loop.vertices) {
        if (!oracle.has_vertex(v)) throw UnknownVertexError(v);
    }
    const std::size_t n = loop.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        VertexId u = loop.vertices[i];
        VertexId v = loop.vertices[(i + 1) % n];
        if (u != v && !oracle.are_adjacent(u, v)) return false;
    }
    return true;
}

}  // namespace isofill

#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "isofill/core/flag_complex.hpp"
#include "isofill/surface/walks.hpp"

namespace isofill {

/// Flag complex of essential curve/arc systems on a fixed surface: vertices
/// are essential laminations (registered on demand, deduplicated by weight
/// vector), and two distinct vertices are adjacent when their laminations
/// have disjoint representatives.
///
/// The complex is infinite; vertices() is unavailable. When a finite search
/// window of curves is installed, candidate_neighbors enumerates the window
/// entries disjoint from both query vertices (registering them as needed).
class LaminationComplex : public AdjacencyOracle {
public:
    explicit LaminationComplex(const IdealTriangulation& T) : T_(&T) {}

    const IdealTriangulation& surface() const { return *T_; }

    /// Register a lamination (idempotent) and return its vertex id.
    VertexId vertex(const Lamination& L) const {
        if (!is_essential(*T_, L))
            throw std::invalid_argument("lamination complex: vertex must be essential");
        auto [it, fresh] = ids_.try_emplace(L.w, VertexId{std::int64_t(verts_.size())});
        if (fresh) verts_.push_back(L);
        return it->second;
    }

    const Lamination& lamination(VertexId v) const {
        require_vertex(v);
        return verts_[std::size_t(v.id)];
    }

    bool has_vertex(VertexId v) const override {
        return v.id >= 0 && v.id < std::int64_t(verts_.size());
    }

    bool are_adjacent(VertexId u, VertexId v) const override {
        require_vertex(u);
        require_vertex(v);
        if (u == v) return false;  // distinct ids hold distinct weight vectors
        return misses(*T_, verts_[std::size_t(u.id)], verts_[std::size_t(v.id)]);
    }

    /// Install a finite list of curves to answer candidate_neighbors from.
    void set_window(std::vector<Lamination> window) { window_ = std::move(window); }

    std::optional<std::vector<VertexId>> candidate_neighbors(VertexId u,
                                                             VertexId v) const override {
        if (window_.empty()) return std::nullopt;
        const Lamination &a = lamination(u), &b = lamination(v);
        std::vector<VertexId> out;
        for (const Lamination& c : window_) {
            if (c == a || c == b) continue;
            if (misses(*T_, c, a) && misses(*T_, c, b)) out.push_back(vertex(c));
        }
        return out;
    }

private:
    const IdealTriangulation* T_;
    mutable std::vector<Lamination> verts_;
    mutable std::map<std::vector<Int>, VertexId> ids_;
    std::vector<Lamination> window_;
};

/// All essential one-component closed curves whose edge weights are at most
/// wmax, in lexicographic weight order. A bounded, deterministic search
/// window for common-neighbor and bridge queries.
inline std::vector<Lamination> curve_window(const IdealTriangulation& T, Int wmax) {
    const int E = T.num_edges();
    std::vector<Lamination> out;
    Lamination L(T);
    // Odometer over [0, wmax]^E, least-significant edge last for lex order.
    while (true) {
        if (!L.is_zero() && valid_lamination(T, L)) {
            std::vector<Strand> st = trace_strands(T, L);
            if (st.size() == 1 && st[0].parallel_edge < 0 && st[0].multiplicity == 1 &&
                is_essential(T, L))
                out.push_back(L);
        }
        int i = E - 1;
        while (i >= 0 && L.w[i] == wmax) L.w[i--] = 0;
        if (i < 0) break;
        L.w[i] += 1;
    }
    return out;
}

}  // namespace isofill

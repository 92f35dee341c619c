#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "isofill/core/flag_complex.hpp"
#include "isofill/exact.hpp"

namespace isofill {

struct Point {
    Rat x, y;

    friend bool operator==(const Point&, const Point&) = default;
};

inline Rat sq_dist(const Point& a, const Point& b) {
    Rat dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

/// One isometry type of a piecewise-Euclidean cell: squared side lengths.
/// dimension 1 = segment (one length), 2 = triangle (three lengths, sides
/// opposite to local vertices 0,1,2).
struct EuclideanShape {
    int dimension = 2;
    std::array<Rat, 3> sq = {0, 0, 0};

    /// 16 * squared area via Heron on squared lengths; meaningful for dim 2.
    Rat sixteen_area_sq() const {
        const Rat &a = sq[0], &b = sq[1], &c = sq[2];
        return 2 * a * b + 2 * b * c + 2 * c * a - a * a - b * b - c * c;
    }

    /// Strict nondegeneracy: positive length(s), positive area for triangles
    /// (the Cayley-Menger sign condition in these dimensions).
    bool nondegenerate() const {
        if (dimension == 1) return sq[0] > 0;
        return sq[0] > 0 && sq[1] > 0 && sq[2] > 0 && sixteen_area_sq() > 0;
    }

    friend auto operator<=>(const EuclideanShape&, const EuclideanShape&) = default;
};

/// Finite flag complex with Euclidean metric data. Two-simplices are the
/// 3-cliques of the skeleton (flagness). Edge lengths come from the planar
/// embedding when one is given.
class MetricFlagComplex {
public:
    FiniteFlagComplex skeleton;

    void set_coord(VertexId v, Point p) {
        skeleton.add_vertex(v);
        coords_[v] = p;
    }

    bool has_embedding() const {
        return !coords_.empty() && coords_.size() == skeleton.vertex_count();
    }

    const Point& coord(VertexId v) const {
        auto it = coords_.find(v);
        if (it == coords_.end()) throw UnknownVertexError(v);
        return it->second;
    }

    void set_edge_sq(VertexId u, VertexId v, const Rat& sq) {
        skeleton.add_edge(u, v);
        edge_sq_[key(u, v)] = sq;
    }

    Rat edge_sq(VertexId u, VertexId v) const {
        auto it = edge_sq_.find(key(u, v));
        if (it != edge_sq_.end()) return it->second;
        if (!coords_.empty() && skeleton.are_adjacent(u, v)) return sq_dist(coord(u), coord(v));
        throw std::invalid_argument("no metric for edge " + std::to_string(u.id) + "-" +
                                    std::to_string(v.id));
    }

    /// All 2-simplices: 3-cliques of the skeleton, vertex-sorted.
    std::vector<std::array<VertexId, 3>> triangles() const {
        std::vector<std::array<VertexId, 3>> out;
        auto verts = skeleton.vertices();
        for (auto [u, v] : skeleton.edges())
            for (VertexId w : *verts)
                if (v < w && skeleton.are_adjacent(u, w) && skeleton.are_adjacent(v, w))
                    out.push_back({u, v, w});
        return out;
    }

    /// The finite shape table: one entry per distinct isometry type.
    std::set<EuclideanShape> shape_table() const {
        std::set<EuclideanShape> table;
        for (auto [u, v] : skeleton.edges()) table.insert({1, {edge_sq(u, v), 0, 0}});
        for (const auto& t : triangles()) {
            std::array<Rat, 3> sq = {edge_sq(t[1], t[2]), edge_sq(t[0], t[2]), edge_sq(t[0], t[1])};
            std::sort(sq.begin(), sq.end());
            table.insert({2, sq});
        }
        return table;
    }

private:
    static std::pair<VertexId, VertexId> key(VertexId u, VertexId v) {
        return u < v ? std::make_pair(u, v) : std::make_pair(v, u);
    }

    std::map<VertexId, Point> coords_;
    std::map<std::pair<VertexId, VertexId>, Rat> edge_sq_;
};

/// Bounded-shapes validator: the maximal edge length D (squared), and the
/// subdivision count ceil(D/delta) per edge. Always succeeds on a finite
/// table; kept as a result type for symmetry with thickness.
struct BoundedShapes {
    Rat max_edge_sq = 0;

    Int pieces(const Rat& delta) const {
        if (delta <= 0) throw std::invalid_argument("check_bounded: delta must be positive");
        return ceil_sqrt(max_edge_sq / (delta * delta));
    }
};

inline BoundedShapes check_bounded(const MetricFlagComplex& k) {
    BoundedShapes out;
    for (auto [u, v] : k.skeleton.edges()) out.max_edge_sq = std::max(out.max_edge_sq, k.edge_sq(u, v));
    return out;
}

/// Thick-shapes validator. Per shape, the barycentric-star separation:
///   segment of length l: the star of an endpoint reaches the midpoint, so the
///     distance to the other endpoint is l/2;
///   triangle: distance from the star N(v) to the opposite side. The nearest
///     star point is the barycenter, at distance (2*Area/l_opp)/3.
/// eps = min over the table; a degenerate shape is a failure witness.
struct ThickShapes {
    bool ok = false;
    Rat eps_sq = 0;
    std::optional<EuclideanShape> witness;  // degenerate shape on failure
};

inline ThickShapes check_thick(const MetricFlagComplex& k) {
    ThickShapes out;
    std::optional<Rat> best;
    for (const EuclideanShape& s : k.shape_table()) {
        if (!s.nondegenerate()) {
            out.witness = s;
            return out;
        }
        if (s.dimension == 1) {
            Rat cand = s.sq[0] / 4;
            if (!best || cand < *best) best = cand;
        } else {
            // (altitude/3)^2 = ((2A/l)^2)/9 = (16A^2) / (36 * l^2)
            Rat a16 = s.sixteen_area_sq();
            for (int i = 0; i < 3; ++i) {
                Rat cand = a16 / (36 * s.sq[i]);
                if (!best || cand < *best) best = cand;
            }
        }
    }
    if (!best || *best <= 0) return out;
    out.ok = true;
    out.eps_sq = *best;
    return out;
}

/// Right-triangle grid over [0,w] x [0,h] with unit cells, each split along
/// the lower-left to upper-right diagonal. Vertex (i,j) has id j*(w+1)+i.
inline MetricFlagComplex unit_grid(int w, int h) {
    MetricFlagComplex k;
    auto id = [&](int i, int j) { return VertexId{static_cast<std::int64_t>(j) * (w + 1) + i}; };
    for (int j = 0; j <= h; ++j)
        for (int i = 0; i <= w; ++i) k.set_coord(id(i, j), {i, j});
    for (int j = 0; j <= h; ++j)
        for (int i = 0; i <= w; ++i) {
            if (i < w) k.skeleton.add_edge(id(i, j), id(i + 1, j));
            if (j < h) k.skeleton.add_edge(id(i, j), id(i, j + 1));
            if (i < w && j < h) k.skeleton.add_edge(id(i, j), id(i + 1, j + 1));
        }
    return k;
}

/// Counterclockwise boundary loop of unit_grid(w, h), starting at (0,0).
inline CombLoop grid_boundary(int w, int h) {
    auto id = [&](int i, int j) { return VertexId{static_cast<std::int64_t>(j) * (w + 1) + i}; };
    CombLoop c;
    for (int i = 0; i < w; ++i) c.vertices.push_back(id(i, 0));
    for (int j = 0; j < h; ++j) c.vertices.push_back(id(w, j));
    for (int i = w; i > 0; --i) c.vertices.push_back(id(i, h));
    for (int j = h; j > 0; --j) c.vertices.push_back(id(0, j));
    return c;
}

/// Truncated suspension-of-the-line complex with its planar embedding
/// (cone points at (0,±1), integer vertices on the x-axis accumulating toward
/// the cone abscissas). Abscissas are clamped past |n| = 2, so truncations
/// with M >= 3 contain degenerate shapes: the executable form of "the
/// thickness hypothesis is necessary".
inline MetricFlagComplex suspension_complex(int m) {
    if (m < 1) throw std::invalid_argument("suspension truncation must be >= 1");
    MetricFlagComplex k;
    VertexId p{m + 1}, q{-(m + 1)};
    k.set_coord(p, {0, 1});
    k.set_coord(q, {0, -1});
    auto abscissa = [](int n) -> Rat {
        int a = std::min(std::abs(n), 2);
        Rat r = 1 - Rat(1, Int(1) << a);
        return n < 0 ? -r : r;
    };
    for (int n = -m; n <= m; ++n) {
        k.set_coord({n}, {abscissa(n), 0});
        k.skeleton.add_edge({n}, p);
        k.skeleton.add_edge({n}, q);
        if (n > -m) k.skeleton.add_edge({n - 1}, {n});
    }
    return k;
}

}  // namespace isofill

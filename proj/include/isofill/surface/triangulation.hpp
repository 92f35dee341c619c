#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "isofill/exact.hpp"

namespace isofill {

/// Ideal triangulation of an oriented punctured surface: every vertex is a
/// puncture. Triangles are triples of directed side slots glued in pairs.
///
/// Conventions (load-bearing throughout the surface code):
///  - triangle t has sides 0,1,2 listed counterclockwise; slot id = 3t+s;
///  - side s runs from corner s to corner s+1 (indices mod 3);
///  - corner s sits between sides s-1 and s; the side opposite corner s is
///    side s+1;
///  - gluing reverses side direction (both triangles counterclockwise), so
///    corner s of one triangle meets corner s'+1 of the other;
///  - points along an edge are ordered by the side direction of the edge's
///    first slot; seen from the second slot the order reverses.
class IdealTriangulation {
public:
    std::vector<int> glue;                         // slot -> glued slot
    std::vector<int> edge_of;                      // slot -> edge id
    std::vector<std::pair<int, int>> edge_slots;   // edge -> its two slots
    std::vector<int> vertex_of;                    // corner (3t+s) -> puncture id
    int genus = 0;
    int punctures = 0;

    int num_triangles() const { return static_cast<int>(glue.size()) / 3; }
    int num_edges() const { return static_cast<int>(edge_slots.size()); }
    int num_slots() const { return static_cast<int>(glue.size()); }

    static int tri(int slot) { return slot / 3; }
    static int side(int slot) { return slot % 3; }
    static int slot(int t, int s) { return 3 * t + ((s % 3) + 3) % 3; }

    /// The other slot of the same edge.
    int mate(int sl) const { return glue[sl]; }

    /// Corner rotation around a vertex: from corner s of t, cross side s and
    /// land on the matching corner of the neighbor.
    int next_corner_about_vertex(int corner) const {
        int m = glue[corner];  // corner s crosses side s
        return slot(tri(m), side(m) + 1);
    }

    /// True when the edge's endpoints (as punctures) coincide.
    int vertex_at_corner(int t, int s) const { return vertex_of[slot(t, s)]; }

    /// Edge endpoints: side s runs corner s -> corner s+1.
    std::pair<int, int> edge_endpoints(int e) const {
        int sl = edge_slots[e].first;
        return {vertex_of[slot(tri(sl), side(sl))], vertex_of[slot(tri(sl), side(sl) + 1)]};
    }

    /// True if the points on edge e, in canonical edge order, run in the same
    /// direction as side `sl` of its triangle.
    bool slot_is_forward(int sl) const { return edge_slots[edge_of[sl]].first == sl; }

    void check() const {
        const int S = num_slots();
        if (S % 3 != 0) throw std::logic_error("triangulation: slot count");
        for (int s = 0; s < S; ++s) {
            if (glue[s] == s || glue[s] < 0 || glue[s] >= S || glue[glue[s]] != s)
                throw std::logic_error("triangulation: gluing is not a free involution");
            if (edge_of[s] != edge_of[glue[s]]) throw std::logic_error("triangulation: edge ids");
        }
        if (2 * num_edges() != S) throw std::logic_error("triangulation: 2E != 3F");
        // connectivity over triangle adjacency
        std::vector<char> seen(num_triangles(), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            for (int s = 0; s < 3; ++s) {
                int u = tri(glue[slot(t, s)]);
                if (!seen[u]) {
                    seen[u] = 1;
                    stack.push_back(u);
                }
            }
        }
        if (!std::all_of(seen.begin(), seen.end(), [](char c) { return c; }))
            throw std::logic_error("triangulation: disconnected");
        // Euler characteristic vs declared type
        int chi = punctures - num_edges() + num_triangles();
        if (chi != 2 - 2 * genus) throw std::logic_error("triangulation: Euler characteristic");
        for (int c = 0; c < S; ++c)
            if (vertex_of[c] < 0 || vertex_of[c] >= punctures)
                throw std::logic_error("triangulation: corner vertex id");
    }

    /// Recompute vertex_of from corner orbits; returns the orbit count.
    int assign_vertices() {
        const int S = num_slots();
        vertex_of.assign(S, -1);
        int next = 0;
        for (int c = 0; c < S; ++c) {
            if (vertex_of[c] != -1) continue;
            int cur = c;
            do {
                vertex_of[cur] = next;
                cur = next_corner_about_vertex(cur);
            } while (cur != c);
            ++next;
        }
        punctures = next;
        return next;
    }

    /// Corners around vertex v in rotation order, starting from the lowest.
    std::vector<int> vertex_link(int v) const {
        int start = -1;
        for (int c = 0; c < num_slots() && start < 0; ++c)
            if (vertex_of[c] == v) start = c;
        std::vector<int> out;
        int cur = start;
        do {
            out.push_back(cur);
            cur = next_corner_about_vertex(cur);
        } while (cur != start);
        return out;
    }
};

namespace detail {

/// Glue two slots as one edge, appending to the edge table.
inline void glue_slots(IdealTriangulation& T, int a, int b) {
    T.glue[a] = b;
    T.glue[b] = a;
    T.edge_of[a] = T.edge_of[b] = static_cast<int>(T.edge_slots.size());
    T.edge_slots.push_back({a, b});
}

/// Split triangle t into three around a fresh puncture. The original sides
/// keep their slots; two new triangles are appended.
inline void subdivide(IdealTriangulation& T, int t) {
    // New triangles u, v. Layout: t keeps its side 0 as side 0 and gains new
    // edges; u takes old side 1; v takes old side 2.
    int old1 = T.glue[IdealTriangulation::slot(t, 1)];
    int old2 = T.glue[IdealTriangulation::slot(t, 2)];
    int u = T.num_triangles(), v = u + 1;
    T.glue.resize(T.glue.size() + 6, -1);
    T.edge_of.resize(T.glue.size(), -1);
    // Re-glue the outer sides: u side 0 <- old side 1 of t, v side 0 <- old side 2.
    int us0 = IdealTriangulation::slot(u, 0), vs0 = IdealTriangulation::slot(v, 0);
    T.glue[us0] = old1;
    T.glue[old1] = us0;
    T.edge_of[us0] = T.edge_of[old1];
    auto& e1 = T.edge_slots[T.edge_of[old1]];
    (e1.first == IdealTriangulation::slot(t, 1) ? e1.first : e1.second) = us0;
    T.glue[vs0] = old2;
    T.glue[old2] = vs0;
    T.edge_of[vs0] = T.edge_of[old2];
    auto& e2 = T.edge_slots[T.edge_of[old2]];
    (e2.first == IdealTriangulation::slot(t, 2) ? e2.first : e2.second) = vs0;
    // Interior edges: with X the new puncture, t = (c0, c1, X), u = (c1, c2, X),
    // v = (c2, c0, X). Sides: t1 = c1->X glued to u2 = X->c1; u1 = c2->X glued
    // to v2 = X->c2; v1 = c0->X glued to t2 = X->c0.
    glue_slots(T, IdealTriangulation::slot(t, 1), IdealTriangulation::slot(u, 2));
    glue_slots(T, IdealTriangulation::slot(u, 1), IdealTriangulation::slot(v, 2));
    glue_slots(T, IdealTriangulation::slot(v, 1), IdealTriangulation::slot(t, 2));
}

}  // namespace detail

/// Canonical triangulation of the surface with genus g and p punctures.
/// Requires 2 - 2g - p < 0. Deterministic: the same (g, p) always yields the
/// same triangulation, which anchors the lamination file format.
inline IdealTriangulation new_surface(int g, int p) {
    if (g < 0 || p < 1 || 2 - 2 * g - p >= 0)
        throw std::invalid_argument("new_surface: surface type is not hyperbolic");
    IdealTriangulation T;
    T.genus = g;
    if (g == 0) {
        // Thrice-punctured sphere: the double of a triangle.
        T.glue.assign(6, -1);
        T.edge_of.assign(6, -1);
        detail::glue_slots(T, IdealTriangulation::slot(0, 0), IdealTriangulation::slot(1, 2));
        detail::glue_slots(T, IdealTriangulation::slot(0, 1), IdealTriangulation::slot(1, 1));
        detail::glue_slots(T, IdealTriangulation::slot(0, 2), IdealTriangulation::slot(1, 0));
        for (int i = 0; i < p - 3; ++i) detail::subdivide(T, 0);
    } else {
        // Fan triangulation of the 4g-gon a1 b1 a1' b1' a2 ...; one vertex.
        int n = 4 * g;
        T.glue.assign(3 * (n - 2), -1);
        T.edge_of.assign(T.glue.size(), -1);
        // triangle k = (0, k+1, k+2) for k = 0..n-3; its sides:
        //   side 0: (0, k+1)   = diagonal d_{k+1}  (or polygon side 0 when k = 0)
        //   side 1: (k+1, k+2) = polygon side k+1
        //   side 2: (k+2, 0)   = diagonal d_{k+2}  (or polygon side n-1 when k = n-3)
        // First the interior diagonals d_j, j = 2..n-2: side 2 of triangle j-2
        // glues to side 0 of triangle j-1.
        for (int j = 2; j <= n - 2; ++j)
            detail::glue_slots(T, IdealTriangulation::slot(j - 2, 2),
                               IdealTriangulation::slot(j - 1, 0));
        // Polygon sides: side j lives at slot:
        auto poly_slot = [&](int j) {
            if (j == 0) return IdealTriangulation::slot(0, 0);
            if (j == n - 1) return IdealTriangulation::slot(n - 3, 2);
            return IdealTriangulation::slot(j - 1, 1);
        };
        for (int i = 0; i < g; ++i) {
            detail::glue_slots(T, poly_slot(4 * i), poly_slot(4 * i + 2));
            detail::glue_slots(T, poly_slot(4 * i + 1), poly_slot(4 * i + 3));
        }
        for (int i = 0; i < p - 1; ++i) detail::subdivide(T, 0);
    }
    T.assign_vertices();
    T.punctures = p;  // assign_vertices counted orbits; must agree
    T.check();
    return T;
}

}  // namespace isofill

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "isofill/core/flag_complex.hpp"

namespace isofill {

/// One side of one triangle: side s of triangle t runs from corner s to
/// corner s+1 (mod 3).
struct SideRef {
    int tri = -1;
    int side = -1;

    friend auto operator<=>(const SideRef&, const SideRef&) = default;
};

/// A triangulated compact surface with exactly one boundary component,
/// genus g (g = 0 is the disc of Definition "capping off"). Local vertices
/// are small integers; identifications are by id, with side gluings derived
/// from shared id pairs unless supplied explicitly.
struct TriangulatedDisc {
    std::vector<std::array<int, 3>> triangles;
    std::vector<int> boundary;  // cyclic local vertex sequence
    int genus = 0;
    // Optional explicit side pairing; when empty it is derived from ids.
    std::vector<std::pair<SideRef, SideRef>> gluings;

    std::size_t triangle_count() const { return triangles.size(); }

    int local_vertex_count() const {
        std::set<int> s;
        for (const auto& t : triangles) s.insert(t.begin(), t.end());
        for (int v : boundary) s.insert(v);
        return static_cast<int>(s.size());
    }

    std::array<int, 2> side_vertices(SideRef s) const {
        const auto& t = triangles[s.tri];
        return {t[s.side], t[(s.side + 1) % 3]};
    }
};

inline std::size_t count_triangles(const TriangulatedDisc& p) { return p.triangle_count(); }

/// Local vertex id -> target complex vertex.
struct SimplicialFillingMap {
    std::map<int, VertexId> assignment;

    VertexId at(int local) const {
        auto it = assignment.find(local);
        if (it == assignment.end())
            throw std::invalid_argument("filling map: unassigned local vertex " + std::to_string(local));
        return it->second;
    }
};

enum class BoundaryMode { Bijective, MonotoneOnto };

enum class FillingFault {
    None,
    NonSurfaceGluing,    // a side used more than twice / inconsistent pairing
    MultipleBoundaries,  // boundary walk does not close into a single cycle
    EulerMismatch,       // V - E + F != 1 - 2g
    PinchedVertex,       // vertex link is not a single fan
    NonSimplexImage,     // some triangle image is not pairwise adjacent-or-equal
    BoundaryMismatch,    // boundary does not map onto the loop in the given mode
};

struct FillingCheck {
    FillingFault fault = FillingFault::None;
    std::string detail;

    bool ok() const { return fault == FillingFault::None; }
    explicit operator bool() const { return ok(); }

    bool structural_fault() const {
        return fault == FillingFault::NonSurfaceGluing || fault == FillingFault::MultipleBoundaries ||
               fault == FillingFault::EulerMismatch || fault == FillingFault::PinchedVertex;
    }
};

namespace detail {

struct DiscTopology {
    std::vector<std::pair<SideRef, SideRef>> interior;  // glued side pairs
    std::vector<SideRef> boundary_sides;                // boundary cycle, in walk order
    std::size_t edge_count = 0;
    std::optional<FillingCheck> fault;
};

/// Derive/validate the side pairing and walk the boundary. The boundary walk
/// starts from an arbitrary boundary side and follows shared endpoints.
inline DiscTopology analyze_disc(const TriangulatedDisc& p) {
    DiscTopology out;
    auto fail = [&](FillingFault f, std::string d) {
        out.fault = FillingCheck{f, std::move(d)};
        return out;
    };

    const int nt = static_cast<int>(p.triangles.size());
    for (const auto& t : p.triangles) {
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
            return fail(FillingFault::NonSurfaceGluing, "triangle with repeated local vertex");
    }

    std::map<SideRef, SideRef> pairing;
    if (!p.gluings.empty()) {
        for (const auto& [a, b] : p.gluings) {
            if (pairing.count(a) || pairing.count(b) || a == b)
                return fail(FillingFault::NonSurfaceGluing, "side glued twice");
            auto va = p.side_vertices(a), vb = p.side_vertices(b);
            if (!(va[0] == vb[1] && va[1] == vb[0]))
                return fail(FillingFault::NonSurfaceGluing, "glued sides have mismatched endpoints");
            pairing[a] = b;
            pairing[b] = a;
        }
    } else {
        std::map<std::pair<int, int>, std::vector<SideRef>> by_pair;
        for (int t = 0; t < nt; ++t)
            for (int s = 0; s < 3; ++s) {
                auto v = p.side_vertices({t, s});
                auto key = std::minmax(v[0], v[1]);
                by_pair[{key.first, key.second}].push_back({t, s});
            }
        for (auto& [key, sides] : by_pair) {
            if (sides.size() > 2)
                return fail(FillingFault::NonSurfaceGluing,
                            "edge {" + std::to_string(key.first) + "," + std::to_string(key.second) +
                                "} lies in more than two triangles");
            if (sides.size() == 2) {
                auto va = p.side_vertices(sides[0]), vb = p.side_vertices(sides[1]);
                if (!(va[0] == vb[1] && va[1] == vb[0]))
                    return fail(FillingFault::NonSurfaceGluing, "inconsistent orientation across edge {" +
                                                                    std::to_string(key.first) + "," +
                                                                    std::to_string(key.second) + "}");
                pairing[sides[0]] = sides[1];
                pairing[sides[1]] = sides[0];
            }
        }
    }

    std::vector<SideRef> boundary_sides;
    for (int t = 0; t < nt; ++t)
        for (int s = 0; s < 3; ++s)
            if (!pairing.count({t, s})) boundary_sides.push_back({t, s});

    if (boundary_sides.empty())
        return fail(FillingFault::MultipleBoundaries, "closed surface: no boundary component");

    // Walk the boundary: from side (t,s) ending at vertex w, the next boundary
    // side is found by rotating around w through glued sides.
    auto next_around = [&](SideRef s) -> SideRef {
        // Side after s in the walk: rotate around the head vertex of s.
        SideRef cur{s.tri, (s.side + 1) % 3};  // next side of same triangle, shares head of s
        while (true) {
            auto it = pairing.find(cur);
            if (it == pairing.end()) return cur;
            SideRef twin = it->second;
            cur = {twin.tri, (twin.side + 1) % 3};
        }
    };

    std::set<SideRef> on_boundary(boundary_sides.begin(), boundary_sides.end());
    std::vector<SideRef> walk;
    SideRef start = boundary_sides.front();
    SideRef cur = start;
    do {
        walk.push_back(cur);
        cur = next_around(cur);
        if (walk.size() > boundary_sides.size())
            return fail(FillingFault::MultipleBoundaries, "boundary walk does not close properly");
    } while (cur != start);

    if (walk.size() != boundary_sides.size())
        return fail(FillingFault::MultipleBoundaries, "more than one boundary component");

    out.edge_count = pairing.size() / 2 + boundary_sides.size();
    for (auto& [a, b] : pairing)
        if (a < b) out.interior.emplace_back(a, b);
    out.boundary_sides = std::move(walk);
    return out;
}

/// Can cyclic sequence `b` be written as `c` traversed once, monotonically,
/// with each entry repeated >= 1 times? Allows rotation and reflection.
inline bool monotone_onto(const std::vector<VertexId>& b, const std::vector<VertexId>& c) {
    const std::size_t m = b.size(), n = c.size();
    if (m < n || n == 0) return false;
    auto try_dir = [&](const std::vector<VertexId>& bb) {
        for (std::size_t rb = 0; rb < m; ++rb) {
            for (std::size_t rc = 0; rc < n; ++rc) {
                // Greedy-with-backtracking is unnecessary: DP over (i, j).
                // state: after matching first i of bb, loop pointer at j (0..n).
                std::vector<std::set<std::size_t>> reach(m + 1);
                if (bb[rb % m] == c[rc % n]) reach[1].insert(1);
                for (std::size_t i = 1; i < m; ++i) {
                    for (std::size_t j : reach[i]) {
                        VertexId x = bb[(rb + i) % m];
                        if (x == c[(rc + j - 1) % n]) reach[i + 1].insert(j);
                        if (j < n && x == c[(rc + j) % n]) reach[i + 1].insert(j + 1);
                    }
                }
                if (reach[m].count(n)) return true;
            }
        }
        return false;
    };
    if (try_dir(b)) return true;
    std::vector<VertexId> rev(b.rbegin(), b.rend());
    return try_dir(rev);
}

inline bool cyclic_equal(const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
    if (a.size() != b.size()) return false;
    const std::size_t n = a.size();
    auto eq_rot = [&](const std::vector<VertexId>& x) {
        for (std::size_t r = 0; r < n; ++r) {
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i) ok = x[(i + r) % n] == b[i];
            if (ok) return true;
        }
        return false;
    };
    if (eq_rot(a)) return true;
    std::vector<VertexId> rev(a.rbegin(), a.rend());
    return eq_rot(rev);
}

}  // namespace detail

/// Structural validity of P alone: surface gluing, one boundary component
/// matching the declared cycle, Euler characteristic V - E + F = 1 - 2g,
/// single fan around each vertex.
inline FillingCheck validate_disc(const TriangulatedDisc& p) {
    if (p.triangles.empty()) return {FillingFault::EulerMismatch, "empty triangulation"};
    auto topo = detail::analyze_disc(p);
    if (topo.fault) return *topo.fault;

    // Boundary walk must match the declared boundary cycle.
    std::vector<int> walk_verts;
    for (SideRef s : topo.boundary_sides) walk_verts.push_back(p.side_vertices(s)[0]);
    {
        std::vector<VertexId> a, b;
        for (int v : walk_verts) a.push_back({v});
        for (int v : p.boundary) b.push_back({v});
        if (!detail::cyclic_equal(a, b))
            return {FillingFault::MultipleBoundaries, "declared boundary does not match boundary walk"};
    }

    const long long V = p.local_vertex_count();
    const long long E = static_cast<long long>(topo.edge_count);
    const long long F = static_cast<long long>(p.triangles.size());
    if (V - E + F != 1 - 2LL * p.genus)
        return {FillingFault::EulerMismatch,
                "V-E+F = " + std::to_string(V - E + F) + ", expected " + std::to_string(1 - 2 * p.genus)};

    // Fan condition: corners at each vertex form one orbit under side gluing.
    {
        std::map<SideRef, SideRef> pairing;
        for (auto& [a, b] : topo.interior) {
            pairing[a] = b;
            pairing[b] = a;
        }
        std::map<int, std::vector<std::pair<int, int>>> corners;  // vertex -> (tri, corner)
        for (int t = 0; t < static_cast<int>(p.triangles.size()); ++t)
            for (int c = 0; c < 3; ++c) corners[p.triangles[t][c]].push_back({t, c});
        for (auto& [v, cs] : corners) {
            // Rotate clockwise from corner (t,c): cross side c (from corner c).
            std::set<std::pair<int, int>> seen;
            std::pair<int, int> cur = cs.front();
            // First rewind counterclockwise to a boundary corner if any.
            for (std::size_t steps = 0; steps <= cs.size(); ++steps) {
                SideRef prev_side{cur.first, (cur.second + 2) % 3};
                auto it = pairing.find(prev_side);
                if (it == pairing.end()) break;
                cur = {it->second.tri, it->second.side};
                if (cur == cs.front() && steps > 0) break;  // interior vertex, full cycle
            }
            std::pair<int, int> head = cur;
            for (std::size_t steps = 0; steps < cs.size() + 1; ++steps) {
                seen.insert(cur);
                SideRef fwd{cur.first, cur.second};
                auto it = pairing.find(fwd);
                if (it == pairing.end()) break;
                cur = {it->second.tri, (it->second.side + 1) % 3};
                if (cur == head) break;
            }
            if (seen.size() != cs.size())
                return {FillingFault::PinchedVertex, "vertex " + std::to_string(v) + " has a pinched link"};
        }
    }

    return {};
}

/// Full filling check: P valid, every triangle image
/// spans a simplex (pairwise adjacent-or-equal vertices; flagness supplies the
/// simplex), and the boundary maps onto the loop in the requested mode.
inline FillingCheck validate_filling(const TriangulatedDisc& p, const SimplicialFillingMap& f,
                                     const CombLoop& loop, const AdjacencyOracle& oracle,
                                     BoundaryMode mode) {
    FillingCheck structural = validate_disc(p);
    if (!structural) return structural;

    for (std::size_t t = 0; t < p.triangles.size(); ++t) {
        VertexId img[3] = {f.at(p.triangles[t][0]), f.at(p.triangles[t][1]), f.at(p.triangles[t][2])};
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                if (img[i] == img[j]) continue;
                if (!oracle.are_adjacent(img[i], img[j]))
                    return {FillingFault::NonSimplexImage,
                            "triangle " + std::to_string(t) + " image is not a simplex"};
            }
    }

    std::vector<VertexId> bimg;
    for (int v : p.boundary) bimg.push_back(f.at(v));
    bool boundary_ok = mode == BoundaryMode::Bijective ? detail::cyclic_equal(bimg, loop.vertices)
                                                       : detail::monotone_onto(bimg, loop.vertices);
    if (!boundary_ok) return {FillingFault::BoundaryMismatch, "boundary image does not match loop"};
    return {};
}

}  // namespace isofill

#pragma once

#include <array>
#include <map>
#include <set>
#include <vector>

#include "isofill/core/disc.hpp"
#include "isofill/hex/square.hpp"
#include "isofill/tighten/loop.hpp"

namespace isofill {

enum class ArcColor { red, blue };

/// Total coloring of a filling's local vertices: red ⟺ the image arc cuts
/// the side Y of the square's separating curve, blue ⟺ it misses Y (and
/// hence cuts Z).
struct TwoColoring {
    std::map<int, ArcColor> color;

    ArcColor at(int local) const {
        auto it = color.find(local);
        if (it == color.end())
            throw std::invalid_argument("coloring: uncolored local vertex " +
                                        std::to_string(local));
        return it->second;
    }
};

namespace detail {

/// The edge carrying a single-arc lamination; -1 when the lamination is not
/// one arc and nothing else.
inline int single_arc_edge(const Lamination& a) {
    int arc = -1;
    for (std::size_t e = 0; e < a.w.size(); ++e) {
        if (a.w[e] == 0) continue;
        if (a.w[e] != -1 || arc >= 0) return -1;
        arc = int(e);
    }
    return arc;
}

}  // namespace detail

/// Color every local vertex of a validated filling of the spec's square by
/// the cuts-Y test: an arc crossing γ enters Y essentially; an arc disjoint
/// from γ lies entirely in one piece.
inline TwoColoring color_filling(const TriangulatedDisc& P, const SimplicialFillingMap& f,
                                 const LaminationComplex& K, const SquareLoopSpec& spec) {
    CombLoop square;
    for (const Lamination& a : spec.arcs) square.vertices.push_back(K.vertex(a));
    FillingCheck chk = validate_filling(P, f, square, K, BoundaryMode::Bijective);
    if (!chk)
        throw std::invalid_argument("color_filling: not a filling of the square: " + chk.detail);

    TwoColoring out;
    std::set<int> locals;
    for (const auto& t : P.triangles) locals.insert(t.begin(), t.end());
    for (int v : P.boundary) locals.insert(v);
    for (int v : locals) {
        const Lamination& a = K.lamination(f.at(v));
        int e = detail::single_arc_edge(a);
        if (e < 0)
            throw std::invalid_argument("color_filling: image of local vertex " +
                                        std::to_string(v) + " is not an arc");
        bool red = intersection_number(spec.T, a, spec.gamma) != 0
                       ? true
                       : detail::edge_piece(spec.cutc, e) == spec.piece_Y;
        out.color[v] = red ? ArcColor::red : ArcColor::blue;
    }
    return out;
}

/// Monochromatic path extracted from a colored filling via the dual graph:
/// one node per triangle and per boundary edge, joined across bichromatic
/// edges. A triangle has 0 or 2 bichromatic sides, so every triangle node
/// has even degree and the four boundary nodes (the boundary 4-cycle
/// alternates colors) are exactly the degree-1 nodes.
struct GalePath {
    ArcColor color;
    std::vector<int> dual_nodes;   // triangles; >= nt are boundary-side nodes
    std::vector<VertexId> path;    // in the filling's 1-skeleton
};

inline GalePath gale_path(const TriangulatedDisc& P, const SimplicialFillingMap& f,
                          const LaminationComplex& K, const TwoColoring& col) {
    detail::DiscTopology topo = detail::analyze_disc(P);
    if (topo.fault) throw std::invalid_argument("gale_path: invalid disc: " + topo.fault->detail);
    if (topo.boundary_sides.size() != 4)
        throw std::invalid_argument("gale_path: boundary is not a 4-cycle");
    std::array<int, 4> w{};  // boundary corners in walk order
    for (int i = 0; i < 4; ++i) w[std::size_t(i)] = P.side_vertices(topo.boundary_sides[std::size_t(i)])[0];
    for (int i = 0; i < 4; ++i)
        if (col.at(w[std::size_t(i)]) == col.at(w[std::size_t((i + 1) % 4)]))
            throw std::invalid_argument("gale_path: boundary colors do not alternate");

    const int nt = int(P.triangles.size());
    // Dual edges across bichromatic P-edges, each tagged with that edge's
    // endpoints (as local vertices).
    std::vector<std::vector<std::pair<int, std::array<int, 2>>>> adj(std::size_t(nt) + 4);
    auto link = [&](int u, int v, std::array<int, 2> e) {
        adj[std::size_t(u)].push_back({v, e});
        adj[std::size_t(v)].push_back({u, e});
    };
    for (const auto& [a, b] : topo.interior) {
        auto va = P.side_vertices(a);
        if (col.at(va[0]) != col.at(va[1])) link(a.tri, b.tri, va);
    }
    for (int i = 0; i < 4; ++i) {
        SideRef s = topo.boundary_sides[std::size_t(i)];
        link(nt + i, s.tri, P.side_vertices(s));
    }
    for (int t = 0; t < nt; ++t)
        if (adj[std::size_t(t)].size() != 0 && adj[std::size_t(t)].size() != 2)
            throw std::logic_error("gale_path: triangle node of odd degree");

    // Walk from the first boundary node to its partner.
    GalePath out;
    int cur = nt, prev = -1;
    std::vector<std::array<int, 2>> crossed;
    out.dual_nodes.push_back(cur);
    while (true) {
        const auto& nb = adj[std::size_t(cur)];
        int next = -1;
        std::array<int, 2> edge{};
        for (const auto& [n, e] : nb)
            if (n != prev) {
                next = n;
                edge = e;
                break;
            }
        if (next < 0) throw std::logic_error("gale_path: dual path dead-ends");
        crossed.push_back(edge);
        out.dual_nodes.push_back(next);
        if (next >= nt) break;
        prev = cur;
        cur = next;
    }

    // The walk starts at the side (w0, w1); if it ends at a side containing
    // the corner w2 the col(w0)-colored endpoints run corner-to-corner,
    // otherwise (end side (w3, w0)) the other color does.
    int end = out.dual_nodes.back() - nt;
    ArcColor c0 = col.at(w[0]);
    out.color = (end == 1 || end == 2) ? c0 : (c0 == ArcColor::red ? ArcColor::blue : ArcColor::red);
    for (const auto& e : crossed) {
        int v = col.at(e[0]) == out.color ? e[0] : e[1];
        VertexId id = f.at(v);
        if (out.path.empty() || out.path.back() != id) out.path.push_back(id);
    }
    // Consecutive path vertices share a triangle of P, so they span an edge.
    for (std::size_t i = 0; i + 1 < out.path.size(); ++i)
        if (!K.are_adjacent(out.path[i], out.path[i + 1]))
            throw std::logic_error("gale_path: extracted path leaves the 1-skeleton");
    return out;
}

/// One vertex of the monochromatic path projected into the chosen piece:
/// a lamination of the piece when the vertex misses γ (transfer), or a cut
/// arc when it crosses γ (κ).
struct ProjectedArc {
    bool via_kappa = false;
    Lamination weights;  // piece coordinates, when !via_kappa
    CutArc arc;          // when via_kappa
};

/// Certificate tying a monochromatic path to an arc-graph distance bound:
/// the projection is 1-Lipschitz (disjoint systems have disjoint traces in
/// the piece), so the path length bounds d above, and any externally
/// certified lower bound L ≤ min-side-distance forces ≥ ⌈L/3⌉ triangles.
struct GaleCertificate {
    ArcColor color;
    int piece = -1;
    std::vector<int> dual_nodes;
    std::vector<VertexId> mono_path;
    std::vector<ProjectedArc> projected;
    std::size_t upper_bound = 0;  // d(ends of the path) ≤ this

    static std::size_t triangles_needed(std::size_t L) { return (L + 2) / 3; }
};

inline GaleCertificate project_and_bound(const GalePath& gp, const SquareLoopSpec& spec,
                                         const LaminationComplex& K) {
    GaleCertificate cert;
    cert.color = gp.color;
    cert.piece = gp.color == ArcColor::red ? spec.piece_Y : spec.piece_Z;
    cert.dual_nodes = gp.dual_nodes;
    cert.mono_path = gp.path;
    const IdealTriangulation& T = spec.T;
    const IdealTriangulation& piece = spec.cutc.pieces[std::size_t(cert.piece)].piece;

    for (std::size_t i = 0; i + 1 < gp.path.size(); ++i)
        if (!K.are_adjacent(gp.path[i], gp.path[i + 1]))
            throw std::logic_error("project_and_bound: consecutive path vertices cross");

    for (VertexId v : gp.path) {
        const Lamination& a = K.lamination(v);
        ProjectedArc pr;
        if (intersection_number(T, a, spec.gamma) != 0) {
            pr.via_kappa = true;
            ArcSystem sys = kappa(spec.cutc, a);
            bool found = false;
            for (const CutArc& ca : sys.arcs)
                if (ca.piece == cert.piece) {  // arcs are sorted; first hit is least
                    pr.arc = ca;
                    found = true;
                    break;
                }
            if (!found)
                throw std::logic_error("project_and_bound: vertex leaves no arc in the piece");
        } else {
            Lamination in_piece = transfer(spec.cutc, a)[std::size_t(cert.piece)];
            if (in_piece.is_zero())
                throw std::logic_error("project_and_bound: vertex has empty projection");
            pr.weights = detail::ordered_components(piece, in_piece).front();
        }
        cert.projected.push_back(std::move(pr));
    }
    cert.upper_bound = gp.path.empty() ? 0 : gp.path.size() - 1;
    return cert;
}

}  // namespace isofill

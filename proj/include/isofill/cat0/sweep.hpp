#pragma once

#include <string>
#include <vector>

#include "isofill/cat0/planar.hpp"
#include "isofill/core/disc.hpp"

namespace isofill {

/// A Lemma-style adjacency check failed during the sweep: the complex is not
/// actually as thick/CAT(0) as declared. Carries the offending vertices.
struct FalsificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Combinatorial path shadowing one geodesic from the basepoint: vertices
/// v_0..v_n with time fractions lam_0=0 <= ... <= lam_n=1 of the geodesic.
struct SweepPath {
    std::vector<VertexId> verts;
    std::vector<Rat> lams;
    Rat len_sq;  // squared geodesic length, so lam*len comparisons stay exact

    int n() const { return static_cast<int>(verts.size()) - 1; }
};

struct CellReport {
    int n_a = 0, n_b = 0;
    std::size_t triangles = 0;
    // Sweep edges e(m) as (j, k) chain-index pairs, first is (n_a, n_b).
    std::vector<std::pair<int, int>> events;
};

struct QuadraticFillReport {
    Rat eps_sq, max_edge_sq;
    Int n_formula = 0;             // N = ceil(2 * l_K / eps)
    std::size_t subdivision_points = 0;
    std::vector<SweepPath> paths;
    std::vector<CellReport> cells;
    std::size_t collar_triangles = 0;
    std::size_t total_triangles = 0;
    bool within_bound = false;     // total <= (2 eps^-1 D l_C + 1) N + l_C + N
};

struct QuadraticFill {
    TriangulatedDisc disc;
    SimplicialFillingMap map;
    QuadraticFillReport report;
};

namespace detail {

struct SubPoint {
    Point p;
    std::size_t edge;  // loop edge index the point lies on
    Rat fraction;      // position within that edge, in [0, 1)
};

inline SweepPath trace_path(const PlanarGeodesicOracle& oracle, VertexId base, const Point& from,
                            const SubPoint& target, const CombLoop& loop, const Rat& eps_sq) {
    const auto& k = oracle.complex();
    SweepPath path;
    path.verts = {base};
    path.lams = {0};
    Geodesic g = oracle.geodesic(from, target.p);
    path.len_sq = g.len_sq;
    if (g.len_sq == 0) return path;

    // The endpoint lies on a loop edge; its star-owner among the edge's
    // endpoints is the collar's anchor and must terminate the path.
    VertexId tip = target.fraction <= Rat(1, 2) ? loop.at(target.edge) : loop.at(target.edge + 1);

    std::vector<Rat> bps = oracle.breakpoints(g);
    std::size_t cursor = 0;
    while (true) {
        VertexId prev = path.verts.back();
        // Minimal time where prev leaves the carrier; attained at a breakpoint.
        std::optional<Rat> drop;
        while (cursor < bps.size()) {
            if (!oracle.carrier(g.at(bps[cursor])).contains(prev)) {
                drop = bps[cursor];
                break;
            }
            ++cursor;
        }
        if (!drop || *drop == 1) break;

        Carrier c = oracle.carrier(g.at(*drop));
        std::optional<VertexId> pick;
        for (int i = 0; i <= c.dim; ++i)
            if (oracle.in_star(g.at(*drop), c.verts[i]) && (!pick || c.verts[i] < *pick))
                pick = c.verts[i];
        if (!pick) throw FalsificationError("sweep: no star owner at a carrier change");
        if (!(prev == *pick) && !k.skeleton.are_adjacent(prev, *pick))
            throw FalsificationError("sweep: consecutive path vertices " + std::to_string(prev.id) +
                                     "," + std::to_string(pick->id) + " are not adjacent");
        // Thickness promise: interior steps are at least eps apart.
        Rat gap = *drop - path.lams.back();
        if (gap * gap * path.len_sq < eps_sq)
            throw FalsificationError("sweep: step shorter than eps; shapes not actually thick");
        path.verts.push_back(*pick);
        path.lams.push_back(*drop);
    }

    // Terminal step: anchor at the loop-edge endpoint owning the target.
    if (!oracle.in_star(target.p, tip))
        throw FalsificationError("sweep: subdivision point outside its anchor's star");
    VertexId prev = path.verts.back();
    if (!(prev == tip) && !k.skeleton.are_adjacent(prev, tip))
        throw FalsificationError("sweep: terminal vertex not adjacent to path end");
    path.verts.push_back(tip);
    path.lams.push_back(1);
    return path;
}

}  // namespace detail

/// The comparison-triangle sweep: caps a combinatorial loop in a bounded,
/// thick, convex planar complex with quadratically many triangles.
inline QuadraticFill quadratic_fill(const MetricFlagComplex& k, const PlanarGeodesicOracle& oracle,
                                    const CombLoop& loop) {
    ThickShapes thick = check_thick(k);
    if (!thick.ok) throw std::invalid_argument("quadratic_fill: shapes are not thick");
    BoundedShapes bounded = check_bounded(k);
    if (!validate_loop(loop, k.skeleton)) throw std::invalid_argument("quadratic_fill: invalid loop");

    QuadraticFill out;
    QuadraticFillReport& rep = out.report;
    rep.eps_sq = thick.eps_sq;
    rep.max_edge_sq = bounded.max_edge_sq;

    const std::size_t l = loop.length();
    const VertexId base = loop.vertices[0];
    const Point origin = k.coord(base);

    // Subdivide each loop edge into equal pieces of length <= eps/2. Working
    // per edge keeps every subdivision point rational; the piece count then
    // exceeds N = ceil(2 l_K / eps) by less than one per edge, which the
    // final bound absorbs.
    std::vector<detail::SubPoint> pts;
    RadicalSum n_sum;
    for (std::size_t e = 0; e < l; ++e) {
        VertexId u = loop.at(e), v = loop.at(e + 1);
        const Point &pu = k.coord(u), &pv = k.coord(v);
        Rat sq = sq_dist(pu, pv);
        n_sum.add_sqrt(1, 4 * sq / thick.eps_sq);
        Int r = sq == 0 ? Int(1) : ceil_sqrt(4 * sq / thick.eps_sq);
        for (Int i = 0; i < r; ++i) {
            Rat f(i, r);
            pts.push_back({{pu.x + f * (pv.x - pu.x), pu.y + f * (pv.y - pu.y)}, e, f});
        }
    }
    rep.n_formula = n_sum.ceil();
    rep.subdivision_points = pts.size();
    const std::size_t np = pts.size();

    for (const auto& sp : pts)
        rep.paths.push_back(detail::trace_path(oracle, base, origin, sp, loop, thick.eps_sq));

    // Locals: 0 is the basepoint apex; path vertices j >= 1 get one local per
    // (path, j); cells between neighboring paths share those locals.
    TriangulatedDisc& disc = out.disc;
    SimplicialFillingMap& f = out.map;
    int next_local = 1;
    f.assignment[0] = base;
    std::vector<std::vector<int>> locals(np);
    for (std::size_t i = 0; i < np; ++i) {
        locals[i].push_back(0);
        for (int j = 1; j <= rep.paths[i].n(); ++j) {
            f.assignment[next_local] = rep.paths[i].verts[j];
            locals[i].push_back(next_local++);
        }
    }

    auto joinable = [&](VertexId a, VertexId b) { return a == b || k.skeleton.are_adjacent(a, b); };
    auto emit = [&](int a, int b, int c) {
        VertexId ia = f.at(a), ib = f.at(b), ic = f.at(c);
        if (!joinable(ia, ib) || !joinable(ib, ic) || !joinable(ia, ic))
            throw FalsificationError("sweep: cell triangle (" + std::to_string(ia.id) + "," +
                                     std::to_string(ib.id) + "," + std::to_string(ic.id) +
                                     ") is not a simplex");
        disc.triangles.push_back({a, b, c});
    };

    // Cells: merge the two monotone chains, sweeping from the outer edge back
    // toward the apex; ties go to the b-side (the lexicographic order of
    // events puts the higher chain index first).
    for (std::size_t i = 0; i < np; ++i) {
        const SweepPath& A = rep.paths[i];
        const SweepPath& B = rep.paths[(i + 1) % np];
        const auto& la = locals[i];
        const auto& lb = locals[(i + 1) % np];
        CellReport cell;
        cell.n_a = A.n();
        cell.n_b = B.n();
        int j = A.n(), kk = B.n();
        cell.events.push_back({j, kk});
        while (j > 0 || kk > 0) {
            bool advance_b = j == 0 || (kk > 0 && B.lams[kk] >= A.lams[j]);
            bool last = j + kk == 1;
            if (advance_b) {
                if (!last) {
                    emit(la[j], lb[kk], lb[kk - 1]);
                    ++cell.triangles;
                }
                --kk;
            } else {
                if (!last) {
                    emit(la[j - 1], la[j], lb[kk]);
                    ++cell.triangles;
                }
                --j;
            }
            cell.events.push_back({j, kk});
        }
        rep.cells.push_back(std::move(cell));
    }

    // Collar: ladder between the tip cycle and fresh locals for the loop
    // itself, anchored by each point's star owner.
    std::vector<int> loop_locals(l);
    for (std::size_t a = 0; a < l; ++a) {
        loop_locals[a] = next_local;
        f.assignment[next_local++] = loop.vertices[a];
    }
    auto tip_local = [&](std::size_t i) { return locals[i].back(); };
    auto phi = [&](std::size_t i) -> std::size_t {
        return pts[i].fraction <= Rat(1, 2) ? pts[i].edge : pts[i].edge + 1;
    };
    std::size_t cur = 0;
    std::size_t before = disc.triangles.size();
    for (std::size_t t = 0; t < np; ++t) {
        std::size_t next_phi = t + 1 < np ? phi(t + 1) : l;
        while (cur < next_phi) {
            emit(tip_local(t), loop_locals[cur % l], loop_locals[(cur + 1) % l]);
            ++cur;
        }
        emit(tip_local((t + 1) % np), tip_local(t), loop_locals[cur % l]);
    }
    rep.collar_triangles = disc.triangles.size() - before;

    disc.boundary = loop_locals;
    rep.total_triangles = disc.triangles.size();

    // The proof's explicit bound, checked exactly:
    //   total <= (2 eps^-1 D l_C + 1) N + l_C + N.
    {
        Int n = rep.n_formula;
        Int rest = Int(rep.total_triangles) - n - Int(l) - n;
        rep.within_bound =
            rest <= 0 ||
            cmp_sqrt(Rat(rest), 1, Rat(2 * Int(l) * n), rep.max_edge_sq / rep.eps_sq) <= 0;
    }
    return out;
}

}  // namespace isofill

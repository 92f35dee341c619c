#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "isofill/cat0/metric_complex.hpp"

namespace isofill {

inline Rat cross(const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline int orient(const Point& o, const Point& a, const Point& b) {
    Rat c = cross(o, a, b);
    return c > 0 ? 1 : c < 0 ? -1 : 0;
}

/// p collinear with [a,b] and within the closed segment.
inline bool on_segment(const Point& p, const Point& a, const Point& b) {
    if (orient(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

/// Minimal simplex containing a point of the embedded complex.
struct Carrier {
    int dim = -1;  // -1: outside support
    std::array<VertexId, 3> verts{};

    bool contains(VertexId v) const {
        for (int i = 0; i <= dim; ++i)
            if (verts[i] == v) return true;
        return false;
    }
};

/// Straight segment in the plane; the geodesic between its endpoints when the
/// support is convex. Positions along it are rational fractions of the whole,
/// so every comparison of arc-length parameters is a rational comparison.
struct Geodesic {
    Point a, b;
    Rat len_sq;

    Point at(const Rat& lambda) const {
        return {a.x + lambda * (b.x - a.x), a.y + lambda * (b.y - a.y)};
    }
};

/// Exact geodesics and point location for a convex planar embedding.
class PlanarGeodesicOracle {
public:
    explicit PlanarGeodesicOracle(const MetricFlagComplex& k) : k_(k) {
        if (!k.has_embedding()) throw std::invalid_argument("planar oracle needs a full embedding");
        tris_ = k.triangles();
        Rat tri_area2 = 0;  // doubled areas
        for (const auto& t : tris_) {
            Rat c = cross(k_.coord(t[0]), k_.coord(t[1]), k_.coord(t[2]));
            if (c == 0) throw std::invalid_argument("planar oracle: degenerate embedded triangle");
            tri_area2 += c > 0 ? c : -c;
        }
        // Convex support <=> triangles tile the convex hull exactly: the
        // doubled areas sum to the hull's doubled area (overlaps would
        // overshoot, concavities/holes undershoot).
        if (tri_area2 != hull_area2()) throw std::invalid_argument("planar oracle: support not convex");
    }

    const MetricFlagComplex& complex() const { return k_; }

    Carrier carrier(const Point& p) const {
        auto verts = *k_.skeleton.vertices();
        for (VertexId v : verts)
            if (k_.coord(v) == p) return {0, {v}};
        for (auto [u, v] : k_.skeleton.edges())
            if (on_segment(p, k_.coord(u), k_.coord(v))) return {1, {u, v}};
        for (const auto& t : tris_) {
            int o1 = orient(k_.coord(t[0]), k_.coord(t[1]), p);
            int o2 = orient(k_.coord(t[1]), k_.coord(t[2]), p);
            int o3 = orient(k_.coord(t[2]), k_.coord(t[0]), p);
            if ((o1 >= 0 && o2 >= 0 && o3 >= 0) || (o1 <= 0 && o2 <= 0 && o3 <= 0))
                return {2, {t[0], t[1], t[2]}};
        }
        return {};
    }

    /// Is p in the barycentric star N(v)? Requires v in the carrier and the
    /// barycentric coordinate of v to be maximal there.
    bool in_star(const Point& p, VertexId v) const {
        Carrier c = carrier(p);
        if (!c.contains(v)) return false;
        if (c.dim == 0) return true;
        if (c.dim == 1) {
            VertexId other = c.verts[0] == v ? c.verts[1] : c.verts[0];
            return sq_dist(p, k_.coord(v)) <= sq_dist(p, k_.coord(other));
        }
        // Barycentric coordinates are proportional to opposite sub-areas.
        Rat b[3];
        for (int i = 0; i < 3; ++i) {
            Rat c2 = cross(p, k_.coord(c.verts[(i + 1) % 3]), k_.coord(c.verts[(i + 2) % 3]));
            b[i] = c2 >= 0 ? c2 : -c2;
        }
        int iv = c.verts[0] == v ? 0 : c.verts[1] == v ? 1 : 2;
        return b[iv] >= b[(iv + 1) % 3] && b[iv] >= b[(iv + 2) % 3];
    }

    Geodesic geodesic(const Point& a, const Point& b) const { return {a, b, sq_dist(a, b)}; }

    /// Fractions 0 < lambda <= 1 at which the segment meets a vertex or an
    /// edge of the complex; between consecutive values the carrier is
    /// constant. Sorted ascending, deduplicated.
    std::vector<Rat> breakpoints(const Geodesic& g) const {
        std::vector<Rat> out;
        Rat dx = g.b.x - g.a.x, dy = g.b.y - g.a.y;
        auto param_of = [&](const Point& p) -> std::optional<Rat> {
            if (!on_segment(p, g.a, g.b)) return std::nullopt;
            Rat t = dx != 0 ? (p.x - g.a.x) / dx : dy != 0 ? (p.y - g.a.y) / dy : Rat(0);
            return t;
        };
        auto verts = *k_.skeleton.vertices();
        for (VertexId v : verts)
            if (auto t = param_of(k_.coord(v)); t && *t > 0) out.push_back(*t);
        for (auto [u, v] : k_.skeleton.edges()) {
            const Point &c = k_.coord(u), &d = k_.coord(v);
            Rat denom = dx * (d.y - c.y) - dy * (d.x - c.x);
            if (denom == 0) continue;  // parallel/collinear: endpoints cover it
            Rat t = ((c.x - g.a.x) * (d.y - c.y) - (c.y - g.a.y) * (d.x - c.x)) / denom;
            Rat s = ((c.x - g.a.x) * dy - (c.y - g.a.y) * dx) / denom;
            if (t > 0 && t <= 1 && s >= 0 && s <= 1) out.push_back(t);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

private:
    Rat hull_area2() const {
        std::vector<Point> pts;
        const auto verts = k_.skeleton.vertices();
        for (VertexId v : *verts) pts.push_back(k_.coord(v));
        std::sort(pts.begin(), pts.end(),
                  [](const Point& a, const Point& b) { return std::tie(a.x, a.y) < std::tie(b.x, b.y); });
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        if (pts.size() < 3) return 0;
        auto half = [&](auto begin, auto end) {
            std::vector<Point> h;
            for (auto it = begin; it != end; ++it) {
                while (h.size() >= 2 && orient(h[h.size() - 2], h.back(), *it) <= 0) h.pop_back();
                h.push_back(*it);
            }
            return h;
        };
        auto lower = half(pts.begin(), pts.end());
        auto upper = half(pts.rbegin(), pts.rend());
        lower.pop_back();
        upper.pop_back();
        lower.insert(lower.end(), upper.begin(), upper.end());
        Rat area2 = 0;
        for (std::size_t i = 0; i < lower.size(); ++i) {
            const Point &a = lower[i], &b = lower[(i + 1) % lower.size()];
            area2 += a.x * b.y - b.x * a.y;
        }
        return area2 >= 0 ? area2 : -area2;
    }

    const MetricFlagComplex& k_;
    std::vector<std::array<VertexId, 3>> tris_;
};

}  // namespace isofill

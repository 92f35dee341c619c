#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "isofill/surface/boundary.hpp"
#include "isofill/surface/complex.hpp"
#include "isofill/surface/walks.hpp"

namespace isofill {

/// Cyclic sequence (C_1, …, C_n) of essential multicurves on one surface,
/// with consecutive entries disjoint.
struct MultiCurveLoop {
    IdealTriangulation T;
    std::vector<Lamination> curves;

    std::size_t length() const { return curves.size(); }

    const Lamination& at(long i) const {
        long n = long(curves.size());
        return curves[std::size_t(((i % n) + n) % n)];
    }
};

/// Rep invariant: nonempty, every entry an essential multicurve, consecutive
/// entries (cyclically) disjoint.
inline bool valid_multicurve_loop(const MultiCurveLoop& loop, std::string* why = nullptr) {
    const std::size_t n = loop.curves.size();
    if (n == 0) {
        if (why) *why = "empty loop";
        return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Lamination& C = loop.curves[i];
        if (!C.is_multicurve_shape() || !valid_lamination(loop.T, C) || !is_essential(loop.T, C)) {
            if (why) *why = "entry " + std::to_string(i) + " is not an essential multicurve";
            return false;
        }
        if (!misses(loop.T, C, loop.at(long(i) + 1))) {
            if (why) *why = "entries " + std::to_string(i) + " and " + std::to_string((i + 1) % n) +
                            " intersect";
            return false;
        }
    }
    return true;
}

/// A configuration that lets the loop be rerouted through a shorter path.
///   dist2:  components γ_j ⊆ C_j, γ_{j+2} ⊆ C_{j+2} equal or disjoint;
///           witness = {γ_j, γ_{j+2}}.
///   dist3:  components γ_j ⊆ C_j, γ_{j+3} ⊆ C_{j+3} at curve-graph distance
///           < 3 (equal, disjoint, or joined through a window curve x);
///           witness = {γ_j, γ_{j+3}} or {γ_j, x, γ_{j+3}}. Only for n ≥ 6.
///   bridge: a curve γ disjoint from (and distinct from) components of
///           C_{j−1}, C_{j+1}, C_{j+2}; witness = {γ, a, b, c}.
struct Shortcut {
    enum class Kind { dist2, dist3, bridge };
    Kind kind;
    std::size_t index;                 // the j above
    std::vector<Lamination> witness;
};

namespace detail {

/// Components of a multicurve in lexicographic weight order: the fixed
/// tie-break for every "pick a component" choice below.
inline std::vector<Lamination> ordered_components(const IdealTriangulation& T,
                                                  const Lamination& L) {
    std::vector<Lamination> cs = components(T, L);
    std::sort(cs.begin(), cs.end(), [](const Lamination& a, const Lamination& b) {
        return a.w < b.w;
    });
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    return cs;
}

}  // namespace detail

/// Look for a shortcut, scanning indices in order, components in weight
/// order, window curves in window order; the first hit wins. Distance-2
/// recognition (the dist3 variant's "common disjoint curve" and the bridge
/// curve) is bounded by the supplied window: a hit is conclusive, a miss
/// only means no shortcut was found within the window.
inline std::optional<Shortcut> find_shortcut(const MultiCurveLoop& loop,
                                             const std::vector<Lamination>& window) {
    const long n = long(loop.curves.size());
    if (n < 5) throw std::invalid_argument("find_shortcut: loop length must be at least 5");
    const IdealTriangulation& T = loop.T;

    std::vector<std::vector<Lamination>> comp(loop.curves.size());
    for (std::size_t i = 0; i < loop.curves.size(); ++i)
        comp[i] = detail::ordered_components(T, loop.curves[i]);
    auto comps = [&](long i) -> const std::vector<Lamination>& {
        return comp[std::size_t(((i % n) + n) % n)];
    };

    for (long j = 0; j < n; ++j)
        for (const Lamination& g : comps(j))
            for (const Lamination& h : comps(j + 2))
                if (g == h || misses(T, g, h))
                    return Shortcut{Shortcut::Kind::dist2, std::size_t(j), {g, h}};

    if (n >= 6)
        for (long j = 0; j < n; ++j)
            for (const Lamination& g : comps(j))
                for (const Lamination& h : comps(j + 3)) {
                    if (g == h || misses(T, g, h))
                        return Shortcut{Shortcut::Kind::dist3, std::size_t(j), {g, h}};
                    for (const Lamination& x : window)
                        if (x != g && x != h && misses(T, x, g) && misses(T, x, h))
                            return Shortcut{Shortcut::Kind::dist3, std::size_t(j), {g, x, h}};
                }

    for (long j = 0; j < n; ++j)
        for (const Lamination& g : window)
            for (const Lamination& a : comps(j - 1)) {
                if (g == a || !misses(T, g, a)) continue;
                for (const Lamination& b : comps(j + 1)) {
                    if (g == b || !misses(T, g, b)) continue;
                    for (const Lamination& c : comps(j + 2))
                        if (g != c && misses(T, g, c))
                            return Shortcut{Shortcut::Kind::bridge, std::size_t(j), {g, a, b, c}};
                }
            }

    return std::nullopt;
}

inline std::optional<Shortcut> find_shortcut(const MultiCurveLoop& loop) {
    return find_shortcut(loop, curve_window(loop.T, 2));
}

/// Whether C_j already equals the essential boundary of a regular
/// neighbourhood of C_{j−1} ∪ C_{j+1}. Normal coordinates determine the
/// isotopy class, so weight-vector equality decides it.
inline bool is_tight_at(const MultiCurveLoop& loop, long j) {
    return loop.at(j) == boundary_neighborhood(loop.T, loop.at(j - 1), loop.at(j + 1));
}

/// Replace C_j by the essential neighbourhood boundary of its neighbors.
/// The boundary cannot vanish while the loop invariants hold (its complement
/// would contain every curve disjoint from C_{j−1} ∪ C_{j+1}); an empty
/// result is a consistency failure, not a caller error.
inline MultiCurveLoop tighten_at(const MultiCurveLoop& loop, long j) {
    const long n = long(loop.curves.size());
    Lamination b = boundary_neighborhood(loop.T, loop.at(j - 1), loop.at(j + 1));
    if (b.is_zero())
        throw std::logic_error("tighten_at: neighbourhood boundary vanished at index " +
                               std::to_string(j));
    if (!misses(loop.T, b, loop.at(j - 1)) || !misses(loop.T, b, loop.at(j + 1)))
        throw std::logic_error("tighten_at: replacement crosses a neighbor at index " +
                               std::to_string(j));
    MultiCurveLoop out = loop;
    out.curves[std::size_t(((j % n) + n) % n)] = std::move(b);
    return out;
}

/// Simplicial annulus between two loops of the same length, recorded as the
/// ordered triangle pairs of the vertex replacements that produced it:
/// replacing C_j by C'_j contributes {C_{j−1}, C_j, C'_j}, {C_j, C'_j, C_{j+1}}
/// with the neighbors as they stood at that moment.
struct HomotopyAnnulus {
    std::vector<std::array<Lamination, 3>> triangles;

    std::size_t triangle_count() const { return triangles.size(); }
};

/// Check that the annulus glues the two loops: every triangle has pairwise
/// disjoint-or-equal vertices, and replaying the replacements transforms
/// `input` into `output`.
inline bool valid_homotopy_annulus(const IdealTriangulation& T, const HomotopyAnnulus& ann,
                                   const MultiCurveLoop& input, const MultiCurveLoop& output,
                                   std::string* why = nullptr) {
    auto fail = [&](std::string d) {
        if (why) *why = std::move(d);
        return false;
    };
    if (input.curves.size() != output.curves.size()) return fail("loop length mismatch");
    if (ann.triangles.size() % 2 != 0) return fail("odd triangle count");
    const long n = long(input.curves.size());

    for (std::size_t k = 0; k < ann.triangles.size(); ++k) {
        const auto& t = ann.triangles[k];
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b)
                if (t[a] != t[b] && !misses(T, t[a], t[b]))
                    return fail("triangle " + std::to_string(k) + " vertices intersect");
    }

    std::vector<Lamination> cur = input.curves;
    for (std::size_t k = 0; k + 1 < ann.triangles.size(); k += 2) {
        const auto& t1 = ann.triangles[k];      // {left, old, new}
        const auto& t2 = ann.triangles[k + 1];  // {old, new, right}
        if (t1[1] != t2[0] || t1[2] != t2[1])
            return fail("triangles " + std::to_string(k) + "," + std::to_string(k + 1) +
                        " do not share their replacement edge");
        long j = -1;
        for (long i = 0; i < n && j < 0; ++i)
            if (cur[std::size_t(i)] == t1[1] && cur[std::size_t((i + n - 1) % n)] == t1[0] &&
                cur[std::size_t((i + 1) % n)] == t2[2])
                j = i;
        if (j < 0)
            return fail("replacement " + std::to_string(k / 2) + " matches no loop position");
        cur[std::size_t(j)] = t1[2];
    }
    if (cur != output.curves) return fail("replayed replacements do not reach the output loop");
    return true;
}

/// Result of the tightening sweep: the final loop, the annulus tracing it
/// back to the input, and either tightness everywhere or a shortcut.
struct TightenOutcome {
    MultiCurveLoop loop;
    HomotopyAnnulus annulus;
    std::optional<Shortcut> shortcut;
    int tighten_calls = 0;

    bool tight() const { return !shortcut.has_value(); }
};

/// One cyclic sweep over indices 1, …, n: tighten wherever the entry differs
/// from its neighbors' neighbourhood boundary, checking for shortcuts after
/// every step and stopping at the first one. At most n tightenings, at most
/// 2n annulus triangles, no re-sweeping.
inline TightenOutcome tighten_loop(const MultiCurveLoop& loop,
                                   const std::vector<Lamination>& window) {
    const long n = long(loop.curves.size());
    if (n < 5) throw std::invalid_argument("tighten_loop: loop length must be at least 5");
    std::string why;
    if (!valid_multicurve_loop(loop, &why))
        throw std::invalid_argument("tighten_loop: invalid loop: " + why);

    TightenOutcome out{loop, {}, std::nullopt, 0};
    for (long k = 1; k <= n; ++k) {
        long j = k % n;
        if (!is_tight_at(out.loop, j)) {
            MultiCurveLoop next = tighten_at(out.loop, j);
            out.annulus.triangles.push_back({out.loop.at(j - 1), out.loop.at(j), next.at(j)});
            out.annulus.triangles.push_back({out.loop.at(j), next.at(j), out.loop.at(j + 1)});
            out.loop = std::move(next);
            ++out.tighten_calls;
            if (!valid_multicurve_loop(out.loop, &why))
                throw std::logic_error("tighten_loop: invariant broke at index " +
                                       std::to_string(j) + ": " + why);
        }
        if ((out.shortcut = find_shortcut(out.loop, window))) return out;
    }
    return out;
}

inline TightenOutcome tighten_loop(const MultiCurveLoop& loop) {
    return tighten_loop(loop, curve_window(loop.T, 2));
}

}  // namespace isofill

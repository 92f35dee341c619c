#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "isofill/surface/boundary.hpp"
#include "isofill/surface/cut.hpp"

namespace isofill {

/// The subsurface filled by two multicurves: a regular neighbourhood of
/// their union together with the complementary discs and once-punctured
/// discs. Its boundary is the essential part of the neighbourhood boundary;
/// the subsurface is recorded as the pieces of the surface cut along that
/// boundary which meet the two curves (a piece wholly on the filled side
/// always does, except when the filled region is a bare annulus, which is
/// captured by its boundary alone).
struct FilledSubsurface {
    IdealTriangulation parent;
    Lamination boundary;        // zero exactly when the curves fill
    std::optional<CutComplex> cutc;  // cut along `boundary`, when nonzero
    std::vector<char> inside;   // piece of `cutc` -> belongs to the subsurface

    bool fills() const { return boundary.is_zero(); }
};

namespace detail {

/// Whether the single closed component `comp` is isotopic to a strand of the
/// cutting curve of `cc`.
inline bool parallel_to_cut(const CutComplex& cc, const Lamination& comp) {
    std::vector<Strand> s = trace_strands(cc.parent, comp);
    if (s.size() != 1 || s[0].parallel_edge >= 0) return false;
    std::vector<int> key = strand_key(cc.parent, s[0]);
    for (const Strand& t : cc.curve_strands)
        if (strand_key(cc.parent, t) == key) return true;
    return false;
}

}  // namespace detail

/// F(C1, C2). Both arguments must be essential multicurves.
inline FilledSubsurface filled_subsurface(const IdealTriangulation& T, const Lamination& C1,
                                          const Lamination& C2) {
    if (!C1.is_multicurve_shape() || !C2.is_multicurve_shape())
        throw std::invalid_argument("filled_subsurface: inputs must be multicurves");
    FilledSubsurface F;
    F.parent = T;
    F.boundary = boundary_neighborhood(T, C1, C2);
    if (F.boundary.is_zero()) return F;

    F.cutc = cut(T, F.boundary);
    F.inside.assign(F.cutc->pieces.size(), 0);
    for (const Lamination* c : {&C1, &C2})
        for (const Lamination& comp : components(T, *c)) {
            if (detail::parallel_to_cut(*F.cutc, comp)) continue;
            std::vector<Lamination> tr = transfer(*F.cutc, comp);
            for (std::size_t p = 0; p < tr.size(); ++p)
                if (!tr[p].is_zero()) F.inside[p] = 1;
        }
    return F;
}

/// Whether the essential multicurve L can be isotoped into the filled
/// subsurface. A component lies inside exactly when it misses the boundary
/// and either is parallel to a boundary component (push it onto the
/// boundary) or transfers into a piece on the filled side.
inline bool contains(const FilledSubsurface& F, const Lamination& L) {
    const IdealTriangulation& T = F.parent;
    if (F.fills()) return true;
    if (intersection_number(T, F.boundary, L) != 0) return false;
    for (const Lamination& comp : components(T, L)) {
        if (detail::parallel_to_cut(*F.cutc, comp)) continue;
        std::vector<Lamination> tr = transfer(*F.cutc, comp);
        for (std::size_t p = 0; p < tr.size(); ++p)
            if (!tr[p].is_zero() && !F.inside[p]) return false;
    }
    return true;
}

/// Whether F(C1, C2) is contained in G up to isotopy. The filled subsurface
/// is the smallest essential subsurface containing the two curves, so
/// containment reduces to isotoping the curves themselves into G.
inline bool filled_inside(const FilledSubsurface& G, const Lamination& C1,
                          const Lamination& C2) {
    return contains(G, C1) && contains(G, C2);
}

}  // namespace isofill

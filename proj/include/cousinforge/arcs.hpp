// First-order arcs of divisor pairs and zero-cycles and their tangent
// classes in local cohomology: the maps sending {div(f + eps f1), g + eps g1}
// to [(g1 df - f1 dg) / (g f)] and V(u + eps u1, v + eps v1) to
// [(v1 du - u1 dv) / (u v)].
#pragma once

#include "cousinforge/localcoh.hpp"

namespace cousinforge {

struct DivisorArc {
    Polynomial f;   // local equation of the divisor, asserted irreducible
    Polynomial f1;  // its first-order deformation
    Polynomial g;   // the function, with f not dividing g
    Polynomial g1;  // deformation of g

    DivisorArc(Polynomial f_, Polynomial f1_, Polynomial g_, Polynomial g1_);
};

struct ZeroCycleArc {
    Polynomial u, v;    // regular sequence (V(u,v) finite, certified)
    Polynomial u1, v1;  // deformations

    ZeroCycleArc(Polynomial u_, Polynomial v_, Polynomial u1_, Polynomial v1_);
};

H1Class tangent_divisor(const DivisorArc& a);
H2Class tangent_zero_cycle(const ZeroCycleArc& z);

// Tangent of the sum deformation equals the sum of tangents (h1_equal).
bool arc_linearity_check(const DivisorArc& a1, const DivisorArc& a2);

} // namespace cousinforge

#include "cousinforge/arcs.hpp"

namespace cousinforge {

DivisorArc::DivisorArc(Polynomial f_, Polynomial f1_, Polynomial g_, Polynomial g1_)
    : f(std::move(f_)), f1(std::move(f1_)), g(std::move(g_)), g1(std::move(g1_)) {
    if (f.is_constant()) throw PreconditionError("divisor equation must be nonconstant");
    if (g.is_zero() || divides(f, g)) throw PreconditionError("invalid arc: f divides g");
}

ZeroCycleArc::ZeroCycleArc(Polynomial u_, Polynomial v_, Polynomial u1_, Polynomial v1_)
    : u(std::move(u_)), v(std::move(v_)), u1(std::move(u1_)), v1(std::move(v1_)) {
    if (u.is_zero() || v.is_zero())
        throw PreconditionError("zero-cycle equations must be nonzero");
    auto basis = GroebnerCache::instance().reduced_basis({u, v}, MonomialOrder::grevlex());
    if (!zero_dimensional(*basis))
        throw PreconditionError("V(u, v) is not finite");
}

H1Class tangent_divisor(const DivisorArc& a) {
    // Ext^1 class g1 df/g - f1 dg/g pushed into the colimit by m -> m/f.
    DifferentialForm omega = d_of(a.f).scale(a.g1) - d_of(a.g).scale(a.f1);
    return H1Class(a.f, 1, a.g, FormVector(omega));
}

H2Class tangent_zero_cycle(const ZeroCycleArc& z) {
    // Koszul Ext^2 class v1 du - u1 dv pushed into the colimit by
    // m -> m/(u v).
    DifferentialForm omega = d_of(z.u).scale(z.v1) - d_of(z.v).scale(z.u1);
    return H2Class(z.u, z.v, 1, 1, FormVector(omega));
}

bool arc_linearity_check(const DivisorArc& a1, const DivisorArc& a2) {
    if (a1.f != a2.f || a1.g != a2.g)
        throw PreconditionError("arcs must share (f, g)");
    DivisorArc sum(a1.f, a1.f1 + a2.f1, a1.g, a1.g1 + a2.g1);
    return h1_equal(tangent_divisor(sum),
                    h1_add(tangent_divisor(a1), tangent_divisor(a2)));
}

} // namespace cousinforge

// The classical Gersten row at desk scale (orders, tame symbols, Weil
// reciprocity over Q(t)) and the Cousin boundary from H^1 classes to H^2
// classes, with the tangent-square commutativity check.
#pragma once

#include <cstdint>
#include <optional>

#include "cousinforge/arcs.hpp"
#include "cousinforge/gersten_fwd.hpp"
#include "cousinforge/localcoh.hpp"

namespace cousinforge {

// A place of Q(t): a rational point or the point at infinity.
struct Place {
    bool at_infinity = false;
    Rational a;

    static Place finite(const Rational& a) { return Place{false, a}; }
    static Place infinity() { return Place{true, Rational(0)}; }

    bool operator==(const Place& o) const {
        return at_infinity == o.at_infinity && (at_infinity || a == o.a);
    }
    bool operator<(const Place& o) const {
        if (at_infinity != o.at_infinity) return !at_infinity;
        if (at_infinity) return false;
        return a < o.a;
    }
};

// Reduced fraction of univariate polynomials over Q; the denominator is
// kept monic.
class RationalFunction {
public:
    RationalFunction(Polynomial num, Polynomial den);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RationalFunction operator*(const RationalFunction& o) const;
    // Integer powers, negative allowed (swaps numerator and denominator).
    RationalFunction pow(int e) const;

    std::string str() const;

private:
    Polynomial num_, den_;
};

// Multiplicity of the place in h; negative at poles. At infinity:
// deg den - deg num.
int ord_at(const Place& place, const RationalFunction& h);

// (-1)^{ord f * ord g} * (f^{ord g} / g^{ord f}) evaluated at the place; a
// well-defined nonzero rational.
Rational tame_symbol(const Place& place, const RationalFunction& f, const RationalFunction& g);

// Product of tame symbols over all places (including infinity) of two
// rational functions that split into rational linear factors. Equals 1.
Rational weil_reciprocity(const RationalFunction& f, const RationalFunction& g);

// Cousin boundary of an H^1 class at a rational point. The class's Cech
// fraction omega / (s f^k) is read in the (f, s) corner; requires V(f, s)
// to be certified inside {point}.
// power_bound <= 0 selects the default deg(f) * deg(s) bound.
H2Class cousin_boundary(const H1Class& c, const Rational& px, const Rational& py,
                        int power_bound = 0, BoundarySign sign = BoundarySign::plus);

// Commutation check at one point: boundary of the divisor-arc tangent versus
// the tangent of the induced zero-cycle arc, compared through h2_equal
// after a seeded representative perturbation along both Cech legs.
bool check_square(const DivisorArc& a, const Rational& px, const Rational& py,
                  uint64_t perturbation_seed = 1,
                  BoundarySign sign = BoundarySign::plus);

} // namespace cousinforge

#include "cousinforge/gersten.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace cousinforge {

namespace {

const MonomialOrder kOrd = MonomialOrder::grevlex();

Rational leading_coeff(const Polynomial& p) { return p.leading_term(kOrd).second; }

// Multiplicity of the root a in p, together with the deflated cofactor.
std::pair<int, Polynomial> root_multiplicity(const Polynomial& p, const Rational& a) {
    const VarSet& vars = p.vars();
    Polynomial lin = Polynomial::variable(vars, 0) - Polynomial::constant(vars, a);
    int mult = 0;
    Polynomial cur = p;
    while (!cur.is_zero() && cur.evaluate({a}).is_zero()) {
        cur = divide_by_single(cur, lin, kOrd).quotient;
        ++mult;
    }
    return {mult, cur};
}

// All rational roots of a univariate polynomial, by the rational root
// bound on the primitive part; reports whether p splits completely.
struct RootSplit {
    std::vector<std::pair<Rational, int>> roots;
    bool split = true;
};

RootSplit rational_roots(const Polynomial& p) {
    RootSplit out;
    if (p.is_zero() || p.is_constant()) return out;
    Polynomial prim = primitive_part(p);
    // Strip powers of t first.
    auto [t_mult, rest] = root_multiplicity(prim, Rational(0));
    if (t_mult > 0) out.roots.push_back({Rational(0), t_mult});
    Polynomial cur = rest;
    while (!cur.is_constant()) {
        cur = primitive_part(cur);
        mpz_class a0 = cur.coeff(Monomial{}).num();
        mpz_class an = leading_coeff(cur).num();
        bool found = false;
        // Candidate roots p/q with p | constant term and q | leading term.
        const mpz_class abs_a0 = abs(a0);
        const mpz_class abs_an = abs(an);
        auto divisors = [](const mpz_class& v) {
            std::vector<mpz_class> out;
            for (mpz_class d(1); d * d <= v; ++d) {
                if (v % d != 0) continue;
                out.push_back(d);
                out.push_back(v / d);
            }
            return out;
        };
        std::vector<Rational> candidates;
        for (const mpz_class& num : divisors(abs_a0)) {
            for (const mpz_class& den : divisors(abs_an)) {
                candidates.push_back(Rational(num, den));
                candidates.push_back(Rational(-num, den));
            }
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        for (const Rational& cand : candidates) {
            if (!cur.evaluate({cand}).is_zero()) continue;
            auto [mult, deflated] = root_multiplicity(cur, cand);
            out.roots.push_back({cand, mult});
            cur = deflated;
            found = true;
            break;
        }
        if (!found) {
            out.split = false;
            return out;
        }
    }
    return out;
}

} // namespace

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw PreconditionError("rational function with zero denominator");
    if (num_.num_vars() != 1 || num_.vars() != den_.vars())
        throw PreconditionError("rational functions are univariate over a shared variable");
    if (!num_.is_zero()) {
        Polynomial g = poly_gcd_univariate(num_, den_);
        if (g.degree() > 0) {
            num_ = divide_by_single(num_, g, kOrd).quotient;
            den_ = divide_by_single(den_, g, kOrd).quotient;
        }
    }
    Rational lc = leading_coeff(den_);
    if (!lc.is_one()) {
        Rational inv = Rational(1) / lc;
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
    return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::pow(int e) const {
    if (e >= 0) return RationalFunction(num_.pow(static_cast<unsigned>(e)),
                                        den_.pow(static_cast<unsigned>(e)));
    if (is_zero()) throw PreconditionError("negative power of zero function");
    return RationalFunction(den_.pow(static_cast<unsigned>(-e)),
                            num_.pow(static_cast<unsigned>(-e)));
}

std::string RationalFunction::str() const {
    if (den_.is_constant() && leading_coeff(den_).is_one()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

int ord_at(const Place& place, const RationalFunction& h) {
    if (h.is_zero()) throw PreconditionError("ord of the zero function");
    if (place.at_infinity) return h.den().degree() - h.num().degree();
    return root_multiplicity(h.num(), place.a).first -
           root_multiplicity(h.den(), place.a).first;
}

namespace {

// Value at the place of a function with ord 0 there.
Rational evaluate_unit(const Place& place, const RationalFunction& h) {
    if (place.at_infinity) {
        if (h.num().degree() != h.den().degree())
            throw PreconditionError("evaluation at infinity of a non-unit");
        return leading_coeff(h.num()) / leading_coeff(h.den());
    }
    auto [nm, ncof] = root_multiplicity(h.num(), place.a);
    auto [dm, dcof] = root_multiplicity(h.den(), place.a);
    if (nm != dm) throw PreconditionError("evaluation of a non-unit at the place");
    return ncof.evaluate({place.a}) / dcof.evaluate({place.a});
}

} // namespace

Rational tame_symbol(const Place& place, const RationalFunction& f, const RationalFunction& g) {
    if (f.is_zero() || g.is_zero()) throw PreconditionError("tame symbol of zero");
    int m = ord_at(place, f);
    int n = ord_at(place, g);
    RationalFunction unit = f.pow(n) * g.pow(-m);
    Rational value = evaluate_unit(place, unit);
    return (m * n) % 2 ? -value : value;
}

Rational weil_reciprocity(const RationalFunction& f, const RationalFunction& g) {
    if (f.is_zero() || g.is_zero()) throw PreconditionError("reciprocity of zero");
    std::set<Place> places;
    for (const Polynomial* p : {&f.num(), &f.den(), &g.num(), &g.den()}) {
        RootSplit rs = rational_roots(*p);
        if (!rs.split) throw UnsupportedError("unsupported place: input does not split over Q");
        for (const auto& [root, mult] : rs.roots) places.insert(Place::finite(root));
    }
    places.insert(Place::infinity());
    Rational product(1);
    for (const Place& w : places) product *= tame_symbol(w, f, g);
    return product;
}

H2Class cousin_boundary(const H1Class& c, const Rational& px, const Rational& py,
                        int power_bound, BoundarySign sign) {
    const VarSet& vars = c.f().vars();
    if (vars.size() != 2) throw PreconditionError("boundary needs a surface class");
    const std::vector<Rational> point{px, py};

    auto zero_class_at_point = [&]() {
        Polynomial u = Polynomial::variable(vars, 0) - Polynomial::constant(vars, px);
        Polynomial v = Polynomial::variable(vars, 1) - Polynomial::constant(vars, py);
        std::vector<DifferentialForm> parts;
        for (const auto& w : c.omega().parts)
            parts.push_back(DifferentialForm::zero(vars, w.degree()));
        return H2Class(u, v, 1, 1, FormVector(std::move(parts)));
    };

    // Points away from the polar locus of the class, or where the unit s
    // does not vanish, receive the zero boundary.
    if (!c.f().evaluate(point).is_zero() || !c.s().evaluate(point).is_zero())
        return zero_class_at_point();

    auto basis = GroebnerCache::instance().reduced_basis({c.f(), c.s()}, MonomialOrder::grevlex());
    if (!zero_dimensional(*basis)) {
        if (h1_is_zero(c)) return zero_class_at_point();
        throw UnsupportedError("not supported on a pair: (f, s) has positive-dimensional zero set");
    }
    if (power_bound <= 0) power_bound = std::max(1, c.f().degree() * c.s().degree());
    if (radical_contains_point(*basis, point, power_bound) != RadicalAnswer::contained) {
        if (h1_is_zero(c)) return zero_class_at_point();
        throw UnsupportedError("multi-point support unsupported");
    }

    // Connecting map: the fraction omega / (s f^k) read in the (f, s)
    // corner of the stable Koszul/Cech bicomplex.
    FormVector omega = c.omega();
    if (sign == BoundarySign::minus) {
        FormVector neg;
        for (const auto& w : omega.parts) neg.parts.push_back(-w);
        omega = neg;
    }
    return H2Class(c.f(), c.s(), c.k(), 1, omega);
}

bool check_square(const DivisorArc& a, const Rational& px, const Rational& py,
                  uint64_t perturbation_seed, BoundarySign sign) {
    const std::vector<Rational> point{px, py};
    if (!a.f.evaluate(point).is_zero() || !a.g.evaluate(point).is_zero())
        throw PreconditionError("point must lie on V(f, g)");

    H2Class boundary = cousin_boundary(tangent_divisor(a), px, py, 0, sign);
    H2Class cycle = tangent_zero_cycle(ZeroCycleArc(a.f, a.g, a.f1, a.g1));

    // Perturb the cycle-side representative by elements of the images of
    // the two Cech legs (u^p * eta and v^q * eta'), which do not move the
    // class; the comparison then exercises normal forms rather than
    // syntactic identity.
    const VarSet& vars = a.f.vars();
    std::mt19937_64 rng(perturbation_seed);
    std::uniform_int_distribution<int> coeff(-3, 3);
    auto random_form = [&]() {
        DifferentialForm w(vars, 1);
        for (int slot = 0; slot < 2; ++slot) {
            Polynomial p(vars);
            for (int dx = 0; dx <= 2; ++dx)
                for (int dy = 0; dy + dx <= 2; ++dy) {
                    Monomial m;
                    m.e[0] = dx;
                    m.e[1] = dy;
                    p.add_term(m, Rational(coeff(rng)));
                }
            w.add_component(static_cast<uint8_t>(1u << slot), p);
        }
        return w;
    };
    DifferentialForm eta_u = random_form();
    DifferentialForm eta_v = random_form();
    FormVector perturbed = cycle.omega();
    perturbed.parts[0] = perturbed.parts[0] +
                         eta_u.scale(cycle.u().pow(static_cast<unsigned>(cycle.p()))) +
                         eta_v.scale(cycle.v().pow(static_cast<unsigned>(cycle.q())));
    H2Class cycle_perturbed(cycle.u(), cycle.v(), cycle.p(), cycle.q(), perturbed);

    return h2_equal(boundary, cycle_perturbed);
}

} // namespace cousinforge

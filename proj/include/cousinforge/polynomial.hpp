// Exact multivariate polynomials over Q in at most three variables.
// Terms are stored sparsely with no zero coefficients; printing is
// canonical (grevlex-descending).
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cousinforge/monomial.hpp"
#include "cousinforge/rational.hpp"

namespace cousinforge {

class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(VarSet vars) : vars_(std::move(vars)) {}

    static Polynomial zero(const VarSet& vars) { return Polynomial(vars); }
    static Polynomial constant(const VarSet& vars, const Rational& c);
    static Polynomial variable(const VarSet& vars, int slot);
    static Polynomial term(const VarSet& vars, const Monomial& m, const Rational& c);

    const VarSet& vars() const { return vars_; }
    int num_vars() const { return vars_.size(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_constant());
    }
    // Total degree; -1 for the zero polynomial.
    int degree() const;

    Rational coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    void set_coeff(const Monomial& m, const Rational& c) {
        if (c.is_zero())
            terms_.erase(m);
        else
            terms_[m] = c;
    }
    void add_term(const Monomial& m, const Rational& c);

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rational& c) const;
    Polynomial pow(unsigned e) const;

    bool operator==(const Polynomial& o) const {
        return vars_ == o.vars_ && terms_ == o.terms_;
    }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    // Leading term under the given order; polynomial must be nonzero.
    std::pair<Monomial, Rational> leading_term(const MonomialOrder& ord) const;

    Rational evaluate(const std::vector<Rational>& point) const;
    Polynomial derivative(int slot) const;
    // Substitutes x_slot -> x_slot + a; used for Taylor expansion at a point.
    Polynomial shift(int slot, const Rational& a) const;

    // Terms sorted descending under ord.
    std::vector<std::pair<Monomial, Rational>> sorted_terms(const MonomialOrder& ord) const;

    std::string str() const;

private:
    VarSet vars_;
    std::map<Monomial, Rational> terms_;

    void check_compatible(const Polynomial& o) const;
};

struct DivisionResult {
    Polynomial quotient;
    Polynomial remainder;
};

// Division by a single divisor g != 0: p = q*g + r with no monomial of r
// divisible by the leading monomial of g. Over a domain r = 0 iff g | p.
DivisionResult divide_by_single(const Polynomial& p, const Polynomial& g,
                                const MonomialOrder& ord);

// Full multivariate reduction against a list of divisors; returns the
// normal form (and the quotients, aligned with the divisor list).
struct MultiDivisionResult {
    std::vector<Polynomial> quotients;
    Polynomial remainder;
};
MultiDivisionResult reduce(const Polynomial& p, const std::vector<Polynomial>& gs,
                           const MonomialOrder& ord);

bool divides(const Polynomial& g, const Polynomial& p);
// True iff f^k divides p.
bool power_divides(const Polynomial& f, int k, const Polynomial& p);

// Content = gcd of integer numerators / lcm of denominators; primitive
// part has integer coprime coefficients and positive leading sign.
Polynomial primitive_part(const Polynomial& p);

// Univariate gcd over Q (monic); both inputs in the same single variable.
Polynomial poly_gcd_univariate(const Polynomial& a, const Polynomial& b);

} // namespace cousinforge

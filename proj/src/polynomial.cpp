#include "cousinforge/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace cousinforge {

void Polynomial::check_compatible(const Polynomial& o) const {
    if (vars_ != o.vars_)
        throw PreconditionError("variable-list mismatch");
}

Polynomial Polynomial::constant(const VarSet& vars, const Rational& c) {
    Polynomial p(vars);
    p.add_term(Monomial{}, c);
    return p;
}

Polynomial Polynomial::variable(const VarSet& vars, int slot) {
    if (slot < 0 || slot >= vars.size())
        throw PreconditionError("variable slot out of range");
    Monomial m;
    m.e[slot] = 1;
    return term(vars, m, Rational(1));
}

Polynomial Polynomial::term(const VarSet& vars, const Monomial& m, const Rational& c) {
    Polynomial p(vars);
    p.add_term(m, c);
    return p;
}

int Polynomial::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

Polynomial Polynomial::operator-() const {
    Polynomial r(vars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    check_compatible(o);
    Polynomial r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    check_compatible(o);
    Polynomial r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    check_compatible(o);
    Polynomial r(vars_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
    Polynomial r(vars_);
    if (c.is_zero()) return r;
    for (const auto& [m, a] : terms_) r.terms_.emplace(m, a * c);
    return r;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial r = Polynomial::constant(vars_, Rational(1));
    Polynomial base = *this;
    for (; e; e >>= 1) {
        if (e & 1) r = r * base;
        if (e > 1) base = base * base;
    }
    return r;
}

std::pair<Monomial, Rational> Polynomial::leading_term(const MonomialOrder& ord) const {
    if (is_zero()) throw PreconditionError("leading term of zero polynomial");
    auto it = terms_.begin();
    auto best = it;
    for (++it; it != terms_.end(); ++it)
        if (ord.less(best->first, it->first, num_vars())) best = it;
    return {best->first, best->second};
}

Rational Polynomial::evaluate(const std::vector<Rational>& point) const {
    if (static_cast<int>(point.size()) != num_vars())
        throw PreconditionError("evaluation point arity mismatch");
    Rational total(0);
    for (const auto& [m, c] : terms_) {
        Rational v = c;
        for (int i = 0; i < num_vars(); ++i)
            if (m.e[i]) v *= point[i].pow(static_cast<unsigned>(m.e[i]));
        total += v;
    }
    return total;
}

Polynomial Polynomial::derivative(int slot) const {
    Polynomial r(vars_);
    for (const auto& [m, c] : terms_) {
        if (m.e[slot] == 0) continue;
        Monomial n = m;
        n.e[slot] -= 1;
        r.add_term(n, c * Rational(m.e[slot]));
    }
    return r;
}

Polynomial Polynomial::shift(int slot, const Rational& a) const {
    // x^k -> (x + a)^k expanded binomially.
    Polynomial r(vars_);
    for (const auto& [m, c] : terms_) {
        int k = m.e[slot];
        Monomial base = m;
        base.e[slot] = 0;
        Rational binom(1);
        for (int i = 0; i <= k; ++i) {
            Monomial n = base;
            n.e[slot] = k - i;
            r.add_term(n, c * binom * a.pow(static_cast<unsigned>(i)));
            binom *= Rational(k - i);
            binom /= Rational(i + 1);
        }
    }
    return r;
}

std::vector<std::pair<Monomial, Rational>> Polynomial::sorted_terms(const MonomialOrder& ord) const {
    std::vector<std::pair<Monomial, Rational>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
        return ord.less(b.first, a.first, num_vars());
    });
    return out;
}

std::string Polynomial::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : sorted_terms(MonomialOrder::grevlex())) {
        Rational a = c.abs();
        if (first) {
            if (c.sign() < 0) os << "-";
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        bool printed_coeff = false;
        if (!a.is_one() || m.is_constant()) {
            os << a.str();
            printed_coeff = true;
        }
        for (int i = 0; i < num_vars(); ++i) {
            if (m.e[i] == 0) continue;
            if (printed_coeff) os << "*";
            os << vars_.names[i];
            if (m.e[i] > 1) os << "^" << m.e[i];
            printed_coeff = true;
        }
    }
    return os.str();
}

DivisionResult divide_by_single(const Polynomial& p, const Polynomial& g,
                                const MonomialOrder& ord) {
    if (g.is_zero()) throw PreconditionError("division by zero polynomial");
    if (p.vars() != g.vars()) throw PreconditionError("variable-list mismatch");
    auto [glm, glc] = g.leading_term(ord);
    Polynomial work = p;
    Polynomial quotient(p.vars());
    Polynomial remainder(p.vars());
    while (!work.is_zero()) {
        auto [wm, wc] = work.leading_term(ord);
        if (glm.divides(wm)) {
            Monomial q = wm / glm;
            Rational qc = wc / glc;
            quotient.add_term(q, qc);
            work = work - Polynomial::term(p.vars(), q, qc) * g;
        } else {
            remainder.add_term(wm, wc);
            work.set_coeff(wm, Rational(0));
        }
    }
    return {quotient, remainder};
}

MultiDivisionResult reduce(const Polynomial& p, const std::vector<Polynomial>& gs,
                           const MonomialOrder& ord) {
    MultiDivisionResult res;
    res.quotients.assign(gs.size(), Polynomial(p.vars()));
    res.remainder = Polynomial(p.vars());
    std::vector<std::pair<Monomial, Rational>> leads;
    leads.reserve(gs.size());
    for (const auto& g : gs) {
        if (g.is_zero()) throw PreconditionError("zero divisor in reduction");
        if (g.vars() != p.vars()) throw PreconditionError("variable-list mismatch");
        leads.push_back(g.leading_term(ord));
    }
    Polynomial work = p;
    while (!work.is_zero()) {
        auto [wm, wc] = work.leading_term(ord);
        bool reduced = false;
        for (size_t i = 0; i < gs.size(); ++i) {
            if (!leads[i].first.divides(wm)) continue;
            Monomial q = wm / leads[i].first;
            Rational qc = wc / leads[i].second;
            res.quotients[i].add_term(q, qc);
            work = work - Polynomial::term(p.vars(), q, qc) * gs[i];
            reduced = true;
            break;
        }
        if (!reduced) {
            res.remainder.add_term(wm, wc);
            work.set_coeff(wm, Rational(0));
        }
    }
    return res;
}

bool divides(const Polynomial& g, const Polynomial& p) {
    if (g.is_zero()) throw PreconditionError("divisibility by zero polynomial");
    if (p.is_zero()) return true;
    return divide_by_single(p, g, MonomialOrder::grevlex()).remainder.is_zero();
}

bool power_divides(const Polynomial& f, int k, const Polynomial& p) {
    // Repeated single-divisor division; over a domain each exact step is
    // the only way f^k can divide.
    Polynomial cur = p;
    for (int i = 0; i < k; ++i) {
        if (cur.is_zero()) return true;
        auto d = divide_by_single(cur, f, MonomialOrder::grevlex());
        if (!d.remainder.is_zero()) return false;
        cur = d.quotient;
    }
    return true;
}

Polynomial primitive_part(const Polynomial& p) {
    if (p.is_zero()) return p;
    mpz_class den_lcm(1), num_gcd(0);
    for (const auto& [m, c] : p.terms()) {
        mpz_class l;
        mpz_lcm(l.get_mpz_t(), den_lcm.get_mpz_t(), c.den().get_mpz_t());
        den_lcm = l;
    }
    for (const auto& [m, c] : p.terms()) {
        mpz_class scaled = c.num() * (den_lcm / c.den());
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
        num_gcd = g;
    }
    Polynomial r = p * Rational(den_lcm, num_gcd);
    if (r.leading_term(MonomialOrder::grevlex()).second.sign() < 0) r = -r;
    return r;
}

Polynomial poly_gcd_univariate(const Polynomial& a, const Polynomial& b) {
    if (a.num_vars() != 1 || b.num_vars() != 1 || a.vars() != b.vars())
        throw PreconditionError("univariate gcd needs matching single-variable inputs");
    Polynomial x = a, y = b;
    const MonomialOrder ord = MonomialOrder::grevlex();
    while (!y.is_zero()) {
        Polynomial r = divide_by_single(x, y, ord).remainder;
        x = y;
        y = r;
    }
    if (x.is_zero()) return x;
    return x * (Rational(1) / x.leading_term(ord).second);  // monic
}

} // namespace cousinforge

#include "cousinforge/localcoh.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "cousinforge/grammar.hpp"

namespace cousinforge {

namespace {

bool all_components_power_divisible(const FormVector& w, const Polynomial& f, int k) {
    for (const auto& part : w.parts)
        for (const auto& [mask, p] : part.components())
            if (!power_divides(f, k, p)) return false;
    return true;
}

FormVector scale_by_power(const FormVector& w, const Polynomial& f, int e) {
    if (e == 0) return w;
    return w.scale(f.pow(static_cast<unsigned>(e)));
}

std::shared_ptr<const GroebnerBasis> pair_basis(const Polynomial& u, const Polynomial& v) {
    return GroebnerCache::instance().reduced_basis({u, v}, MonomialOrder::grevlex());
}

} // namespace

H1Class::H1Class(Polynomial f, int k, Polynomial s, FormVector omega)
    : f_(std::move(f)), k_(k), s_(std::move(s)), omega_(std::move(omega)) {
    if (f_.is_constant()) throw PreconditionError("H1 support polynomial must be nonconstant");
    if (k_ < 1) throw PreconditionError("H1 power must be positive");
    if (s_.is_zero() || divides(f_, s_))
        throw PreconditionError("H1 unit must be nonzero and prime to f");
}

std::string H1Class::str() const {
    std::ostringstream os;
    os << "[" << omega_.str() << " / (" << s_.str() << ")*(" << f_.str() << ")^" << k_
       << " @ (" << f_.str() << ")]";
    return os.str();
}

bool h1_is_zero(const H1Class& c) {
    // s is prime to the irreducible f, so the class vanishes iff f^k
    // divides every polynomial component of omega.
    return all_components_power_divisible(c.omega(), c.f(), c.k());
}

bool h1_equal(const H1Class& a, const H1Class& b) {
    if (a.f() != b.f()) throw PreconditionError("different support");
    int k = std::max(a.k(), b.k());
    FormVector wa = scale_by_power(a.omega(), a.f(), k - a.k());
    FormVector wb = scale_by_power(b.omega(), b.f(), k - b.k());
    FormVector diff = wa.scale(b.s()) - wb.scale(a.s());
    return all_components_power_divisible(diff, a.f(), k);
}

H1Class h1_add(const H1Class& a, const H1Class& b) {
    if (a.f() != b.f()) throw PreconditionError("different support");
    int k = std::max(a.k(), b.k());
    FormVector wa = scale_by_power(a.omega(), a.f(), k - a.k());
    FormVector wb = scale_by_power(b.omega(), b.f(), k - b.k());
    if (a.s() == b.s()) return H1Class(a.f(), k, a.s(), wa + wb);
    return H1Class(a.f(), k, a.s() * b.s(), wa.scale(b.s()) + wb.scale(a.s()));
}

H2Class::H2Class(Polynomial u, Polynomial v, int p, int q, FormVector omega)
    : u_(std::move(u)), v_(std::move(v)), p_(p), q_(q), omega_(std::move(omega)) {
    if (p_ < 1 || q_ < 1) throw PreconditionError("H2 powers must be positive");
    if (u_.is_zero() || v_.is_zero())
        throw PreconditionError("H2 sequence entries must be nonzero");
    if (!zero_dimensional(*pair_basis(u_, v_)))
        throw PreconditionError("(u, v) is not a regular sequence (V(u,v) not finite)");
}

std::string H2Class::str() const {
    std::ostringstream os;
    os << "[" << omega_.str() << " / (" << u_.str() << ")^" << p_ << "*(" << v_.str() << ")^"
       << q_ << " @ (" << u_.str() << "," << v_.str() << ")]";
    return os.str();
}

bool h2_is_zero(const H2Class& c) {
    // Transition maps are injective for a regular sequence, so vanishing
    // in the colimit happens at the present level: omega in (u^p, v^q)M.
    auto basis = GroebnerCache::instance().reduced_basis(
        {c.u().pow(static_cast<unsigned>(c.p())), c.v().pow(static_cast<unsigned>(c.q()))},
        MonomialOrder::grevlex());
    for (const auto& part : c.omega().parts)
        for (const auto& [mask, p] : part.components())
            if (!ideal_member(p, *basis)) return false;
    return true;
}

bool h2_equal(const H2Class& a, const H2Class& b) {
    if (a.u() != b.u() || a.v() != b.v())
        throw PreconditionError("different support presentation");
    int p = std::max(a.p(), b.p());
    int q = std::max(a.q(), b.q());
    FormVector wa = scale_by_power(scale_by_power(a.omega(), a.u(), p - a.p()), a.v(), q - a.q());
    FormVector wb = scale_by_power(scale_by_power(b.omega(), b.u(), p - b.p()), b.v(), q - b.q());
    return h2_is_zero(H2Class(a.u(), a.v(), p, q, wa - wb));
}

H2Class h2_add(const H2Class& a, const H2Class& b) {
    if (a.u() != b.u() || a.v() != b.v())
        throw PreconditionError("different support presentation");
    int p = std::max(a.p(), b.p());
    int q = std::max(a.q(), b.q());
    FormVector wa = scale_by_power(scale_by_power(a.omega(), a.u(), p - a.p()), a.v(), q - a.q());
    FormVector wb = scale_by_power(scale_by_power(b.omega(), b.u(), p - b.p()), b.v(), q - b.q());
    return H2Class(a.u(), a.v(), p, q, wa + wb);
}

H2Class h2_rebase(const H2Class& c, int new_p, int new_q) {
    if (new_p < c.p() || new_q < c.q())
        throw PreconditionError("rebase powers must not decrease");
    FormVector w = scale_by_power(scale_by_power(c.omega(), c.u(), new_p - c.p()),
                                  c.v(), new_q - c.q());
    return H2Class(c.u(), c.v(), new_p, new_q, w);
}

bool InverseSystemExpansion::operator==(const InverseSystemExpansion& o) const {
    return a == o.a && b == o.b && terms == o.terms;
}

std::string InverseSystemExpansion::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [ij, w] : terms) {
        if (!first) os << " + ";
        first = false;
        os << "(" << w.str() << ")*u^(" << ij.first << ")*v^(" << ij.second << ")";
    }
    return os.str();
}

namespace {

// Splits "[body @ (support)]" into the fraction body and support text.
std::pair<std::string, std::string> split_class_text(const std::string& text) {
    size_t open = text.find('[');
    size_t close = text.rfind(']');
    if (open == std::string::npos || close == std::string::npos || close <= open)
        throw ParseError("class text must be bracketed: " + text);
    std::string inner = text.substr(open + 1, close - open - 1);
    size_t at = inner.rfind(" @ ");
    if (at == std::string::npos) throw ParseError("class text missing ' @ ': " + text);
    return {inner.substr(0, at), inner.substr(at + 3)};
}

// "(p)^k" or "(p)" -> polynomial and exponent.
std::pair<Polynomial, int> parse_paren_power(const std::string& text, size_t& pos,
                                             const VarSet& vars) {
    size_t open = text.find('(', pos);
    if (open == std::string::npos) throw ParseError("expected '(' in class denominator");
    int depth = 1;
    size_t close = open + 1;
    while (close < text.size() && depth > 0) {
        if (text[close] == '(') ++depth;
        if (text[close] == ')') --depth;
        ++close;
    }
    if (depth != 0) throw ParseError("unbalanced parentheses in class text");
    Polynomial p = parse_polynomial(text.substr(open + 1, close - open - 2), vars);
    pos = close;
    int power = 1;
    if (pos < text.size() && text[pos] == '^') {
        ++pos;
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw ParseError("expected exponent in class denominator");
        power = std::stoi(text.substr(start, pos - start));
    }
    return {p, power};
}

} // namespace

H1Class parse_h1_class(const std::string& text, const VarSet& vars) {
    auto [body, support] = split_class_text(text);
    size_t slash = body.rfind(" / ");
    if (slash == std::string::npos) throw ParseError("class text missing ' / ': " + text);
    DifferentialForm omega = parse_form(body.substr(0, slash), vars);
    std::string denom = body.substr(slash + 3);
    size_t pos = 0;
    auto [s, s_pow] = parse_paren_power(denom, pos, vars);
    if (s_pow != 1) throw ParseError("H1 unit must not carry a power");
    auto [f, k] = parse_paren_power(denom, pos, vars);
    (void)support;  // redundant with f by construction
    return H1Class(f, k, s, FormVector(omega));
}

H2Class parse_h2_class(const std::string& text, const VarSet& vars) {
    auto [body, support] = split_class_text(text);
    size_t slash = body.rfind(" / ");
    if (slash == std::string::npos) throw ParseError("class text missing ' / ': " + text);
    DifferentialForm omega = parse_form(body.substr(0, slash), vars);
    std::string denom = body.substr(slash + 3);
    size_t pos = 0;
    auto [u, p] = parse_paren_power(denom, pos, vars);
    auto [v, q] = parse_paren_power(denom, pos, vars);
    (void)support;
    return H2Class(u, v, p, q, FormVector(omega));
}

InverseSystemExpansion inverse_system_normal_form(const H2Class& c,
                                                  const Rational& a, const Rational& b) {
    const VarSet& vars = c.u().vars();
    if (vars.size() != 2)
        throw PreconditionError("inverse system expansion needs two variables");
    Polynomial x_minus_a = Polynomial::variable(vars, 0) - Polynomial::constant(vars, a);
    Polynomial y_minus_b = Polynomial::variable(vars, 1) - Polynomial::constant(vars, b);
    if (c.u() != x_minus_a || c.v() != y_minus_b)
        throw PreconditionError("non-coordinate (u, v) for inverse system expansion");

    InverseSystemExpansion out;
    out.a = a;
    out.b = b;
    const size_t nparts = c.omega().parts.size();
    for (size_t part = 0; part < nparts; ++part) {
        const DifferentialForm& w = c.omega().parts[part];
        for (const auto& [mask, poly] : w.components()) {
            // Taylor coefficients at (a, b): coefficients of the shifted
            // polynomial p(x+a, y+b).
            Polynomial shifted = poly.shift(0, a).shift(1, b);
            for (const auto& [m, coeff] : shifted.terms()) {
                int i = m.e[0] - c.p();
                int j = m.e[1] - c.q();
                if (i >= 0 || j >= 0) continue;  // regular along a Cech leg
                auto key = std::make_pair(i, j);
                auto it = out.terms.find(key);
                if (it == out.terms.end()) {
                    std::vector<DifferentialForm> parts;
                    for (size_t t = 0; t < nparts; ++t)
                        parts.emplace_back(vars, c.omega().parts[t].degree());
                    it = out.terms.emplace(key, FormVector(std::move(parts))).first;
                }
                it->second.parts[part].add_component(mask,
                                                     Polynomial::constant(vars, coeff));
            }
        }
    }
    return out;
}

} // namespace cousinforge

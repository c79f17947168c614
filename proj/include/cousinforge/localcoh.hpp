// Local cohomology classes H^1_{(f)} and H^2_{(u,v)} with decidable zero
// and equality tests, the colimit rebase, and the inverse-system normal
// form at a rational point (the independent oracle for the H^2 decisions).
#pragma once

#include <map>
#include <string>
#include <utility>

#include "cousinforge/forms.hpp"
#include "cousinforge/groebner.hpp"

namespace cousinforge {

// Class of omega / (s * f^k) in M_(f)[1/f] / M_(f), i.e. the colimit of
// Ext^1 against powers of (f). f is asserted irreducible by the caller;
// construction checks f nonconstant and f not dividing s.
class H1Class {
public:
    H1Class(Polynomial f, int k, Polynomial s, FormVector omega);

    const Polynomial& f() const { return f_; }
    int k() const { return k_; }
    const Polynomial& s() const { return s_; }
    const FormVector& omega() const { return omega_; }

    std::string str() const;

private:
    Polynomial f_;
    int k_ = 1;
    Polynomial s_;
    FormVector omega_;
};

bool h1_is_zero(const H1Class& c);
bool h1_equal(const H1Class& a, const H1Class& b);
H1Class h1_add(const H1Class& a, const H1Class& b);

// Class of omega / (u^p v^q) in the colimit of M/(u^p, v^q)M along
// multiplication by uv; (u, v) must cut out a finite set (the certified
// regular-sequence precondition).
class H2Class {
public:
    H2Class(Polynomial u, Polynomial v, int p, int q, FormVector omega);

    const Polynomial& u() const { return u_; }
    const Polynomial& v() const { return v_; }
    int p() const { return p_; }
    int q() const { return q_; }
    const FormVector& omega() const { return omega_; }

    std::string str() const;

private:
    Polynomial u_, v_;
    int p_ = 1, q_ = 1;
    FormVector omega_;
};

bool h2_is_zero(const H2Class& c);
bool h2_equal(const H2Class& a, const H2Class& b);
H2Class h2_add(const H2Class& a, const H2Class& b);
H2Class h2_rebase(const H2Class& c, int new_p, int new_q);

// Finite Laurent tail of the class at a rational point with coordinate
// denominators (u, v) = (x-a, y-b): the strictly negative exponents with
// constant-coefficient form entries. A complete invariant of the class.
struct InverseSystemExpansion {
    Rational a, b;
    std::map<std::pair<int, int>, FormVector> terms;

    bool empty() const { return terms.empty(); }
    bool operator==(const InverseSystemExpansion& o) const;
    std::string str() const;
};

InverseSystemExpansion inverse_system_normal_form(const H2Class& c,
                                                  const Rational& a, const Rational& b);

// Inverses of the printed "[omega / (s)*(f)^k @ (f)]" and
// "[omega / (u)^p*(v)^q @ (u,v)]" templates (single-part numerators).
H1Class parse_h1_class(const std::string& text, const VarSet& vars);
H2Class parse_h2_class(const std::string& text, const VarSet& vars);

} // namespace cousinforge

// Text grammar for the interchange format: polynomials (variables x,y,z
// or t, integer and a/b coefficients, + - * ^, whitespace ignored) and
// differential forms (d(x) basis symbols wedged with ^).
#pragma once

#include <string>
#include <vector>

#include "cousinforge/forms.hpp"
#include "cousinforge/polynomial.hpp"

namespace cousinforge {

Polynomial parse_polynomial(const std::string& text, const VarSet& vars);
DifferentialForm parse_form(const std::string& text, const VarSet& vars);

// "a,b" -> rational pair.
std::vector<Rational> parse_point(const std::string& text, int arity);

} // namespace cousinforge

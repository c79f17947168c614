// Buchberger Groebner bases, ideal membership, the zero-dimensionality
// test and the radical point certificate, plus the shared read-only basis
// cache keyed by (generators, order).
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cousinforge/polynomial.hpp"

namespace cousinforge {

struct GroebnerBasis {
    std::vector<Polynomial> generators;
    MonomialOrder order;
    bool reduced = false;
};

// Basic Buchberger with the normal pair-selection strategy (smallest lcm
// first) and the coprime-lead criterion; the result is the unique reduced
// basis when reduce is set.
GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const MonomialOrder& order,
                         bool reduce = true);

bool ideal_member(const Polynomial& p, const GroebnerBasis& basis);

// Finiteness criterion: every variable has a pure power among the leading
// monomials. Requires a reduced basis.
bool zero_dimensional(const GroebnerBasis& basis);

enum class RadicalAnswer { contained, undecided };

// Checks (x_i - a_i)^N in the ideal for some N <= power_bound, for every
// variable. "undecided" is distinct from a definite no.
RadicalAnswer radical_contains_point(const GroebnerBasis& basis,
                                     const std::vector<Rational>& point, int power_bound);

// Process-wide memo for reduced bases; safe for concurrent readers and
// never changes answers. The optional directory adds a disk layer.
class GroebnerCache {
public:
    static GroebnerCache& instance();

    void set_directory(const std::string& dir);

    std::shared_ptr<const GroebnerBasis> reduced_basis(const std::vector<Polynomial>& gens,
                                                       const MonomialOrder& order);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    GroebnerCache();
    ~GroebnerCache();
};

} // namespace cousinforge

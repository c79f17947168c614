// Kaehler differential forms over Q[x1..xk] (k <= 3), the exterior
// derivative and wedge product, graded dimension counts, and the
// direct-sum bundle patterns Omega^{m+j-1} (+) Omega^{m+j-3} (+) ...
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cousinforge/polynomial.hpp"

namespace cousinforge {

// Index tuples are strictly increasing and encoded as bitmasks over the
// variable slots; antisymmetry is normalized away at construction.
class DifferentialForm {
public:
    DifferentialForm() = default;
    DifferentialForm(VarSet vars, int degree) : vars_(std::move(vars)), degree_(degree) {}

    static DifferentialForm zero(const VarSet& vars, int degree) {
        return DifferentialForm(vars, degree);
    }
    static DifferentialForm from_polynomial(const Polynomial& p) {
        DifferentialForm w(p.vars(), 0);
        w.add_component(0, p);
        return w;
    }
    // coeff * dx_{i1} ^ ... ^ dx_{in} for the (unsorted) index list; the
    // sign of the sorting permutation is absorbed into the coefficient.
    static DifferentialForm monomial_form(const VarSet& vars, const std::vector<int>& indices,
                                          const Polynomial& coeff);

    const VarSet& vars() const { return vars_; }
    int degree() const { return degree_; }
    bool is_zero() const { return components_.empty(); }
    const std::map<uint8_t, Polynomial>& components() const { return components_; }
    Polynomial component(uint8_t mask) const;

    void add_component(uint8_t mask, const Polynomial& p);

    DifferentialForm operator+(const DifferentialForm& o) const;
    DifferentialForm operator-(const DifferentialForm& o) const;
    DifferentialForm operator-() const;
    DifferentialForm scale(const Rational& c) const;
    DifferentialForm scale(const Polynomial& p) const;

    bool operator==(const DifferentialForm& o) const;
    bool operator!=(const DifferentialForm& o) const { return !(*this == o); }

    // Maximum total degree of a term (dx counts 1); -1 when zero.
    int internal_degree() const;

    std::string str() const;

private:
    VarSet vars_;
    int degree_ = 0;
    std::map<uint8_t, Polynomial> components_;
};

DifferentialForm exterior_d(const DifferentialForm& w);
DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);

// d of a polynomial as a 1-form.
inline DifferentialForm d_of(const Polynomial& p) {
    return exterior_d(DifferentialForm::from_polynomial(p));
}

// Dimension over Q of the degree-d piece of Omega^n_{Q[x1..xk]/Q}
// (dx_i has degree 1, polynomial variables degree 1).
long graded_dimension(int n, int d, int num_vars);

struct OmegaBundleShape {
    int weight = 0;    // m
    int codim = 0;     // j
    std::vector<int> degrees;            // m+j-1, m+j-3, ... down to >= 0
    std::vector<int> effective_degrees;  // with summands above num_vars pruned
};

OmegaBundleShape omega_bundle(int weight, int codim, int num_vars);

// An element of the direct sum; a plain form is the one-part case.
struct FormVector {
    std::vector<DifferentialForm> parts;

    FormVector() = default;
    explicit FormVector(DifferentialForm w) { parts.push_back(std::move(w)); }
    explicit FormVector(std::vector<DifferentialForm> p) : parts(std::move(p)) {}

    bool is_zero() const {
        for (const auto& w : parts)
            if (!w.is_zero()) return false;
        return true;
    }
    FormVector scale(const Polynomial& p) const {
        FormVector r;
        for (const auto& w : parts) r.parts.push_back(w.scale(p));
        return r;
    }
    FormVector operator+(const FormVector& o) const;
    FormVector operator-(const FormVector& o) const;
    bool operator==(const FormVector& o) const;

    std::string str() const;
};

// The i-th Adams eigen-summand of the codim-j weight-m bundle: a single
// Omega^{2i-(m+j)-1} when (m+j)/2 < i <= m+j, otherwise the zero marker.
struct EigenOmega {
    int weight = 0;
    int codim = 0;
    int eigen_index = 0;
    bool is_zero = true;
    int form_degree = -1;
};

EigenOmega eigen_omega(int weight, int codim, int eigen_index, int num_vars);

} // namespace cousinforge

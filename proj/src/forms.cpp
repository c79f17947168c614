#include "cousinforge/forms.hpp"

#include <algorithm>
#include <sstream>

namespace cousinforge {

namespace {

int popcount8(uint8_t m) { return __builtin_popcount(m); }

// Sign of merging index i into mask (counting transpositions past the
// set bits below i); 0 if already present.
int insertion_sign(uint8_t mask, int i) {
    if (mask & (1u << i)) return 0;
    int swaps = popcount8(static_cast<uint8_t>(mask & ((1u << i) - 1)));
    return swaps % 2 ? -1 : 1;
}

} // namespace

DifferentialForm DifferentialForm::monomial_form(const VarSet& vars,
                                                 const std::vector<int>& indices,
                                                 const Polynomial& coeff) {
    DifferentialForm w(vars, static_cast<int>(indices.size()));
    uint8_t mask = 0;
    int sign = 1;
    for (int i : indices) {
        if (i < 0 || i >= vars.size()) throw PreconditionError("form index out of range");
        int s = insertion_sign(mask, i);
        if (s == 0) return w;  // repeated dx -> zero
        // Parity of moving the new symbol past the larger ones already set.
        int larger = popcount8(static_cast<uint8_t>(mask >> (i + 1)));
        sign *= (larger % 2 ? -1 : 1);
        mask |= static_cast<uint8_t>(1u << i);
    }
    w.add_component(mask, sign < 0 ? -coeff : coeff);
    return w;
}

Polynomial DifferentialForm::component(uint8_t mask) const {
    auto it = components_.find(mask);
    return it == components_.end() ? Polynomial::zero(vars_) : it->second;
}

void DifferentialForm::add_component(uint8_t mask, const Polynomial& p) {
    if (popcount8(mask) != degree_)
        throw PreconditionError("component arity does not match form degree");
    if (p.is_zero()) return;
    auto it = components_.find(mask);
    if (it == components_.end()) {
        components_.emplace(mask, p);
        return;
    }
    it->second = it->second + p;
    if (it->second.is_zero()) components_.erase(it);
}

DifferentialForm DifferentialForm::operator+(const DifferentialForm& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (vars_ != o.vars_ || degree_ != o.degree_)
        throw PreconditionError("form sum shape mismatch");
    DifferentialForm r = *this;
    for (const auto& [m, p] : o.components_) r.add_component(m, p);
    return r;
}

DifferentialForm DifferentialForm::operator-(const DifferentialForm& o) const {
    return *this + (-o);
}

DifferentialForm DifferentialForm::operator-() const {
    DifferentialForm r(vars_, degree_);
    for (const auto& [m, p] : components_) r.components_.emplace(m, -p);
    return r;
}

DifferentialForm DifferentialForm::scale(const Rational& c) const {
    DifferentialForm r(vars_, degree_);
    if (c.is_zero()) return r;
    for (const auto& [m, p] : components_) r.components_.emplace(m, p * c);
    return r;
}

DifferentialForm DifferentialForm::scale(const Polynomial& p) const {
    DifferentialForm r(vars_, degree_);
    for (const auto& [m, q] : components_) r.add_component(m, q * p);
    return r;
}

bool DifferentialForm::operator==(const DifferentialForm& o) const {
    if (is_zero() && o.is_zero()) return true;
    return vars_ == o.vars_ && degree_ == o.degree_ && components_ == o.components_;
}

int DifferentialForm::internal_degree() const {
    int best = -1;
    for (const auto& [m, p] : components_)
        best = std::max(best, p.degree() + popcount8(m));
    return best;
}

std::string DifferentialForm::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mask, p] : components_) {
        std::string coeff = p.str();
        const bool multi_term = p.terms().size() > 1;
        bool negative = !multi_term && !coeff.empty() && coeff[0] == '-';
        if (negative) coeff = coeff.substr(1);
        if (first) {
            if (negative) os << "-";
            first = false;
        } else {
            os << (negative ? " - " : " + ");
        }
        if (mask == 0) {
            os << (multi_term ? "(" + coeff + ")" : coeff);
            continue;
        }
        if (multi_term) {
            os << "(" << coeff << ")*";
        } else if (coeff != "1") {
            os << coeff << "*";
        }
        bool first_sym = true;
        for (int i = 0; i < vars_.size(); ++i) {
            if (!(mask & (1u << i))) continue;
            if (!first_sym) os << "^";
            os << "d(" << vars_.names[i] << ")";
            first_sym = false;
        }
    }
    return os.str();
}

DifferentialForm exterior_d(const DifferentialForm& w) {
    DifferentialForm r(w.vars(), w.degree() + 1);
    if (w.degree() + 1 > w.vars().size()) return r;  // identically zero
    for (const auto& [mask, p] : w.components()) {
        for (int i = 0; i < w.vars().size(); ++i) {
            Polynomial dp = p.derivative(i);
            if (dp.is_zero()) continue;
            int s = insertion_sign(mask, i);
            if (s == 0) continue;
            r.add_component(static_cast<uint8_t>(mask | (1u << i)),
                            s < 0 ? -dp : dp);
        }
    }
    return r;
}

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
    if (a.is_zero() || b.is_zero())
        return DifferentialForm::zero(a.vars(), a.degree() + b.degree());
    if (a.vars() != b.vars()) throw PreconditionError("wedge variable mismatch");
    DifferentialForm r(a.vars(), a.degree() + b.degree());
    if (r.degree() > a.vars().size()) return r;
    for (const auto& [ma, pa] : a.components()) {
        for (const auto& [mb, pb] : b.components()) {
            if (ma & mb) continue;
            // b's symbols sit to the right of a's; each must move left
            // past the larger symbols already placed.
            int swaps = 0;
            uint8_t mask = ma;
            for (int i = 0; i < kMaxVars; ++i) {
                if (!(mb & (1u << i))) continue;
                swaps += popcount8(static_cast<uint8_t>(mask >> (i + 1)));
                mask |= static_cast<uint8_t>(1u << i);
            }
            Polynomial c = pa * pb;
            r.add_component(mask, swaps % 2 ? -c : c);
        }
    }
    return r;
}

long graded_dimension(int n, int d, int num_vars) {
    if (n < 0 || d < 0 || n > num_vars || d < n) return 0;
    auto binom = [](long a, long b) {
        if (b < 0 || b > a) return 0L;
        long r = 1;
        for (long i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
        return r;
    };
    // Choose the index tuple, then a coefficient monomial of degree d - n.
    long tuples = binom(num_vars, n);
    long monos = binom(d - n + num_vars - 1, num_vars - 1);
    if (num_vars == 0) monos = (d - n == 0) ? 1 : 0;
    return tuples * monos;
}

OmegaBundleShape omega_bundle(int weight, int codim, int num_vars) {
    OmegaBundleShape shape;
    shape.weight = weight;
    shape.codim = codim;
    for (int deg = weight + codim - 1; deg >= 0; deg -= 2) {
        shape.degrees.push_back(deg);
        if (deg <= num_vars) shape.effective_degrees.push_back(deg);
    }
    return shape;
}

FormVector FormVector::operator+(const FormVector& o) const {
    if (parts.size() != o.parts.size())
        throw PreconditionError("bundle element part-count mismatch");
    FormVector r;
    for (size_t i = 0; i < parts.size(); ++i) r.parts.push_back(parts[i] + o.parts[i]);
    return r;
}

FormVector FormVector::operator-(const FormVector& o) const {
    if (parts.size() != o.parts.size())
        throw PreconditionError("bundle element part-count mismatch");
    FormVector r;
    for (size_t i = 0; i < parts.size(); ++i) r.parts.push_back(parts[i] - o.parts[i]);
    return r;
}

bool FormVector::operator==(const FormVector& o) const {
    if (parts.size() != o.parts.size()) return false;
    for (size_t i = 0; i < parts.size(); ++i)
        if (!(parts[i] == o.parts[i])) return false;
    return true;
}

std::string FormVector::str() const {
    if (parts.size() == 1) return parts[0].str();
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += " (+) ";
        s += parts[i].str();
    }
    return s;
}

EigenOmega eigen_omega(int weight, int codim, int eigen_index, int num_vars) {
    EigenOmega e;
    e.weight = weight;
    e.codim = codim;
    e.eigen_index = eigen_index;
    const int mj = weight + codim;
    if (2 * eigen_index > mj && eigen_index <= mj) {
        int deg = 2 * eigen_index - mj - 1;
        if (deg >= 0 && deg <= num_vars) {
            e.is_zero = false;
            e.form_degree = deg;
        }
    }
    return e;
}

} // namespace cousinforge

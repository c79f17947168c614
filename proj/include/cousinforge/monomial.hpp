// Exponent tuples over an ordered variable list (at most three variables)
// and the two monomial orders used everywhere: lex and graded-reverse-lex,
// optionally with a variable priority permutation.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cousinforge/errors.hpp"

namespace cousinforge {

inline constexpr int kMaxVars = 3;

// Ordered variable names; the exponent slot i of every Monomial refers to
// names[i].
struct VarSet {
    std::vector<std::string> names;

    VarSet() = default;
    explicit VarSet(std::vector<std::string> n) : names(std::move(n)) {
        if (names.size() > kMaxVars)
            throw PreconditionError("more than " + std::to_string(kMaxVars) + " variables");
    }

    int size() const { return static_cast<int>(names.size()); }
    bool operator==(const VarSet& o) const { return names == o.names; }
    bool operator!=(const VarSet& o) const { return names != o.names; }

    int index_of(const std::string& v) const {
        for (int i = 0; i < size(); ++i)
            if (names[i] == v) return i;
        return -1;
    }
};

struct Monomial {
    std::array<int, kMaxVars> e{0, 0, 0};

    int total_degree() const { return e[0] + e[1] + e[2]; }
    bool is_constant() const { return e[0] == 0 && e[1] == 0 && e[2] == 0; }

    bool divides(const Monomial& m) const {
        for (int i = 0; i < kMaxVars; ++i)
            if (e[i] > m.e[i]) return false;
        return true;
    }
    Monomial operator*(const Monomial& m) const {
        Monomial r;
        for (int i = 0; i < kMaxVars; ++i) r.e[i] = e[i] + m.e[i];
        return r;
    }
    // Caller must ensure divisibility.
    Monomial operator/(const Monomial& m) const {
        Monomial r;
        for (int i = 0; i < kMaxVars; ++i) r.e[i] = e[i] - m.e[i];
        return r;
    }
    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r;
        for (int i = 0; i < kMaxVars; ++i) r.e[i] = a.e[i] > b.e[i] ? a.e[i] : b.e[i];
        return r;
    }

    bool operator==(const Monomial& o) const { return e == o.e; }
    bool operator!=(const Monomial& o) const { return e != o.e; }
    // Structural order used for canonical term storage; unrelated to the
    // algebraic monomial orders below.
    bool operator<(const Monomial& o) const { return e < o.e; }
};

enum class OrderKind { lex, grevlex };

struct MonomialOrder {
    OrderKind kind = OrderKind::grevlex;
    // priority[0] is the most significant variable slot.
    std::array<int, kMaxVars> priority{0, 1, 2};

    static MonomialOrder lex() { return MonomialOrder{OrderKind::lex, {0, 1, 2}}; }
    static MonomialOrder grevlex() { return MonomialOrder{OrderKind::grevlex, {0, 1, 2}}; }

    // Total order compatible with multiplication. Returns <0, 0, >0.
    int compare(const Monomial& a, const Monomial& b, int nvars) const {
        if (kind == OrderKind::grevlex) {
            int da = 0, db = 0;
            for (int i = 0; i < nvars; ++i) {
                da += a.e[priority[i]];
                db += b.e[priority[i]];
            }
            if (da != db) return da < db ? -1 : 1;
            // Ties: the last variable (in priority order) where the
            // exponents differ; the one with the smaller exponent wins.
            for (int i = nvars - 1; i >= 0; --i) {
                int ai = a.e[priority[i]], bi = b.e[priority[i]];
                if (ai != bi) return ai > bi ? -1 : 1;
            }
            return 0;
        }
        for (int i = 0; i < nvars; ++i) {
            int ai = a.e[priority[i]], bi = b.e[priority[i]];
            if (ai != bi) return ai < bi ? -1 : 1;
        }
        return 0;
    }

    bool less(const Monomial& a, const Monomial& b, int nvars) const {
        return compare(a, b, nvars) < 0;
    }

    std::string str() const { return kind == OrderKind::lex ? "lex" : "grevlex"; }
};

} // namespace cousinforge

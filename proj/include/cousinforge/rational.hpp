// Exact rational scalars. Thin value wrapper around GMP's mpq_class that
// guarantees canonical form (lowest terms, positive denominator, 0 = 0/1)
// on every construction path.
#pragma once

#include <gmpxx.h>

#include <string>

#include "cousinforge/errors.hpp"

namespace cousinforge {

class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}            // NOLINT: implicit by design
    Rational(long n, long d) : v_(n, d) {
        if (d == 0) throw PreconditionError("rational with zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const mpz_class& n) : v_(n) {}
    Rational(const mpz_class& n, const mpz_class& d) : v_(n, d) {
        if (d == 0) throw PreconditionError("rational with zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    // Accepts "a" and "a/b" with optional leading sign.
    static Rational parse(const std::string& text);

    const mpq_class& raw() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw PreconditionError("division by zero rational");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }

    Rational abs() const { return sign() < 0 ? -*this : *this; }

    Rational pow(unsigned e) const {
        Rational r(1), base = *this;
        for (; e; e >>= 1) {
            if (e & 1) r *= base;
            if (e > 1) base *= base;
        }
        return r;
    }

    // Prints "a" for integers and "a/b" otherwise.
    std::string str() const {
        if (v_.get_den() == 1) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

private:
    mpq_class v_;
};

inline Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(mpz_class(text));
        mpz_class n(text.substr(0, slash));
        mpz_class d(text.substr(slash + 1));
        if (d == 0) throw ParseError("zero denominator in rational literal");
        return Rational(n, d);
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational literal: " + text);
    }
}

} // namespace cousinforge

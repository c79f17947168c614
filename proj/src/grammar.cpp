#include "cousinforge/grammar.hpp"

#include <cctype>
#include <optional>

namespace cousinforge {

namespace {

// Recursive-descent parser shared by the polynomial and form grammars.
// A parsed term is a coefficient polynomial together with the wedge list
// of basis indices collected from d(..) symbols (empty for polynomials).
class Parser {
public:
    Parser(const std::string& text, const VarSet& vars, bool allow_forms)
        : text_(text), vars_(vars), allow_forms_(allow_forms) {}

    DifferentialForm parse() {
        DifferentialForm acc;  // empty zero, degree fixed by first term
        bool first = true;
        int sign = read_sign();
        while (true) {
            auto [coeff, wedge_list] = parse_term();
            if (sign < 0) coeff = -coeff;
            DifferentialForm term = DifferentialForm::monomial_form(vars_, wedge_list, coeff);
            if (first) {
                acc = term;
                first = false;
            } else {
                if (!term.is_zero() && !acc.is_zero() && term.degree() != acc.degree())
                    fail("form terms of unequal degree");
                if (acc.is_zero())
                    acc = term;
                else if (!term.is_zero())
                    acc = acc + term;
            }
            skip_ws();
            if (pos_ >= text_.size()) break;
            char c = text_[pos_];
            if (c == '+') {
                ++pos_;
                sign = 1;
            } else if (c == '-') {
                ++pos_;
                sign = -1;
            } else {
                fail(std::string("unexpected character '") + c + "'");
            }
        }
        return acc;
    }

private:
    const std::string& text_;
    const VarSet& vars_;
    bool allow_forms_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg + " at position " + std::to_string(pos_) + " in \"" + text_ + "\"");
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    int read_sign() {
        skip_ws();
        int sign = 1;
        while (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
            if (text_[pos_] == '-') sign = -sign;
            ++pos_;
            skip_ws();
        }
        return sign;
    }

    bool peek_is(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    mpz_class parse_integer() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return mpz_class(text_.substr(start, pos_ - start));
    }

    int parse_exponent() {
        mpz_class e = parse_integer();
        if (e < 0 || e > 64) fail("exponent out of range");
        return static_cast<int>(e.get_si());
    }

    // factor := number [/ number] | var [^ int] | '(' sum ')' | d '(' var ')'
    // The d(..) case is returned through the wedge list instead.
    std::pair<Polynomial, std::vector<int>> parse_term() {
        Polynomial coeff = Polynomial::constant(vars_, Rational(1));
        std::vector<int> wedge_list;
        bool expect_factor = true;
        while (expect_factor) {
            skip_ws();
            if (pos_ >= text_.size()) fail("expected factor");
            char c = text_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                mpz_class num = parse_integer();
                if (peek_is('/')) {
                    ++pos_;
                    mpz_class den = parse_integer();
                    if (den == 0) fail("zero denominator");
                    coeff = coeff * Rational(num, den);
                } else if (peek_is('^')) {
                    ++pos_;
                    int e = parse_exponent();
                    coeff = coeff * Rational(Rational(num).pow(static_cast<unsigned>(e)));
                } else {
                    coeff = coeff * Rational(num);
                }
            } else if (c == '(') {
                ++pos_;
                Polynomial inner = parse_sum();
                expect(')');
                if (peek_is('^')) {
                    ++pos_;
                    inner = inner.pow(static_cast<unsigned>(parse_exponent()));
                }
                coeff = coeff * inner;
            } else if (c == 'd' && allow_forms_ && pos_ + 1 < text_.size() &&
                       next_nonspace(pos_ + 1) == '(') {
                ++pos_;
                expect('(');
                wedge_list.push_back(parse_variable_slot());
                expect(')');
                // A '^' after d(..) wedges the next basis symbol.
                while (peek_is('^')) {
                    ++pos_;
                    skip_ws();
                    if (pos_ >= text_.size() || text_[pos_] != 'd')
                        fail("expected d(..) after wedge");
                    ++pos_;
                    expect('(');
                    wedge_list.push_back(parse_variable_slot());
                    expect(')');
                }
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                int slot = parse_variable_slot();
                int e = 1;
                if (peek_is('^')) {
                    ++pos_;
                    e = parse_exponent();
                }
                Monomial m;
                m.e[slot] = e;
                coeff = coeff * Polynomial::term(vars_, m, Rational(1));
            } else {
                fail(std::string("unexpected character '") + c + "'");
            }
            if (peek_is('*')) {
                ++pos_;
            } else {
                expect_factor = false;
            }
        }
        return {coeff, wedge_list};
    }

    char next_nonspace(size_t from) {
        while (from < text_.size() && std::isspace(static_cast<unsigned char>(text_[from]))) ++from;
        return from < text_.size() ? text_[from] : '\0';
    }

    int parse_variable_slot() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        std::string name = text_.substr(start, pos_ - start);
        if (name.empty()) fail("expected variable");
        int slot = vars_.index_of(name);
        if (slot < 0) fail("unknown variable '" + name + "'");
        return slot;
    }

    // Polynomial-only subexpression (inside parentheses).
    Polynomial parse_sum() {
        Polynomial acc = Polynomial::zero(vars_);
        int sign = read_sign();
        while (true) {
            auto [coeff, wedge_list] = parse_term();
            if (!wedge_list.empty()) fail("form symbol inside polynomial coefficient");
            acc = sign < 0 ? acc - coeff : acc + coeff;
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] == ')') break;
            char c = text_[pos_];
            if (c == '+') {
                ++pos_;
                sign = 1;
            } else if (c == '-') {
                ++pos_;
                sign = -1;
            } else {
                fail(std::string("unexpected character '") + c + "'");
            }
        }
        return acc;
    }
};

} // namespace

Polynomial parse_polynomial(const std::string& text, const VarSet& vars) {
    Parser p(text, vars, false);
    DifferentialForm w = p.parse();
    if (w.is_zero()) return Polynomial::zero(vars);
    if (w.degree() != 0) throw ParseError("expected polynomial, found form: " + text);
    return w.component(0);
}

DifferentialForm parse_form(const std::string& text, const VarSet& vars) {
    Parser p(text, vars, true);
    return p.parse();
}

std::vector<Rational> parse_point(const std::string& text, int arity) {
    std::vector<Rational> out;
    size_t start = 0;
    while (start <= text.size()) {
        size_t comma = text.find(',', start);
        std::string piece = comma == std::string::npos ? text.substr(start)
                                                       : text.substr(start, comma - start);
        size_t a = piece.find_first_not_of(" \t");
        size_t b = piece.find_last_not_of(" \t");
        if (a == std::string::npos) throw ParseError("empty coordinate in point: " + text);
        out.push_back(Rational::parse(piece.substr(a, b - a + 1)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (static_cast<int>(out.size()) != arity)
        throw ParseError("expected " + std::to_string(arity) + " coordinates: " + text);
    return out;
}

} // namespace cousinforge

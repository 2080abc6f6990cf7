#pragma once
/**
 * @file parse.hpp
 * @brief Text syntax for rational functions over Q(pihat) and for vertices,
 *        e.g. "3*(z-1)^2*(z-1/2)^-1" or "pihat/z".
 *
 * Grammar:
 *     expr   := term (('+' | '-') term)*
 *     term   := unary (('*' | '/') unary)*
 *     unary  := ('-' | '+') unary | power
 *     power  := atom ('^' integer)?
 *     atom   := number | 'z' | 'pihat' | '(' expr ')'
 * Division and negative powers require the divisor to split into linear
 * factors whose roots appear as linear sub-expressions (such as z - 1/2).
 */

#include <cctype>
#include <string>
#include <vector>

#include "rational.hpp"

namespace drinfeld {

namespace detail {

/** @brief Positive divisors of n (empty when n is too large to factor by trial division). */
inline std::vector<Integer> divisors(Integer n) {
    if (n < 0) n = -n;
    std::vector<Integer> out;
    if (n == 0 || n > Integer("1000000000000")) return out;
    for (Integer d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    return out;
}

/** @brief Rational roots of a polynomial with rational coefficients (rational root theorem). */
inline std::vector<KHat> rational_roots(const Poly<KHat>& P) {
    std::vector<KHat> out;
    if (P.degree() < 1) return out;
    const long p = P.zero().prime();
    Integer l = 1;
    for (int i = 0; i <= P.degree(); ++i) {
        if (!P[i].in_base_field()) return out;
        Integer d = P[i].a().get_den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    int low = 0;
    while (P[low].is_zero()) ++low;
    if (low > 0) out.push_back(KHat(p));
    Integer a0 = Integer(P[low].a() * l), an = Integer(P[P.degree()].a() * l);
    for (const auto& u : divisors(a0))
        for (const auto& v : divisors(an))
            for (int sign : {1, -1}) {
                KHat x(p, Rational(u * sign, v));
                if (P.eval(x).is_zero()) out.push_back(x);
            }
    return out;
}

class ExpressionParser {
public:
    ExpressionParser(std::string text, long p) : s_(std::move(text)), p_(p) {}

    RationalFunction parse() {
        RationalFunction r = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw InvalidParameters("cannot parse \"" + s_ + "\" at position " + std::to_string(pos_) + ": " + what);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    /** @brief Record the root of every linear polynomial seen, for later factorisation. */
    RationalFunction note(RationalFunction f) {
        if (f.poles().empty() && f.numerator().degree() == 1)
            roots_.push_back(-f.numerator()[0] / f.numerator()[1]);
        return f;
    }

    RationalFunction inverse(const RationalFunction& f) {
        if (f.is_zero()) fail("division by zero");
        std::vector<KHat> candidates = roots_;
        for (const auto& x : rational_roots(f.numerator())) candidates.push_back(x);
        auto fac = try_factor(f, candidates);
        if (!fac) fail("divisor does not split over the linear factors of the expression");
        return fac->inverse().to_function();
    }

    RationalFunction expr() {
        RationalFunction r = term();
        for (;;) {
            if (accept('+')) r = note(r + term());
            else if (accept('-')) r = note(r - term());
            else return r;
        }
    }
    RationalFunction term() {
        RationalFunction r = unary();
        for (;;) {
            if (accept('*')) r = note(r * unary());
            else if (accept('/')) r = note(r * inverse(unary()));
            else return r;
        }
    }
    RationalFunction unary() {
        if (accept('-')) return note(-unary());
        if (accept('+')) return unary();
        return power();
    }
    RationalFunction power() {
        RationalFunction base = atom();
        if (!accept('^')) return base;
        bool neg = false;
        skip();
        if (accept('-')) neg = true;
        else accept('+');
        skip();
        long e = 0;
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            e = e * 10 + (s_[pos_++] - '0');
            if (e > 10000) fail("exponent too large");
        }
        if (pos_ == start) fail("expected an integer exponent");
        if (accept('(')) fail("exponents must be integer literals");
        if (!neg) return note(base.pow(e));
        return note(inverse(base).pow(e));
    }
    RationalFunction atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            RationalFunction r = expr();
            if (!accept(')')) fail("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return RationalFunction::constant(KHat(p_, Rational(s_.substr(start, pos_ - start))));
        }
        if (s_.compare(pos_, 5, "pihat") == 0) {
            pos_ += 5;
            return RationalFunction::constant(KHat::pihat(p_));
        }
        if (c == 'z') {
            ++pos_;
            return note(RationalFunction::z_power(1, p_));
        }
        fail("expected a number, 'z', 'pihat' or '('");
    }

    std::string s_;
    long p_;
    size_t pos_ = 0;
    std::vector<KHat> roots_;
};

}  // namespace detail

/** @brief Parse a rational function in z over Q(pihat), pihat^2 = p. */
inline RationalFunction parse_function(const std::string& text, long p) {
    if (!is_prime(p)) throw InvalidParameters("p must be prime");
    return detail::ExpressionParser(text, p).parse();
}

/** @brief Text form that parse_function reads back, e.g. "(2*z+1/3)*(z-1)^-2*z^-1". */
inline std::string to_expression(const RationalFunction& f) {
    auto atom = [](const KHat& x) { return x.in_base_field() && sgn(x.a()) >= 0 ? x.str() : "(" + x.str() + ")"; };
    std::string s;
    const auto& N = f.numerator();
    int terms = 0;
    for (int i = N.degree(); i >= 0; --i) {
        if (N[i].is_zero()) continue;
        if (terms++) s += "+";
        bool unit = N[i] == KHat(f.prime(), 1);
        if (i == 0) s += atom(N[i]);
        else s += (unit ? std::string() : atom(N[i]) + "*") + (i == 1 ? "z" : "z^" + std::to_string(i));
    }
    if (terms == 0) return "0";
    if (f.poles().empty()) return s;
    std::string out = (terms > 1) ? "(" + s + ")" : (s == "1" ? std::string() : s);
    for (const auto& pl : f.poles()) {
        std::string base = pl.x.is_zero() ? "z" : "(z-" + atom(pl.x) + ")";
        out += (out.empty() ? "" : "*") + base + "^-" + std::to_string(pl.order);
    }
    return out;
}

/** @brief Vertex from the text "m,b" (level, offset), e.g. "-1,1/2". */
inline Vertex parse_vertex(const std::string& text, long p) {
    auto comma = text.find(',');
    if (comma == std::string::npos) throw InvalidParameters("vertex must be given as level,offset");
    try {
        long m = std::stol(text.substr(0, comma));
        std::string b = text.substr(comma + 1);
        while (!b.empty() && std::isspace(static_cast<unsigned char>(b.front()))) b.erase(b.begin());
        Rational off(b);
        off.canonicalize();
        Integer den = off.get_den();
        const Integer pp = p;
        while (den % pp == 0) den /= pp;
        if (den != 1) throw InvalidParameters("vertex offset must have a power of p as denominator");
        return make_vertex(m, off, p);
    } catch (const std::logic_error&) {
        throw InvalidParameters("cannot parse vertex \"" + text + "\"");
    }
}

}  // namespace drinfeld

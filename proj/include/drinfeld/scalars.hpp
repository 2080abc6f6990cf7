#pragma once
/**
 * @file scalars.hpp
 * @brief Exact scalars: rationals with p-adic valuation, the ramified quadratic
 *        extension Q(pihat) with pihat^2 = p, half-integer valuations, and
 *        reduction to the residue field.
 */

#include <gmpxx.h>

#include <compare>
#include <string>

#include "errors.hpp"
#include "finite_field.hpp"

namespace drinfeld {

/** @brief Exact rational number (the field K restricted to Q). */
using Rational = mpq_class;
/** @brief Arbitrary precision integer. */
using Integer = mpz_class;

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline Rational integer_like(const Rational&, long n) { return Rational(n); }

/** @brief Canonical text form "n" or "n/d". */
inline std::string to_string(const Rational& x) { return x.get_str(); }

/** @brief p-adic valuation of a non-zero integer. */
inline long val_p(const Integer& n, long p) {
    if (n == 0) throw std::domain_error("valuation of zero integer");
    Integer tmp, pp = p;
    return static_cast<long>(mpz_remove(tmp.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t()));
}

/** @brief p-adic valuation of a non-zero rational. */
inline long val_p(const Rational& x, long p) {
    if (sgn(x) == 0) throw std::domain_error("valuation of zero rational");
    return val_p(Integer(x.get_num()), p) - val_p(Integer(x.get_den()), p);
}

/** @brief p^e as a rational, e of any sign. */
inline Rational p_power(long p, long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e < 0 ? -e : e));
    return e < 0 ? Rational(Integer(1), r) : Rational(r);
}

/**
 * @brief A valuation in (1/2)Z or +infinity.
 *
 * Stored as twice its value so that sums and comparisons are exact.
 */
class Valuation {
public:
    Valuation() = default;
    /** @brief Integer valuation n. */
    Valuation(long n) : twice_(2 * n) {}
    static Valuation halves(long twice) {
        Valuation v;
        v.twice_ = twice;
        return v;
    }
    static Valuation infinity() {
        Valuation v;
        v.infinite_ = true;
        return v;
    }

    bool is_infinite() const { return infinite_; }
    long twice() const { return twice_; }
    bool is_integer() const { return !infinite_ && twice_ % 2 == 0; }
    /** @brief Largest integer <= value. */
    long floor() const { return twice_ >= 0 ? twice_ / 2 : -((-twice_ + 1) / 2); }
    /** @brief Smallest integer >= value. */
    long ceil() const { return -Valuation::halves(-twice_).floor(); }

    friend Valuation operator+(const Valuation& a, const Valuation& b) {
        if (a.infinite_ || b.infinite_) return infinity();
        return halves(a.twice_ + b.twice_);
    }
    friend Valuation operator-(const Valuation& a, const Valuation& b) {
        if (b.infinite_) throw std::domain_error("subtracting an infinite valuation");
        if (a.infinite_) return infinity();
        return halves(a.twice_ - b.twice_);
    }
    Valuation operator-() const {
        if (infinite_) throw std::domain_error("negating an infinite valuation");
        return halves(-twice_);
    }
    friend bool operator==(const Valuation& a, const Valuation& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.twice_ == b.twice_);
    }
    friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
        return a.twice_ <=> b.twice_;
    }

    /** @brief Exact text: "3", "-5/2" or "inf". */
    std::string str() const {
        if (infinite_) return "inf";
        if (twice_ % 2 == 0) return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

private:
    long twice_ = 0;
    bool infinite_ = false;
};

inline Valuation min(const Valuation& a, const Valuation& b) { return b < a ? b : a; }
inline Valuation max(const Valuation& a, const Valuation& b) { return a < b ? b : a; }

/** @brief Valuation of a rational, infinite for zero. */
inline Valuation valuation(const Rational& x, long p) {
    if (sgn(x) == 0) return Valuation::infinity();
    return Valuation(val_p(x, p));
}

/**
 * @brief Element a + b*pihat of Q(pihat), pihat^2 = p.
 *
 * The valuation is normalised so that v(p) = 1 and v(pihat) = 1/2.
 */
class KHat {
public:
    KHat() = default;
    explicit KHat(long p) : p_(p) {}
    KHat(long p, Rational a, Rational b = 0) : p_(p), a_(std::move(a)), b_(std::move(b)) {
        a_.canonicalize();
        b_.canonicalize();
    }
    KHat(long p, long a) : p_(p), a_(a) {}

    /** @brief The uniformiser pihat. */
    static KHat pihat(long p) { return KHat(p, 0, 1); }
    /** @brief pihat^e for any integer e. */
    static KHat pihat_power(long p, long e) {
        long half = e >= 0 ? e / 2 : -((-e + 1) / 2);
        Rational scale = p_power(p, half);
        return (e - 2 * half) ? KHat(p, 0, scale) : KHat(p, scale, 0);
    }

    long prime() const { return p_; }
    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
    /** @brief True when the element lies in Q. */
    bool in_base_field() const { return sgn(b_) == 0; }

    /** @brief min(v(a), v(b) + 1/2); infinite for zero. */
    Valuation valuation() const {
        Valuation va = drinfeld::valuation(a_, p_), vb = drinfeld::valuation(b_, p_);
        if (!vb.is_infinite()) vb = vb + Valuation::halves(1);
        return min(va, vb);
    }

    friend KHat operator+(const KHat& x, const KHat& y) { return KHat(x.p_, x.a_ + y.a_, x.b_ + y.b_); }
    friend KHat operator-(const KHat& x, const KHat& y) { return KHat(x.p_, x.a_ - y.a_, x.b_ - y.b_); }
    friend KHat operator*(const KHat& x, const KHat& y) {
        return KHat(x.p_, x.a_ * y.a_ + x.p_ * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_);
    }
    friend KHat operator/(const KHat& x, const KHat& y) { return x * y.inverse(); }
    KHat operator-() const { return KHat(p_, -a_, -b_); }
    KHat& operator+=(const KHat& y) { return *this = *this + y; }
    KHat& operator-=(const KHat& y) { return *this = *this - y; }
    KHat& operator*=(const KHat& y) { return *this = *this * y; }
    KHat& operator/=(const KHat& y) { return *this = *this / y; }
    friend bool operator==(const KHat& x, const KHat& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
    friend bool operator!=(const KHat& x, const KHat& y) { return !(x == y); }

    /** @brief Galois conjugate a - b*pihat. */
    KHat conjugate() const { return KHat(p_, a_, -b_); }
    /** @brief Norm a^2 - p b^2 to Q. */
    Rational norm() const { return a_ * a_ - p_ * b_ * b_; }
    KHat inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero in Q(pihat)");
        Rational n = norm();
        return KHat(p_, a_ / n, -b_ / n);
    }
    KHat pow(long e) const {
        KHat base = e < 0 ? inverse() : *this;
        unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
        KHat r(p_, 1);
        while (n) {
            if (n & 1) r *= base;
            base *= base;
            n >>= 1;
        }
        return r;
    }

    /** @brief Text form "a", "b*pihat" or "a+b*pihat". */
    std::string str() const {
        if (sgn(b_) == 0) return a_.get_str();
        std::string s = b_.get_str() + "*pihat";
        if (sgn(a_) == 0) return s;
        return a_.get_str() + (sgn(b_) > 0 ? "+" : "") + s;
    }

private:
    long p_ = 2;
    Rational a_ = 0, b_ = 0;
};

inline bool is_zero(const KHat& x) { return x.is_zero(); }
inline KHat zero_like(const KHat& x) { return KHat(x.prime()); }
inline KHat one_like(const KHat& x) { return KHat(x.prime(), 1); }
inline KHat integer_like(const KHat& x, long n) { return KHat(x.prime(), n); }

/** @brief Residue of a p-integral rational in F_p, embedded into `field`. */
inline FqElem reduce_rational(const Rational& x, const FqField& field) {
    long p = field.characteristic();
    if (sgn(x) == 0) return field.zero();
    if (val_p(x, p) < 0) throw NegativeValuation("reduction of a rational with negative valuation");
    Integer pp = p, den = x.get_den(), inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pp.get_mpz_t());
    Integer r = (Integer(x.get_num()) * inv) % pp;
    if (r < 0) r += pp;
    return field.integer(r.get_si());
}

/**
 * @brief Reduction O_{K-hat} -> O/(pihat) = F_p, embedded into F_q.
 * @throws NegativeValuation if v(x) < 0; ResidueFieldMismatch if char F_q != p.
 */
inline FqElem reduce_mod_pihat(const KHat& x, const FqField& field) {
    if (field.characteristic() != x.prime())
        throw ResidueFieldMismatch("residue field characteristic differs from p");
    if (x.valuation() < Valuation(0)) throw NegativeValuation("reduction of an element with negative valuation");
    // a + b*pihat == a (mod pihat) once both terms are integral.
    return reduce_rational(x.a(), field);
}

}  // namespace drinfeld

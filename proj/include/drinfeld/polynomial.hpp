#pragma once
/**
 * @file polynomial.hpp
 * @brief Dense univariate polynomials over an exact field.
 *
 * The coefficient type T must provide field arithmetic together with the free
 * functions is_zero, zero_like, one_like and integer_like.  Every polynomial
 * carries a zero prototype so that context-dependent scalars (a prime, a
 * finite field) survive operations that produce the zero polynomial.
 */

#include <utility>
#include <vector>

#include "scalars.hpp"

namespace drinfeld {

template <class T>
class Poly {
public:
    explicit Poly(T zero) : zero_(zero_like(zero)) {}
    Poly(std::vector<T> coeffs, T zero) : c_(std::move(coeffs)), zero_(zero_like(zero)) { trim(); }

    static Poly constant(const T& c) { return Poly(std::vector<T>{c}, c); }
    /** @brief c * z^d. */
    static Poly monomial(const T& c, int d) {
        std::vector<T> v(d + 1, zero_like(c));
        v[d] = c;
        return Poly(std::move(v), c);
    }
    /** @brief The monic linear polynomial z - root. */
    static Poly linear(const T& root) { return Poly(std::vector<T>{-root, one_like(root)}, root); }

    /** @brief Degree, -1 for the zero polynomial. */
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const T& zero() const { return zero_; }
    const std::vector<T>& coeffs() const { return c_; }
    /** @brief Coefficient of z^i (zero outside the support). */
    const T& operator[](int i) const { return (i < 0 || i > degree()) ? zero_ : c_[i]; }
    const T& lead() const { return c_.back(); }

    friend Poly operator+(const Poly& x, const Poly& y) {
        std::vector<T> r(std::max(x.c_.size(), y.c_.size()), x.zero_);
        for (size_t i = 0; i < x.c_.size(); ++i) r[i] = x.c_[i];
        for (size_t i = 0; i < y.c_.size(); ++i) r[i] = r[i] + y.c_[i];
        return Poly(std::move(r), x.zero_);
    }
    Poly operator-() const {
        std::vector<T> r;
        r.reserve(c_.size());
        for (const auto& c : c_) r.push_back(-c);
        return Poly(std::move(r), zero_);
    }
    friend Poly operator-(const Poly& x, const Poly& y) { return x + (-y); }
    friend Poly operator*(const Poly& x, const Poly& y) {
        if (x.is_zero() || y.is_zero()) return Poly(x.zero_);
        std::vector<T> r(x.c_.size() + y.c_.size() - 1, x.zero_);
        for (size_t i = 0; i < x.c_.size(); ++i) {
            if (drinfeld::is_zero(x.c_[i])) continue;
            for (size_t j = 0; j < y.c_.size(); ++j) r[i + j] = r[i + j] + x.c_[i] * y.c_[j];
        }
        return Poly(std::move(r), x.zero_);
    }
    Poly& operator+=(const Poly& y) { return *this = *this + y; }
    Poly& operator-=(const Poly& y) { return *this = *this - y; }
    Poly& operator*=(const Poly& y) { return *this = *this * y; }
    friend bool operator==(const Poly& x, const Poly& y) { return x.c_ == y.c_; }
    friend bool operator!=(const Poly& x, const Poly& y) { return !(x == y); }

    Poly scaled(const T& s) const {
        std::vector<T> r;
        r.reserve(c_.size());
        for (const auto& c : c_) r.push_back(c * s);
        return Poly(std::move(r), zero_);
    }
    Poly pow(unsigned e) const {
        Poly r = constant(one_like(zero_)), b = *this;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    /** @brief Euclidean division: returns (quotient, remainder). */
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        if (d.is_zero()) throw std::domain_error("polynomial division by zero");
        std::vector<T> rem = c_;
        int dd = d.degree();
        if (degree() < dd) return {Poly(zero_), *this};
        std::vector<T> quot(degree() - dd + 1, zero_);
        T inv_lead = one_like(zero_) / d.lead();
        for (int i = degree(); i >= dd; --i) {
            if (drinfeld::is_zero(rem[i])) continue;
            T f = rem[i] * inv_lead;
            quot[i - dd] = f;
            for (int j = 0; j <= dd; ++j) rem[i - dd + j] = rem[i - dd + j] - f * d.c_[j];
        }
        rem.resize(dd);
        return {Poly(std::move(quot), zero_), Poly(std::move(rem), zero_)};
    }

    T eval(const T& x) const {
        T r = zero_;
        for (int i = degree(); i >= 0; --i) r = r * x + c_[i];
        return r;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly(zero_);
        std::vector<T> r(c_.size() - 1, zero_);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * integer_like(zero_, static_cast<long>(i));
        return Poly(std::move(r), zero_);
    }

    /** @brief The polynomial z -> P(z + a), i.e. Taylor coefficients at a. */
    Poly taylor_shift(const T& a) const {
        std::vector<T> r = c_;
        int n = degree();
        for (int i = 0; i < n; ++i)
            for (int j = n - 1; j >= i; --j) r[j] = r[j] + a * r[j + 1];
        return Poly(std::move(r), zero_);
    }

    /** @brief Monic multiple (the zero polynomial is returned unchanged). */
    Poly monic() const { return is_zero() ? *this : scaled(one_like(zero_) / lead()); }

private:
    void trim() {
        while (!c_.empty() && drinfeld::is_zero(c_.back())) c_.pop_back();
    }

    std::vector<T> c_;
    T zero_;
};

/** @brief Monic greatest common divisor. */
template <class T>
Poly<T> gcd(Poly<T> a, Poly<T> b) {
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

}  // namespace drinfeld

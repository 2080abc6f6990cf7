#pragma once
/**
 * @file finite_field.hpp
 * @brief Table-driven arithmetic in small finite fields F_q = F_p[x]/(m(x)).
 */

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"

namespace drinfeld {

/** @brief Smallest prime factor of n (n >= 2). */
inline long smallest_prime_factor(long n) {
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return d;
    return n;
}

/** @brief True when n is a prime number. */
inline bool is_prime(long n) { return n >= 2 && smallest_prime_factor(n) == n; }

/** @brief True when n = p^f for a prime p and f >= 1. */
inline bool is_prime_power(long n) {
    if (n < 2) return false;
    long p = smallest_prime_factor(n);
    while (n % p == 0) n /= p;
    return n == 1;
}

class FqElem;

/**
 * @brief The finite field with q = p^f elements.
 *
 * Elements are encoded as integers in [0, q) whose base-p digits are the
 * coordinates on the power basis 1, x, ..., x^{f-1}.  Addition and
 * multiplication are tabulated once; instances are shared through get().
 */
class FqField {
public:
    /** @brief Shared field of order q; throws InvalidParameters unless q is a prime power <= 256. */
    static const FqField& get(long q) {
        static std::mutex mutex;
        static std::map<long, std::unique_ptr<FqField>> registry;
        if (!is_prime_power(q) || q > 256)
            throw InvalidParameters("field order must be a prime power <= 256, got " + std::to_string(q));
        std::lock_guard<std::mutex> lock(mutex);
        auto it = registry.find(q);
        if (it == registry.end())
            it = registry.emplace(q, std::unique_ptr<FqField>(new FqField(q))).first;
        return *it->second;
    }

    long order() const { return q_; }
    long characteristic() const { return p_; }
    int degree() const { return f_; }
    /** @brief Coefficients (low to high, monic) of the defining polynomial over F_p. */
    const std::vector<int>& modulus() const { return modulus_; }

    int add(int a, int b) const { return add_[a * q_ + b]; }
    int mul(int a, int b) const { return mul_[a * q_ + b]; }
    int neg(int a) const { return neg_[a]; }
    int sub(int a, int b) const { return add(a, neg(b)); }
    int inv(int a) const {
        if (a == 0) throw std::domain_error("inverse of zero in F_q");
        return inv_[a];
    }
    /** @brief Image of the integer n under Z -> F_p -> F_q. */
    int from_integer(long n) const { return static_cast<int>(((n % p_) + p_) % p_); }
    /** @brief Base-p digits of an element (its coordinates over F_p). */
    std::vector<int> coordinates(int a) const {
        std::vector<int> c(f_);
        for (int i = 0; i < f_; ++i) { c[i] = a % p_; a /= p_; }
        return c;
    }
    /** @brief Smallest encoded element that generates the multiplicative group. */
    int primitive_element() const { return primitive_; }

    FqElem elem(long encoded) const;
    FqElem zero() const;
    FqElem one() const;
    FqElem integer(long n) const;
    /** @brief All q elements in encoding order. */
    std::vector<FqElem> elements() const;

private:
    explicit FqField(long q) : q_(q), p_(smallest_prime_factor(q)), f_(0) {
        for (long t = q; t > 1; t /= p_) ++f_;
        modulus_ = find_irreducible();
        build_tables();
    }

    // Multiply two coordinate vectors modulo the defining polynomial.
    std::vector<int> poly_mulmod(const std::vector<int>& a, const std::vector<int>& b) const {
        std::vector<int> prod(2 * f_, 0);
        for (int i = 0; i < f_; ++i)
            for (int j = 0; j < f_; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
        for (int d = 2 * f_ - 1; d >= f_; --d) {
            int c = prod[d];
            if (c == 0) continue;
            for (int i = 0; i <= f_; ++i)
                prod[d - f_ + i] = ((prod[d - f_ + i] - c * modulus_[i]) % p_ + p_) % p_;
        }
        prod.resize(f_);
        return prod;
    }

    int encode(const std::vector<int>& c) const {
        int v = 0;
        for (int i = f_ - 1; i >= 0; --i) v = v * static_cast<int>(p_) + c[i];
        return v;
    }

    // Lexicographically first monic irreducible of degree f (brute-force root/factor test).
    std::vector<int> find_irreducible() const {
        if (f_ == 1) return {0, 1};
        long count = 1;
        for (int i = 0; i < f_; ++i) count *= p_;
        for (long code = 0; code < count; ++code) {
            std::vector<int> m(f_ + 1, 0);
            long t = code;
            for (int i = 0; i < f_; ++i) { m[i] = static_cast<int>(t % p_); t /= p_; }
            m[f_] = 1;
            if (is_irreducible(m)) return m;
        }
        throw std::logic_error("no irreducible polynomial found");
    }

    // Irreducible iff no monic factor of degree <= f/2 divides it.
    bool is_irreducible(const std::vector<int>& m) const {
        for (int d = 1; 2 * d <= f_; ++d) {
            long count = 1;
            for (int i = 0; i < d; ++i) count *= p_;
            for (long code = 0; code < count; ++code) {
                std::vector<int> g(d + 1, 0);
                long t = code;
                for (int i = 0; i < d; ++i) { g[i] = static_cast<int>(t % p_); t /= p_; }
                g[d] = 1;
                std::vector<int> r = m;
                for (int deg = f_; deg >= d; --deg) {
                    int c = r[deg];
                    if (c == 0) continue;
                    for (int i = 0; i <= d; ++i)
                        r[deg - d + i] = ((r[deg - d + i] - c * g[i]) % static_cast<int>(p_) + static_cast<int>(p_)) % static_cast<int>(p_);
                }
                bool zero = true;
                for (int i = 0; i < d; ++i) zero = zero && r[i] == 0;
                if (zero) return false;
            }
        }
        return true;
    }

    void build_tables() {
        const int q = static_cast<int>(q_);
        add_.assign(q * q, 0);
        mul_.assign(q * q, 0);
        neg_.assign(q, 0);
        inv_.assign(q, 0);
        for (int a = 0; a < q; ++a) {
            auto ca = coordinates(a);
            std::vector<int> cn(f_);
            for (int i = 0; i < f_; ++i) cn[i] = (static_cast<int>(p_) - ca[i]) % static_cast<int>(p_);
            neg_[a] = encode(cn);
            for (int b = 0; b < q; ++b) {
                auto cb = coordinates(b);
                std::vector<int> cs(f_);
                for (int i = 0; i < f_; ++i) cs[i] = (ca[i] + cb[i]) % static_cast<int>(p_);
                add_[a * q + b] = encode(cs);
                mul_[a * q + b] = encode(poly_mulmod(ca, cb));
            }
        }
        for (int a = 1; a < q; ++a)
            for (int b = 1; b < q; ++b)
                if (mul_[a * q + b] == 1) inv_[a] = b;
        primitive_ = 1;
        for (int g = 1; g < q; ++g) {
            int order = 1, x = g;
            while (x != 1) { x = mul_[x * q + g]; ++order; }
            if (order == q - 1) { primitive_ = g; break; }
        }
    }

    long q_, p_;
    int f_;
    std::vector<int> modulus_;
    std::vector<int> add_, mul_, neg_, inv_;
    int primitive_ = 1;
};

/** @brief An element of a finite field; a value type carrying a pointer to its shared field. */
class FqElem {
public:
    FqElem() = default;
    FqElem(const FqField& field, int value) : field_(&field), v_(value) {}

    const FqField& field() const { return *field_; }
    int value() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    friend FqElem operator+(const FqElem& a, const FqElem& b) { return {*a.field_, a.field_->add(a.v_, b.v_)}; }
    friend FqElem operator-(const FqElem& a, const FqElem& b) { return {*a.field_, a.field_->sub(a.v_, b.v_)}; }
    friend FqElem operator*(const FqElem& a, const FqElem& b) { return {*a.field_, a.field_->mul(a.v_, b.v_)}; }
    friend FqElem operator/(const FqElem& a, const FqElem& b) { return a * b.inverse(); }
    FqElem operator-() const { return {*field_, field_->neg(v_)}; }
    FqElem& operator+=(const FqElem& b) { return *this = *this + b; }
    FqElem& operator-=(const FqElem& b) { return *this = *this - b; }
    FqElem& operator*=(const FqElem& b) { return *this = *this * b; }
    friend bool operator==(const FqElem& a, const FqElem& b) { return a.v_ == b.v_; }
    friend bool operator!=(const FqElem& a, const FqElem& b) { return a.v_ != b.v_; }
    friend bool operator<(const FqElem& a, const FqElem& b) { return a.v_ < b.v_; }

    FqElem inverse() const { return {*field_, field_->inv(v_)}; }
    /** @brief a^e for any integer e (negative powers of a nonzero element allowed). */
    FqElem pow(long e) const {
        FqElem base = e < 0 ? inverse() : *this;
        unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
        FqElem r(*field_, 1);
        while (n) {
            if (n & 1) r *= base;
            base *= base;
            n >>= 1;
        }
        return r;
    }
    std::string str() const { return std::to_string(v_); }

private:
    const FqField* field_ = nullptr;
    int v_ = 0;
};

inline FqElem FqField::elem(long encoded) const { return FqElem(*this, static_cast<int>(encoded)); }
inline FqElem FqField::zero() const { return FqElem(*this, 0); }
inline FqElem FqField::one() const { return FqElem(*this, 1); }
inline FqElem FqField::integer(long n) const { return FqElem(*this, from_integer(n)); }
inline std::vector<FqElem> FqField::elements() const {
    std::vector<FqElem> out;
    for (long v = 0; v < q_; ++v) out.emplace_back(*this, static_cast<int>(v));
    return out;
}

inline bool is_zero(const FqElem& x) { return x.is_zero(); }
inline FqElem zero_like(const FqElem& x) { return x.field().zero(); }
inline FqElem one_like(const FqElem& x) { return x.field().one(); }
inline FqElem integer_like(const FqElem& x, long n) { return x.field().integer(n); }

}  // namespace drinfeld

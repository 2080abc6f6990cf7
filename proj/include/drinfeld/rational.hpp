#pragma once
/**
 * @file rational.hpp
 * @brief Rational functions over Q(pihat) with poles at explicit points:
 *        arithmetic, derivatives, Gauss valuations on discs, the weight-k
 *        automorphic action, and exact Laurent expansions on the standard
 *        annulus 0 < v(z) < 1 with certified tails.
 */

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polynomial.hpp"
#include "tree.hpp"

namespace drinfeld {

/** @brief A pole (z - x)^{-order} of a rational function. */
struct Pole {
    KHat x;
    int order;
};

inline KHat to_khat(const Rational& r, long p) { return KHat(p, r); }

/**
 * @brief f = N(z) / prod (z - x_i)^{r_i}, reduced (N does not vanish at any x_i).
 *
 * Closed under +, -, *, division by split polynomials, derivatives and the
 * automorphic action, which is why it is the working carrier of sections.
 */
class RationalFunction {
public:
    explicit RationalFunction(long p) : p_(p), num_(KHat(p)) {}
    RationalFunction(Poly<KHat> num, std::vector<Pole> poles, long p) : p_(p), num_(std::move(num)), poles_() {
        for (auto& pl : poles) add_pole(pl.x, pl.order);
        normalize();
    }

    static RationalFunction constant(const KHat& c) { return RationalFunction(Poly<KHat>::constant(c), {}, c.prime()); }
    /** @brief z^n for any integer n. */
    static RationalFunction z_power(long n, long p) {
        KHat one(p, 1);
        if (n >= 0) return RationalFunction(Poly<KHat>::monomial(one, static_cast<int>(n)), {}, p);
        return RationalFunction(Poly<KHat>::constant(one), {{KHat(p), static_cast<int>(-n)}}, p);
    }
    /** @brief (z - x)^n for any integer n. */
    static RationalFunction linear_power(const KHat& x, long n) {
        long p = x.prime();
        if (n >= 0) return RationalFunction(Poly<KHat>::linear(x).pow(static_cast<unsigned>(n)), {}, p);
        return RationalFunction(Poly<KHat>::constant(KHat(p, 1)), {{x, static_cast<int>(-n)}}, p);
    }

    long prime() const { return p_; }
    const Poly<KHat>& numerator() const { return num_; }
    const std::vector<Pole>& poles() const { return poles_; }
    bool is_zero() const { return num_.is_zero(); }
    /** @brief Expanded denominator prod (z - x_i)^{r_i}. */
    Poly<KHat> denominator() const {
        Poly<KHat> d = Poly<KHat>::constant(KHat(p_, 1));
        for (const auto& pl : poles_) d *= Poly<KHat>::linear(pl.x).pow(static_cast<unsigned>(pl.order));
        return d;
    }
    /** @brief Order of the pole at x (0 if none). */
    int pole_order(const KHat& x) const {
        for (const auto& pl : poles_)
            if (pl.x == x) return pl.order;
        return 0;
    }

    friend RationalFunction operator*(const RationalFunction& f, const RationalFunction& g) {
        std::vector<Pole> poles = f.poles_;
        poles.insert(poles.end(), g.poles_.begin(), g.poles_.end());
        return RationalFunction(f.num_ * g.num_, std::move(poles), f.p_);
    }
    friend RationalFunction operator+(const RationalFunction& f, const RationalFunction& g) {
        // Common denominator: maximal order of each pole.
        std::vector<Pole> common = f.poles_;
        for (const auto& pl : g.poles_) {
            auto it = std::find_if(common.begin(), common.end(), [&](const Pole& q) { return q.x == pl.x; });
            if (it == common.end()) common.push_back(pl);
            else it->order = std::max(it->order, pl.order);
        }
        auto lift = [&](const RationalFunction& h) {
            Poly<KHat> n = h.num_;
            for (const auto& pl : common) {
                int extra = pl.order - h.pole_order(pl.x);
                if (extra > 0) n *= Poly<KHat>::linear(pl.x).pow(static_cast<unsigned>(extra));
            }
            return n;
        };
        return RationalFunction(lift(f) + lift(g), common, f.p_);
    }
    RationalFunction operator-() const { return scaled(KHat(p_, -1)); }
    friend RationalFunction operator-(const RationalFunction& f, const RationalFunction& g) { return f + (-g); }
    friend bool operator==(const RationalFunction& f, const RationalFunction& g) { return (f - g).is_zero(); }
    friend bool operator!=(const RationalFunction& f, const RationalFunction& g) { return !(f == g); }
    RationalFunction& operator+=(const RationalFunction& g) { return *this = *this + g; }
    RationalFunction& operator*=(const RationalFunction& g) { return *this = *this * g; }

    RationalFunction scaled(const KHat& c) const { return RationalFunction(num_.scaled(c), poles_, p_); }
    RationalFunction pow(long e) const {
        if (e < 0) {
            if (poles_.empty() && num_.degree() == 0)
                return constant(num_[0].pow(e));
            throw std::invalid_argument("negative power of a non-monomial rational function");
        }
        RationalFunction r = constant(KHat(p_, 1)), b = *this;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    /** @brief Value at a point that is not a pole. */
    KHat eval(const KHat& t) const {
        KHat v = num_.eval(t);
        for (const auto& pl : poles_) {
            KHat d = t - pl.x;
            if (d.is_zero()) throw std::domain_error("evaluation at a pole");
            v = v / d.pow(pl.order);
        }
        return v;
    }

    /** @brief First derivative d/dz. */
    RationalFunction derivative() const {
        // (N / prod (z-x)^r)' = [N' prod (z-x) - N sum_x r_x prod_{y != x} (z-y)] / prod (z-x)^{r+1}
        Poly<KHat> all = Poly<KHat>::constant(KHat(p_, 1));
        for (const auto& pl : poles_) all *= Poly<KHat>::linear(pl.x);
        Poly<KHat> n = num_.derivative() * all;
        for (size_t i = 0; i < poles_.size(); ++i) {
            Poly<KHat> others = Poly<KHat>::constant(KHat(p_, poles_[i].order));
            for (size_t j = 0; j < poles_.size(); ++j)
                if (j != i) others *= Poly<KHat>::linear(poles_[j].x);
            n -= num_ * others;
        }
        std::vector<Pole> poles = poles_;
        for (auto& pl : poles) ++pl.order;
        return RationalFunction(std::move(n), std::move(poles), p_);
    }
    /** @brief order-th derivative. */
    RationalFunction derivative(int order) const {
        RationalFunction r = *this;
        for (int i = 0; i < order; ++i) r = r.derivative();
        return r;
    }

    /** @brief Human-readable form "N(z) / prod (z - x)^r". */
    std::string str() const {
        std::string s;
        for (int i = num_.degree(); i >= 0; --i) {
            if (num_[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "(" + num_[i].str() + ")";
            if (i > 0) s += "*z^" + std::to_string(i);
        }
        if (s.empty()) s = "0";
        for (const auto& pl : poles_) s += " * (z - " + pl.x.str() + ")^" + std::to_string(-pl.order);
        return s;
    }

private:
    void add_pole(const KHat& x, int order) {
        if (order == 0) return;
        if (order < 0) {
            num_ *= Poly<KHat>::linear(x).pow(static_cast<unsigned>(-order));
            return;
        }
        for (auto& pl : poles_)
            if (pl.x == x) {
                pl.order += order;
                return;
            }
        poles_.push_back({x, order});
    }
    void normalize() {
        if (num_.is_zero()) {
            poles_.clear();
            return;
        }
        for (auto& pl : poles_) {
            while (pl.order > 0 && num_.eval(pl.x).is_zero()) {
                num_ = num_.divmod(Poly<KHat>::linear(pl.x)).first;
                --pl.order;
            }
        }
        poles_.erase(std::remove_if(poles_.begin(), poles_.end(), [](const Pole& pl) { return pl.order == 0; }),
                     poles_.end());
    }

    long p_;
    Poly<KHat> num_;
    std::vector<Pole> poles_;
};

/**
 * @brief lead * prod (z - x_i)^{m_i} with distinct x_i and non-zero m_i.
 */
class FactoredRational {
public:
    explicit FactoredRational(long p) : lead_(p) {}
    FactoredRational(KHat lead, std::vector<std::pair<KHat, int>> factors) : lead_(std::move(lead)) {
        for (auto& f : factors) multiply_factor(f.first, f.second);
        if (lead_.is_zero()) factors_.clear();
    }

    static FactoredRational constant(const KHat& c) { return FactoredRational(c, {}); }

    long prime() const { return lead_.prime(); }
    const KHat& lead() const { return lead_; }
    const std::vector<std::pair<KHat, int>>& factors() const { return factors_; }
    bool is_zero() const { return lead_.is_zero(); }

    friend FactoredRational operator*(const FactoredRational& f, const FactoredRational& g) {
        FactoredRational r = f;
        r.lead_ *= g.lead_;
        for (const auto& fac : g.factors_) r.multiply_factor(fac.first, fac.second);
        if (r.lead_.is_zero()) r.factors_.clear();
        return r;
    }
    FactoredRational inverse() const {
        if (is_zero()) throw ZeroFunction("inverse of the zero function");
        FactoredRational r(lead_.inverse(), {});
        for (const auto& fac : factors_) r.factors_.push_back({fac.first, -fac.second});
        return r;
    }
    friend FactoredRational operator/(const FactoredRational& f, const FactoredRational& g) { return f * g.inverse(); }
    FactoredRational pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        FactoredRational r(lead_.pow(e), {});
        if (e == 0) return r;
        for (const auto& fac : factors_) r.factors_.push_back({fac.first, static_cast<int>(fac.second * e)});
        return r;
    }
    FactoredRational scaled(const KHat& c) const { return FactoredRational::constant(c) * *this; }

    RationalFunction to_function() const {
        long p = prime();
        Poly<KHat> num = Poly<KHat>::constant(lead_);
        std::vector<Pole> poles;
        for (const auto& fac : factors_) {
            if (fac.second > 0) num *= Poly<KHat>::linear(fac.first).pow(static_cast<unsigned>(fac.second));
            else poles.push_back({fac.first, -fac.second});
        }
        return RationalFunction(std::move(num), std::move(poles), p);
    }

private:
    void multiply_factor(const KHat& x, int m) {
        if (m == 0) return;
        for (auto it = factors_.begin(); it != factors_.end(); ++it)
            if (it->first == x) {
                it->second += m;
                if (it->second == 0) factors_.erase(it);
                return;
            }
        factors_.push_back({x, m});
    }

    KHat lead_;
    std::vector<std::pair<KHat, int>> factors_;
};

/**
 * @brief Factorisation of f when its numerator splits over the given
 *        candidate roots (plus the poles and 0) up to one final linear factor.
 */
inline std::optional<FactoredRational> try_factor(const RationalFunction& f, std::vector<KHat> candidates = {}) {
    long p = f.prime();
    if (f.is_zero()) return FactoredRational(p);
    for (const auto& pl : f.poles()) candidates.push_back(pl.x);
    candidates.push_back(KHat(p));
    Poly<KHat> n = f.numerator();
    std::vector<std::pair<KHat, int>> factors;
    for (const auto& pl : f.poles()) factors.push_back({pl.x, -pl.order});
    for (const auto& x : candidates) {
        while (n.degree() >= 1 && n.eval(x).is_zero()) {
            n = n.divmod(Poly<KHat>::linear(x)).first;
            factors.push_back({x, 1});
        }
    }
    if (n.degree() == 1) {
        factors.push_back({-n[0] / n[1], 1});
        n = Poly<KHat>::constant(n[1]);
    }
    if (n.degree() != 0) return std::nullopt;
    return FactoredRational(n[0], factors);
}

// ---------------------------------------------------------------------------
// Gauss valuations
// ---------------------------------------------------------------------------

/** @brief Gauss valuation of a polynomial on the disc v(z - center) >= rho. */
inline Valuation gauss_on_disc(const Poly<KHat>& n, const KHat& center, long rho) {
    Valuation best = Valuation::infinity();
    Poly<KHat> shifted = n.taylor_shift(center);
    for (int j = 0; j <= shifted.degree(); ++j)
        if (!shifted[j].is_zero()) best = min(best, shifted[j].valuation() + Valuation(j * rho));
    return best;
}

/** @brief Gauss valuation (generic valuation on the disc v(z - center) >= rho); infinite for 0. */
inline Valuation gauss_on_disc(const RationalFunction& f, const KHat& center, long rho) {
    if (f.is_zero()) return Valuation::infinity();
    Valuation v = gauss_on_disc(f.numerator(), center, rho);
    for (const auto& pl : f.poles()) {
        Valuation d = min((center - pl.x).valuation(), Valuation(rho));
        v = v - Valuation::halves(d.twice() * pl.order);
    }
    return v;
}

/** @brief Same valuation for a factored function, by the product formula. */
inline Valuation gauss_on_disc(const FactoredRational& f, const KHat& center, long rho) {
    if (f.is_zero()) return Valuation::infinity();
    Valuation v = f.lead().valuation();
    for (const auto& fac : f.factors()) {
        Valuation d = min((center - fac.first).valuation(), Valuation(rho));
        v = v + Valuation::halves(d.twice() * fac.second);
    }
    return v;
}

/** @brief Gauss valuation at the vertex (m, b), i.e. on the disc b + p^{-m} O. */
template <class F>
Valuation gauss_valuation(const F& f, const Vertex& v) {
    return gauss_on_disc(f, to_khat(v.offset, f.prime()), -v.level);
}

// ---------------------------------------------------------------------------
// Characters and the automorphic action
// ---------------------------------------------------------------------------

/** @brief chi(g) = pihat^{v(det g)}. */
inline KHat chi(const GroupElement& g, long p) {
    require_invertible(g);
    return KHat::pihat_power(p, val_p(g.det(), p));
}
/** @brief epsilon(g) = det g / p^{v(det g)}, a unit; epsilon = det * chi^{-2}. */
inline Rational eps(const GroupElement& g, long p) {
    require_invertible(g);
    return g.det() * p_power(p, -val_p(g.det(), p));
}

/**
 * @brief Weight-k action f|_g(z) = chi^k(g) (a + c z)^{-k} f(g^{-1} z),
 *        where g^{-1} z = (b + d z)/(a + c z).
 */
inline RationalFunction automorphic_act(const GroupElement& g, const RationalFunction& f, long k) {
    require_invertible(g);
    long p = f.prime();
    if (f.is_zero()) return f;
    KHat a = to_khat(g.a, p), b = to_khat(g.b, p), c = to_khat(g.c, p), d = to_khat(g.d, p);
    const Poly<KHat>& N = f.numerator();
    int n = N.degree();
    Poly<KHat> bd(std::vector<KHat>{b, d}, KHat(p)), ac(std::vector<KHat>{a, c}, KHat(p));
    Poly<KHat> tilde{KHat(p)};
    for (int i = 0; i <= n; ++i) tilde += (bd.pow(i) * ac.pow(n - i)).scaled(N[i]);
    KHat scale = chi(g, p).pow(k);
    std::vector<Pole> poles;
    long exponent = -k - n;
    for (const auto& pl : f.poles()) {
        KHat lin = d - pl.x * c, cst = b - pl.x * a;
        if (!lin.is_zero()) {
            scale *= lin.pow(-pl.order);
            poles.push_back({(pl.x * a - b) / lin, pl.order});
        } else {
            scale *= cst.pow(-pl.order);
        }
        exponent += pl.order;
    }
    if (!c.is_zero()) {
        scale *= c.pow(exponent);
        KHat root = -a / c;
        poles.push_back({root, static_cast<int>(-exponent)});  // negative order multiplies the numerator
    } else {
        scale *= a.pow(exponent);
    }
    return RationalFunction(tilde.scaled(scale), std::move(poles), p);
}

/** @brief Weight-k action on a factored function (stays factored). */
inline FactoredRational automorphic_act(const GroupElement& g, const FactoredRational& f, long k) {
    require_invertible(g);
    long p = f.prime();
    if (f.is_zero()) return f;
    KHat a = to_khat(g.a, p), b = to_khat(g.b, p), c = to_khat(g.c, p), d = to_khat(g.d, p);
    KHat lead = f.lead() * chi(g, p).pow(k);
    std::vector<std::pair<KHat, int>> factors;
    long exponent = -k;
    for (const auto& fac : f.factors()) {
        KHat lin = d - fac.first * c, cst = b - fac.first * a;
        if (!lin.is_zero()) {
            lead *= lin.pow(fac.second);
            factors.push_back({(fac.first * a - b) / lin, fac.second});
        } else {
            lead *= cst.pow(fac.second);
        }
        exponent -= fac.second;
    }
    if (!c.is_zero()) {
        lead *= c.pow(exponent);
        factors.push_back({-a / c, static_cast<int>(exponent)});
    } else {
        lead *= a.pow(exponent);
    }
    return FactoredRational(lead, std::move(factors));
}

// ---------------------------------------------------------------------------
// Partial fractions and Laurent expansions
// ---------------------------------------------------------------------------

/** @brief Principal part sum_r c[r-1] (z - x)^{-r} at one pole. */
struct PrincipalPart {
    KHat x;
    std::vector<KHat> c;
};

/** @brief f = polynomial + sum of principal parts. */
struct PartialFractions {
    Poly<KHat> polynomial;
    std::vector<PrincipalPart> parts;
};

inline PartialFractions partial_fractions(const RationalFunction& f) {
    long p = f.prime();
    Poly<KHat> D = f.denominator();
    auto [Q, R] = f.numerator().divmod(D);
    PartialFractions out{Q, {}};
    for (size_t i = 0; i < f.poles().size(); ++i) {
        const Pole& pl = f.poles()[i];
        Poly<KHat> others = Poly<KHat>::constant(KHat(p, 1));
        for (size_t j = 0; j < f.poles().size(); ++j)
            if (j != i)
                others *= Poly<KHat>::linear(f.poles()[j].x).pow(static_cast<unsigned>(f.poles()[j].order));
        Poly<KHat> rs = R.taylor_shift(pl.x), os = others.taylor_shift(pl.x);
        // Power-series quotient rs/os modulo w^order.
        std::vector<KHat> s(pl.order, KHat(p));
        for (int t = 0; t < pl.order; ++t) {
            KHat acc = rs[t];
            for (int u = 1; u <= t; ++u) acc -= os[u] * s[t - u];
            s[t] = acc / os[0];
        }
        PrincipalPart part{pl.x, std::vector<KHat>(pl.order, KHat(p))};
        for (int t = 0; t < pl.order; ++t) part.c[pl.order - 1 - t] = s[t];
        out.parts.push_back(std::move(part));
    }
    return out;
}

inline Rational binomial(long n, long k) {
    if (k < 0 || n < k) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(r);
}

/**
 * @brief Laurent coefficients a_lo..a_hi on the annulus 0 < v(z) < 1 together
 *        with the exact infima of v(a_j) + j c (c = 0, 1) over j outside the window.
 *
 * Each tail infimum is itself a Gauss valuation of an explicit rational
 * function, so the bounds v(a_j) >= tail(c) - j c are certified, not sampled.
 */
struct LaurentWindow {
    long p = 2;
    int lo = 0, hi = -1;
    std::vector<KHat> coeffs;
    Valuation lower_tail[2] = {Valuation::infinity(), Valuation::infinity()};
    Valuation upper_tail[2] = {Valuation::infinity(), Valuation::infinity()};

    KHat coefficient(int j) const {
        if (j < lo || j > hi) throw std::out_of_range("coefficient outside the computed window");
        return coeffs[j - lo];
    }
    /** @brief Certified lower bound for v(a_j) when j lies outside the window. */
    Valuation tail_bound(int j) const {
        const Valuation* t = j < lo ? lower_tail : upper_tail;
        Valuation b0 = t[0], b1 = t[1].is_infinite() ? t[1] : t[1] - Valuation(j);
        return max(b0, b1);
    }
    /** @brief inf_j v(a_j) + j c over all j, i.e. the Gauss valuation at v(z) = c. */
    Valuation circle_valuation(int c) const {
        Valuation v = min(lower_tail[c], upper_tail[c]);
        for (int j = lo; j <= hi; ++j)
            if (!coeffs[j - lo].is_zero()) v = min(v, coeffs[j - lo].valuation() + Valuation(j * c));
        return v;
    }
};

/** @brief Laurent expansion of f on the annulus 0 < v(z) < 1. */
inline LaurentWindow laurent_standard(const RationalFunction& f, int lo, int hi) {
    long p = f.prime();
    for (const auto& pl : f.poles()) {
        Valuation v = pl.x.valuation();
        if (Valuation(0) < v && v < Valuation(1))
            throw PoleInsideAnnulus("pole " + pl.x.str() + " lies inside the standard annulus");
    }
    PartialFractions pf = partial_fractions(f);
    auto is_inner = [](const KHat& x) { return !(x.valuation() < Valuation(1)); };

    auto coefficient = [&](int j) {
        KHat a(p);
        if (j >= 0) {
            a += pf.polynomial[j];
            for (const auto& part : pf.parts) {
                if (is_inner(part.x)) continue;
                for (int r = 1; r <= static_cast<int>(part.c.size()); ++r) {
                    if (part.c[r - 1].is_zero()) continue;
                    // (z - x)^{-r} = (-x)^{-r} sum_i C(r+i-1, i) x^{-i} z^i
                    a += part.c[r - 1] * (-part.x).pow(-r) * KHat(p, binomial(r + j - 1, j)) * part.x.pow(-j);
                }
            }
        } else {
            for (const auto& part : pf.parts) {
                if (!is_inner(part.x)) continue;
                for (int r = 1; r <= static_cast<int>(part.c.size()); ++r) {
                    int i = -j - r;
                    if (i < 0 || part.c[r - 1].is_zero()) continue;
                    // (z - x)^{-r} = sum_i C(r+i-1, i) x^i z^{-r-i}
                    KHat xi = i == 0 ? KHat(p, 1) : part.x.pow(i);
                    a += part.c[r - 1] * KHat(p, binomial(r + i - 1, i)) * xi;
                }
            }
        }
        return a;
    };

    LaurentWindow w;
    w.p = p;
    w.lo = lo;
    w.hi = hi;
    for (int j = lo; j <= hi; ++j) w.coeffs.push_back(coefficient(j));

    RationalFunction plus(Poly<KHat>(pf.polynomial), {}, p), minus(p);
    for (const auto& part : pf.parts) {
        RationalFunction term(p);
        for (int r = 1; r <= static_cast<int>(part.c.size()); ++r)
            term += RationalFunction::linear_power(part.x, -r).scaled(part.c[r - 1]);
        if (is_inner(part.x)) minus += term;
        else plus += term;
    }
    // plus carries a_j for j >= 0, minus carries a_j for j <= -1; strip the
    // indices that are not in the respective tail and account for window
    // indices that sit on the other side of zero explicitly.
    for (int j = 0; j <= hi; ++j) plus = plus - RationalFunction::z_power(j, p).scaled(coefficient(j));
    for (int j = lo; j <= -1; ++j) minus = minus - RationalFunction::z_power(j, p).scaled(coefficient(j));
    for (int c = 0; c < 2; ++c) {
        w.upper_tail[c] = gauss_on_disc(plus, KHat(p), c);
        w.lower_tail[c] = gauss_on_disc(minus, KHat(p), c);
        for (int j = hi + 1; j <= -1; ++j) {
            KHat a = coefficient(j);
            if (!a.is_zero()) w.upper_tail[c] = min(w.upper_tail[c], a.valuation() + Valuation(j * c));
        }
        for (int j = 0; j < lo; ++j) {
            KHat a = coefficient(j);
            if (!a.is_zero()) w.lower_tail[c] = min(w.lower_tail[c], a.valuation() + Valuation(j * c));
        }
    }
    return w;
}

/**
 * @brief Laurent window of f on edge e: f is first transported to the
 *        standard edge by the weight-`weight` action of the inverse transporter.
 */
inline LaurentWindow laurent_on_edge(const RationalFunction& f, const Edge& e, int lo, int hi, long weight = 0) {
    GroupElement g = edge_transporter(e, f.prime()).inverse();
    return laurent_standard(automorphic_act(g, f, weight), lo, hi);
}

}  // namespace drinfeld

#pragma once
/**
 * @file random.hpp
 * @brief Seeded samplers for group elements, vertices and rational sections
 *        used by the property sweeps.  All draws go through one
 *        std::mt19937_64, so a fixed seed reproduces a sweep exactly.
 */

#include <cstdint>
#include <random>
#include <vector>

#include "rational.hpp"

namespace drinfeld {

class Sampler {
public:
    Sampler(long p, std::uint64_t seed) : p_(p), rng_(seed) {}

    long prime() const { return p_; }

    /** @brief Uniform integer in [lo, hi]. */
    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

    /** @brief u p^e with u = n/d, |n| <= 9, 1 <= d <= 9 prime to p, and e in [emin, emax]. */
    Rational rational(long emin = -2, long emax = 2, bool allow_zero = true) {
        for (;;) {
            long n = integer(-9, 9);
            if (n == 0) {
                if (allow_zero) return 0;
                continue;
            }
            long d = integer(1, 9);
            if (d % p_ == 0 || n % p_ == 0) continue;
            Rational u(n, d);
            u.canonicalize();
            return u * p_power(p_, integer(emin, emax));
        }
    }

    /** @brief Invertible matrix with entries u p^e. */
    GroupElement group_element() {
        for (;;) {
            GroupElement g{rational(), rational(), rational(), rational()};
            if (sgn(g.det()) != 0) return g;
        }
    }

    /** @brief Vertex (m, b) with |m| <= max_level and b a random element of Z[1/p]. */
    Vertex vertex(long max_level = 3) {
        long m = integer(-max_level, max_level);
        Rational b = Rational(integer(0, 60)) * p_power(p_, integer(-max_level, 0));
        return make_vertex(m, b, p_);
    }

    /** @brief A root drawn from {0, 1, p, 1/p, 1 + p}. */
    Rational special_root() {
        const Rational roots[] = {0, 1, Rational(p_), Rational(1, p_), Rational(1 + p_)};
        return roots[integer(0, 4)];
    }

    /**
     * @brief lead * prod (z - x_i)^{m_i} with 1..max_factors factors, x_i rational
     *        (from the special roots or random) and m_i in [-2, 2].
     */
    FactoredRational function(int max_factors = 3, bool special_roots_only = false) {
        KHat lead(p_, rational(-2, 2, false), integer(0, 1) ? rational(-2, 2) : Rational(0));
        if (lead.is_zero()) lead = KHat(p_, 1);
        std::vector<std::pair<KHat, int>> factors;
        int n = static_cast<int>(integer(1, max_factors));
        for (int i = 0; i < n; ++i) {
            Rational x = (special_roots_only || integer(0, 1)) ? special_root() : rational();
            int m = static_cast<int>(integer(-2, 2));
            if (m == 0) m = -1;
            factors.push_back({KHat(p_, x), m});
        }
        return FactoredRational(lead, factors);
    }

private:
    long p_;
    std::mt19937_64 rng_;
};

}  // namespace drinfeld

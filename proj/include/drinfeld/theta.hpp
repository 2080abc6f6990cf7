#pragma once
/**
 * @file theta.hpp
 * @brief The operator theta = d^{k+1}/dz^{k+1} from weight -k to weight k+2:
 *        integrality, equivariance (Bol's identity), its kernel on
 *        polynomials, the vanishing of residues on its image, and the
 *        operator identity relating it to D_a = (z - a) d/dz.
 */

#include <memory>
#include <vector>

#include "harmonic.hpp"

namespace drinfeld {

/** @brief theta(f) = f^{(k+1)}. */
inline RationalFunction theta(const RationalFunction& f, int k) {
    if (k < 0) throw InvalidParameters("weight k must be non-negative");
    return f.derivative(k + 1);
}

/** @brief Integrality of theta at a vertex: f in O(-k) there implies theta f in O(k+2). */
struct ThetaCertificate {
    Vertex vertex;
    MembershipCertificate input;   ///< f in O(-k)
    MembershipCertificate output;  ///< theta f in O(k+2)
    bool pass() const { return !input.member || output.member; }
};

inline ThetaCertificate theta_integrality(const RationalFunction& f, int k, const Vertex& v) {
    return {v, section_membership(f, -k, v), section_membership(theta(f, k), k + 2, v)};
}

/**
 * @brief theta(f|_{-k} g) == eps(g)^{k+1} (theta f)|_{k+2} g.
 *
 * Bol's identity gives the factor det(g)^{k+1}; the characters chi^{-k} and
 * chi^{k+2} absorb chi(g)^{2k+2}, leaving eps(g)^{k+1}.
 */
inline bool theta_equivariant(const RationalFunction& f, int k, const GroupElement& g) {
    const long p = f.prime();
    RationalFunction lhs = theta(automorphic_act(g, f, -k), k);
    RationalFunction rhs = automorphic_act(g, theta(f, k), k + 2).scaled(KHat(p, eps(g, p)).pow(k + 1));
    return lhs == rhs;
}

/** @brief Kernel of theta on polynomials of degree <= n, computed from the matrix of d^{k+1}. */
struct ThetaPolynomialKernel {
    size_t dimension = 0;
    bool is_span_of_low_monomials = false;  ///< kernel == span{1, z, ..., z^k}
};

inline ThetaPolynomialKernel theta_polynomial_kernel(int k, int n) {
    Matrix<Rational> M(n + 1, n + 1, Rational(0));
    for (int j = 0; j <= n; ++j) {
        // d^{k+1} z^j = j (j-1) ... (j-k) z^{j-k-1}
        if (j < k + 1) continue;
        Rational c = 1;
        for (int i = 0; i <= k; ++i) c *= (j - i);
        M(j - k - 1, j) = c;
    }
    ThetaPolynomialKernel out;
    auto ker = M.kernel();
    out.dimension = ker.size();
    std::vector<std::vector<Rational>> low;
    for (int i = 0; i <= std::min(k, n); ++i) {
        std::vector<Rational> e(n + 1, Rational(0));
        e[i] = 1;
        low.push_back(e);
    }
    bool ok = ker.size() == low.size();
    for (const auto& v : ker) ok = ok && in_span(v, low, Rational(0));
    out.is_span_of_low_monomials = ok;
    return out;
}

/** @brief The residue of theta(f) vanishes on every edge. */
inline bool res_kills_theta(const RationalFunction& f, int k, std::shared_ptr<const TruncatedTree> tree) {
    return res0(theta(f, k), k, tree).is_zero();
}

/**
 * @brief Check of the operator identity, for even k,
 *        (z-a)^{(k+2)/2} theta (z-a)^{k/2} = D_a prod_{j=1}^{k/2} (D_a^2 - j^2),
 *        with D_a = (z - a) d/dz, on the test function (z - a)^m.
 */
struct IdentityBCheck {
    int k = 0;
    long m = 0;
    Rational lhs_scalar, rhs_scalar;          ///< both sides equal scalar * (z - a)^m
    Rational closed_lhs, closed_rhs;          ///< prod_{i=0}^{k} (k/2 + m - i) and m prod_j (m^2 - j^2)
    bool functions_equal = false;
    bool pass() const {
        return functions_equal && lhs_scalar == rhs_scalar && lhs_scalar == closed_lhs && closed_lhs == closed_rhs;
    }
};

inline IdentityBCheck identity_b_check(int k, const KHat& a, long m) {
    if (k < 0 || k % 2 != 0) throw InvalidParameters("the operator identity is stated for even k >= 0");
    const long p = a.prime();
    auto power = [&](long e) { return RationalFunction::linear_power(a, e); };
    auto D = [&](const RationalFunction& g) { return power(1) * g.derivative(); };

    RationalFunction lhs = power((k + 2) / 2) * theta(power(k / 2 + m), k);
    RationalFunction rhs = power(m);
    for (int j = 1; j <= k / 2; ++j) rhs = D(D(rhs)) - rhs.scaled(KHat(p, static_cast<long>(j) * j));
    rhs = D(rhs);

    IdentityBCheck c;
    c.k = k;
    c.m = m;
    c.functions_equal = lhs == rhs;
    // Extract the scalar by comparing with (z - a)^m.
    auto scalar_of = [&](const RationalFunction& f) -> Rational {
        RationalFunction q = f * power(-m);
        if (q.is_zero()) return 0;
        if (!q.poles().empty() || q.numerator().degree() != 0 || !q.numerator()[0].in_base_field())
            throw InvariantViolation("operator image is not a multiple of (z-a)^m");
        return q.numerator()[0].a();
    };
    c.lhs_scalar = scalar_of(lhs);
    c.rhs_scalar = scalar_of(rhs);
    c.closed_lhs = 1;
    for (int i = 0; i <= k; ++i) c.closed_lhs *= Rational(k / 2 + m - i);
    c.closed_rhs = Rational(m);
    for (int j = 1; j <= k / 2; ++j) c.closed_rhs *= Rational(m * m - static_cast<long>(j) * j);
    return c;
}

/**
 * @brief The two factorisations used in the proof of the identity, on (z-a)^m:
 *        (z-a)^n d^n = D(D-1)...(D-n+1) and d^n (z-a)^n = (D+n)...(D+1).
 */
inline bool falling_rising_check(int n, const KHat& a, long m) {
    const long p = a.prime();
    auto power = [&](long e) { return RationalFunction::linear_power(a, e); };
    auto D = [&](const RationalFunction& g) { return power(1) * g.derivative(); };
    RationalFunction f = power(m);
    RationalFunction lhs1 = power(n) * f.derivative(n), rhs1 = f;
    for (int i = n - 1; i >= 0; --i) rhs1 = D(rhs1) - rhs1.scaled(KHat(p, i));
    RationalFunction lhs2 = (power(n) * f).derivative(n), rhs2 = f;
    for (int i = 1; i <= n; ++i) rhs2 = D(rhs2) + rhs2.scaled(KHat(p, i));
    return lhs1 == rhs1 && lhs2 == rhs2;
}

}  // namespace drinfeld

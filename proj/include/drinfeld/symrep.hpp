#pragma once
/**
 * @file symrep.hpp
 * @brief Twisted symmetric powers Sym^n(St)[s] (x chi^t), their duals, and
 *        the explicit isomorphism between the dual of Sym^k[1] (x chi^{-k-2})
 *        and Sym^k[-k-1] (x chi^{k+2}).
 *
 * The action on a homogeneous form is
 *     g.F(X, Y) = det(g)^s chi(g)^t F(dX + bY, cX + aY),
 * a left action.  Sym^k[1] x chi^{-k-2} is the coefficient module of the
 * weight-(k+2) residues, and its dual carries (g.h)(x) = h(g^{-1} x).
 */

#include <string>
#include <vector>

#include "linalg.hpp"
#include "rational.hpp"

namespace drinfeld {

/** @brief Homogeneous form sum_i coeffs[i] X^i Y^{n-i} in Sym^n(St)[twist]. */
template <class T>
struct SymElement {
    int degree = 0;
    std::vector<T> coeffs;
    long twist = 0;

    friend bool operator==(const SymElement& x, const SymElement& y) {
        return x.degree == y.degree && x.twist == y.twist && x.coeffs == y.coeffs;
    }
};

/** @brief Basis monomial X^i Y^{n-i}. */
template <class T>
SymElement<T> sym_basis(int n, int i, long twist, const T& zero) {
    SymElement<T> e{n, std::vector<T>(n + 1, zero_like(zero)), twist};
    e.coeffs[i] = one_like(zero);
    return e;
}

/**
 * @brief F(dX + bY, cX + aY) scaled by `factor`, for the matrix [[a,b],[c,d]].
 *
 * Homogeneous forms are handled as polynomials in X with Y = 1.
 */
template <class T>
SymElement<T> substitute(const Mat2<T>& g, const SymElement<T>& F, const T& factor) {
    const T zero = zero_like(factor);
    Poly<T> lx(std::vector<T>{g.b, g.d}, zero);  // dX + bY
    Poly<T> ly(std::vector<T>{g.a, g.c}, zero);  // cX + aY
    Poly<T> acc(zero);
    const int n = F.degree;
    for (int i = 0; i <= n; ++i) {
        if (drinfeld::is_zero(F.coeffs[i])) continue;
        acc += (lx.pow(i) * ly.pow(n - i)).scaled(F.coeffs[i]);
    }
    SymElement<T> out{n, std::vector<T>(n + 1, zero), F.twist};
    for (int i = 0; i <= n; ++i) out.coeffs[i] = acc[i] * factor;
    return out;
}

/** @brief x^e for e >= 0 over any ring. */
template <class T>
T power(const T& x, long e) {
    T r = one_like(x), b = x;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

/** @brief Action of g in GL_2(F) on Sym^n(St)[s] over any field. */
template <class T>
SymElement<T> sym_act(const Mat2<T>& g, const SymElement<T>& F) {
    T det = g.det();
    if (drinfeld::is_zero(det)) throw SingularMatrix("group element has zero determinant");
    T factor = F.twist >= 0 ? power(det, F.twist) : power(one_like(det) / det, -F.twist);
    return substitute(g, F, factor);
}

inline Mat2<KHat> to_khat(const GroupElement& g, long p) {
    return {to_khat(g.a, p), to_khat(g.b, p), to_khat(g.c, p), to_khat(g.d, p)};
}

/**
 * @brief Action of g in GL_2(Q) on Sym^n(St)[s] x chi^t with coefficients in Q(pihat).
 */
inline SymElement<KHat> sym_act(const GroupElement& g, const SymElement<KHat>& F, long chi_power, long p) {
    require_invertible(g);
    KHat factor = to_khat(g.det(), p).pow(F.twist) * chi(g, p).pow(chi_power);
    return substitute(to_khat(g, p), F, factor);
}

/** @brief Matrix (columns = images of X^i Y^{n-i}) of g on Sym^n[s] x chi^t. */
inline Matrix<KHat> sym_matrix(const GroupElement& g, int n, long twist, long chi_power, long p) {
    Matrix<KHat> m(n + 1, n + 1, KHat(p));
    for (int i = 0; i <= n; ++i) {
        auto img = sym_act(g, sym_basis<KHat>(n, i, twist, KHat(p)), chi_power, p);
        for (int s = 0; s <= n; ++s) m(s, i) = img.coeffs[s];
    }
    return m;
}

/**
 * @brief Element of Hom(Sym^k[1] x chi^{-k-2}, Q(pihat)) in the dual basis h_j
 *        (h_j(X^i Y^{k-i}) = delta_ij).
 */
struct DualVector {
    int k = 0;
    std::vector<KHat> coords;

    static DualVector zero(int k, long p) { return {k, std::vector<KHat>(k + 1, KHat(p))}; }
    static DualVector basis(int k, int j, long p) {
        DualVector h = zero(k, p);
        h.coords[j] = KHat(p, 1);
        return h;
    }
    bool is_zero() const {
        for (const auto& c : coords)
            if (!c.is_zero()) return false;
        return true;
    }
    friend DualVector operator+(const DualVector& x, const DualVector& y) {
        DualVector r = x;
        for (size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += y.coords[i];
        return r;
    }
    friend DualVector operator-(const DualVector& x, const DualVector& y) {
        DualVector r = x;
        for (size_t i = 0; i < r.coords.size(); ++i) r.coords[i] -= y.coords[i];
        return r;
    }
    DualVector scaled(const KHat& c) const {
        DualVector r = *this;
        for (auto& x : r.coords) x *= c;
        return r;
    }
    friend bool operator==(const DualVector& x, const DualVector& y) { return x.k == y.k && x.coords == y.coords; }
};

/** @brief Matrix of h -> g.h on the dual, i.e. the transpose of g^{-1} on Sym^k[1] x chi^{-k-2}. */
inline Matrix<KHat> dual_matrix(const GroupElement& g, int k, long p) {
    return sym_matrix(g.inverse(), k, 1, -k - 2, p).transpose();
}

/** @brief (g.h)(x) = h(g^{-1}.x). */
inline DualVector dual_act(const GroupElement& g, const DualVector& h, long p) {
    return {h.k, dual_matrix(g, h.k, p) * h.coords};
}

/** @brief h(F) = sum_i h_i F_i. */
inline KHat pairing(const DualVector& h, const SymElement<KHat>& F, long p) {
    KHat s(p);
    for (int i = 0; i <= h.k; ++i) s += h.coords[i] * F.coeffs[i];
    return s;
}

/**
 * @brief Plain basis relabelling h_j -> X^{k-j} Y^j into Sym^k[-k-1] x chi^{k+2}.
 *
 * This is equivariant for the diagonal torus only (in particular for all
 * gamma_n); for the full group use dual_to_sym.
 */
inline SymElement<KHat> relabel(const DualVector& h) {
    SymElement<KHat> F{h.k, std::vector<KHat>(h.k + 1, zero_like(h.coords[0])), -h.k - 1};
    for (int j = 0; j <= h.k; ++j) F.coeffs[h.k - j] = h.coords[j];
    return F;
}

/**
 * @brief The G-equivariant isomorphism h_j -> (-1)^j C(k, j) X^{k-j} Y^j onto
 *        Sym^k[-k-1] x chi^{k+2}, induced by the invariant pairing on Sym^k.
 *
 * It differs from relabel by the scalars (-1)^j C(k, j), which are units of
 * O_K only when p does not divide C(k, j).
 */
inline SymElement<KHat> dual_to_sym(const DualVector& h) {
    SymElement<KHat> F = relabel(h);
    const long p = h.coords[0].prime();
    for (int j = 0; j <= h.k; ++j) F.coeffs[h.k - j] *= KHat(p, (j % 2 ? -1 : 1) * binomial(h.k, j));
    return F;
}

}  // namespace drinfeld

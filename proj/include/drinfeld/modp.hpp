#pragma once
/**
 * @file modp.hpp
 * @brief Geometry of the special fibre: rational functions on P^1 over F_q,
 *        divisors supported on F_q-points and infinity, Riemann-Roch spaces,
 *        the weight-k action of GL_2(F_q), the isomorphism between twisted
 *        symmetric powers and spaces of sections on a component, the
 *        (q+1)-dimensional quotient representation and its stable lines,
 *        global sections over truncations of the tree, and the lattice
 *        profile of the bundle restricted to the even-valuation subgroup.
 */

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lattices.hpp"

namespace drinfeld {

using FqPoly = Poly<FqElem>;

/** @brief Reduced fraction num/den over F_q with monic denominator. */
class FqRational {
public:
    explicit FqRational(const FqField& F) : num_(F.zero()), den_(FqPoly::constant(F.one())) {}
    FqRational(FqPoly num, FqPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static FqRational constant(const FqElem& c) { return {FqPoly::constant(c), FqPoly::constant(one_like(c))}; }
    static FqRational from_poly(const FqPoly& n) { return {n, FqPoly::constant(one_like(n.zero()))}; }
    /** @brief The coordinate function z. */
    static FqRational z(const FqField& F) { return from_poly(FqPoly::monomial(F.one(), 1)); }

    const FqPoly& numerator() const { return num_; }
    const FqPoly& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    const FqField& field() const { return den_.zero().field(); }

    friend FqRational operator+(const FqRational& x, const FqRational& y) {
        return {x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_};
    }
    friend FqRational operator-(const FqRational& x, const FqRational& y) {
        return {x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_};
    }
    friend FqRational operator*(const FqRational& x, const FqRational& y) { return {x.num_ * y.num_, x.den_ * y.den_}; }
    friend FqRational operator/(const FqRational& x, const FqRational& y) {
        if (y.is_zero()) throw ZeroFunction("division by the zero function");
        return {x.num_ * y.den_, x.den_ * y.num_};
    }
    friend bool operator==(const FqRational& x, const FqRational& y) { return x.num_ == y.num_ && x.den_ == y.den_; }
    friend bool operator!=(const FqRational& x, const FqRational& y) { return !(x == y); }
    FqRational scaled(const FqElem& c) const { return {num_.scaled(c), den_}; }
    FqRational pow(long e) const {
        if (e < 0) {
            if (is_zero()) throw ZeroFunction("negative power of the zero function");
            return FqRational(den_, num_).pow(-e);
        }
        return {num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e))};
    }

    /** @brief Order of vanishing at the F_q-point b (negative for poles); throws ZeroFunction for 0. */
    long order_at(const FqElem& b) const {
        if (is_zero()) throw ZeroFunction("order of the zero function");
        return multiplicity(num_, b) - multiplicity(den_, b);
    }
    /** @brief Order at infinity, deg den - deg num. */
    long order_at_infinity() const {
        if (is_zero()) throw ZeroFunction("order of the zero function");
        return den_.degree() - num_.degree();
    }
    FqElem eval(const FqElem& t) const {
        FqElem d = den_.eval(t);
        if (d.is_zero()) throw std::domain_error("evaluation at a pole");
        return num_.eval(t) / d;
    }

    std::string str() const {
        auto ps = [](const FqPoly& P) {
            std::string s = "[";
            for (int i = 0; i <= P.degree(); ++i) s += (i ? "," : "") + P[i].str();
            return s + "]";
        };
        return ps(num_) + "/" + ps(den_);
    }

private:
    static long multiplicity(FqPoly P, const FqElem& b) {
        long m = 0;
        FqPoly lin = FqPoly::linear(b);
        while (!P.is_zero() && P.eval(b).is_zero()) {
            P = P.divmod(lin).first;
            ++m;
        }
        return m;
    }
    void normalize() {
        if (den_.is_zero()) throw ZeroFunction("zero denominator");
        if (num_.is_zero()) {
            den_ = FqPoly::constant(one_like(den_.zero()));
            return;
        }
        FqPoly g = gcd(num_, den_);
        num_ = num_.divmod(g).first;
        den_ = den_.divmod(g).first;
        FqElem l = den_.lead();
        num_ = num_.scaled(l.inverse());
        den_ = den_.monic();
    }

    FqPoly num_, den_;
};

/** @brief All elements of GL_2(F_q), in lexicographic order of their encodings. */
inline std::vector<Mat2<FqElem>> gl2_elements(const FqField& F) {
    std::vector<Mat2<FqElem>> out;
    auto E = F.elements();
    for (const auto& a : E)
        for (const auto& b : E)
            for (const auto& c : E)
                for (const auto& d : E)
                    if (!(a * d - b * c).is_zero()) out.push_back({a, b, c, d});
    return out;
}

/** @brief Elements of SL_2(F_q). */
inline std::vector<Mat2<FqElem>> sl2_elements(const FqField& F) {
    std::vector<Mat2<FqElem>> out;
    for (const auto& g : gl2_elements(F))
        if (g.det() == F.one()) out.push_back(g);
    return out;
}

/** @brief sum_i P_i (b + d z)^i (a + c z)^{n-i}, the homogenised substitution z -> (b + dz)/(a + cz). */
inline FqPoly homogeneous_substitute(const FqPoly& P, int n, const Mat2<FqElem>& g) {
    const FqElem zero = zero_like(g.a);
    FqPoly bd(std::vector<FqElem>{g.b, g.d}, zero), ac(std::vector<FqElem>{g.a, g.c}, zero);
    FqPoly acc(zero);
    for (int i = 0; i <= P.degree(); ++i) {
        if (P[i].is_zero()) continue;
        acc += (bd.pow(i) * ac.pow(n - i)).scaled(P[i]);
    }
    return acc;
}

/** @brief f|_g(z) = (a + cz)^{-k} f((b + dz)/(a + cz)). */
inline FqRational weight_action_p1(const FqRational& f, const Mat2<FqElem>& g, long k) {
    if (g.det().is_zero()) throw SingularMatrix("group element has zero determinant");
    if (f.is_zero()) return f;
    int dn = f.numerator().degree(), dd = f.denominator().degree();
    FqPoly N = homogeneous_substitute(f.numerator(), dn, g);
    FqPoly D = homogeneous_substitute(f.denominator(), dd, g);
    FqPoly ac(std::vector<FqElem>{g.a, g.c}, zero_like(g.a));
    long E = dd - dn - k;
    if (E >= 0) N *= ac.pow(static_cast<unsigned>(E));
    else D *= ac.pow(static_cast<unsigned>(-E));
    return {N, D};
}

/** @brief Divisor sum_b d_b [b] + d_inf [inf] supported on F_q-points and infinity. */
struct P1Divisor {
    std::map<int, long> at_points;  ///< encoded point -> multiplicity
    long at_infinity = 0;

    long degree() const {
        long d = at_infinity;
        for (const auto& [b, m] : at_points) d += m;
        return d;
    }
    long at(int b) const {
        auto it = at_points.find(b);
        return it == at_points.end() ? 0 : it->second;
    }
};

/** @brief f in L(D): div f + D >= 0 (the zero function always belongs). */
inline bool in_riemann_roch(const FqRational& f, const P1Divisor& D) {
    if (f.is_zero()) return true;
    const FqField& F = f.field();
    // Poles only at supported F_q-points: the denominator divides prod (z - b)^{d_b}.
    FqPoly allowed = FqPoly::constant(F.one());
    for (const auto& [b, m] : D.at_points)
        if (m > 0) allowed *= FqPoly::linear(F.elem(b)).pow(static_cast<unsigned>(m));
    if (!allowed.divmod(f.denominator()).second.is_zero()) return false;
    for (const auto& b : F.elements())
        if (f.order_at(b) + D.at(b.value()) < 0) return false;
    return f.order_at_infinity() + D.at_infinity >= 0;
}

/** @brief Basis of L(D) computed by linear algebra on numerators over the allowed denominator. */
inline std::vector<FqRational> riemann_roch_basis(const P1Divisor& D, const FqField& F) {
    FqPoly den = FqPoly::constant(F.one());
    long den_deg = 0;
    for (const auto& [b, m] : D.at_points)
        if (m > 0) {
            den *= FqPoly::linear(F.elem(b)).pow(static_cast<unsigned>(m));
            den_deg += m;
        }
    long max_deg = den_deg + D.at_infinity;
    if (max_deg < 0) return {};
    // Numerator N of degree <= max_deg must vanish to order -d_b at points with d_b < 0.
    std::vector<std::vector<FqElem>> rows;
    for (const auto& [b, m] : D.at_points) {
        if (m >= 0) continue;
        for (long t = 0; t < -m; ++t) {
            // t-th Taylor coefficient at b of N: sum_i N_i C(i, t) b^{i-t}
            std::vector<FqElem> row;
            for (long i = 0; i <= max_deg; ++i) {
                FqElem c = F.zero();
                if (i >= t) {
                    Rational bin = binomial(i, t);
                    c = F.integer(Integer(bin.get_num() % F.characteristic()).get_si()) * F.elem(b).pow(i - t);
                }
                row.push_back(c);
            }
            rows.push_back(row);
        }
    }
    std::vector<FqRational> basis;
    if (rows.empty()) {
        for (long i = 0; i <= max_deg; ++i) basis.emplace_back(FqPoly::monomial(F.one(), static_cast<int>(i)), den);
        return basis;
    }
    Matrix<FqElem> M(rows.size(), max_deg + 1, F.zero());
    for (size_t r = 0; r < rows.size(); ++r)
        for (long i = 0; i <= max_deg; ++i) M(r, i) = rows[r][i];
    for (const auto& v : M.kernel()) basis.emplace_back(FqPoly(v, F.zero()), den);
    return basis;
}

/** @brief Rank over F_q of a family of rational functions (via a common denominator). */
inline size_t rank_of_functions(const std::vector<FqRational>& fs, const FqField& F) {
    if (fs.empty()) return 0;
    FqPoly common = FqPoly::constant(F.one());
    for (const auto& f : fs) {
        FqPoly g = gcd(common, f.denominator());
        common = common * f.denominator().divmod(g).first;
    }
    std::vector<std::vector<FqElem>> cols;
    int deg = 0;
    std::vector<FqPoly> nums;
    for (const auto& f : fs) {
        nums.push_back(f.numerator() * common.divmod(f.denominator()).first);
        deg = std::max(deg, nums.back().degree());
    }
    for (const auto& n : nums) {
        std::vector<FqElem> c;
        for (int i = 0; i <= deg; ++i) c.push_back(n[i]);
        cols.push_back(c);
    }
    return rank_of(cols, deg + 1, F.zero());
}

// ---------------------------------------------------------------------------
// Components of the special fibre
// ---------------------------------------------------------------------------

/**
 * @brief Divisor of the restriction of O(k) to a component in its coordinate w,
 *        the neighbour towards infinity sitting at w = infinity:
 *        even k: -k/2 [inf] + sum_b (k/2) [b];  odd k: -(k+1)/2 [inf] + sum_b (k-1)/2 [b].
 */
inline P1Divisor component_divisor(long k, const FqField& F) {
    P1Divisor D;
    long fl = k >= 0 ? k / 2 : -((-k + 1) / 2);  // floor(k/2)
    bool even = (k % 2 == 0);
    D.at_infinity = even ? -fl : -(fl + 1);
    for (const auto& b : F.elements()) D.at_points[b.value()] = fl;
    return D;
}

/** @brief (q-1)k/2 for even k, (q-1)(k-1)/2 - 1 for odd k. */
inline long component_degree_closed_form(long q, long k) {
    return (k % 2 == 0) ? (q - 1) * k / 2 : (q - 1) * (k - 1) / 2 - 1;
}

struct ComponentDegree {
    long q = 2, k = 0;
    long closed_form = 0;
    long from_divisor = 0;
    long h0 = 0;  ///< dim of the Riemann-Roch space, computed
    bool pass() const { return closed_form == from_divisor && h0 == std::max(0L, from_divisor + 1); }
};

inline ComponentDegree component_degree(long q, long k) {
    const FqField& F = FqField::get(q);
    P1Divisor D = component_divisor(k, F);
    return {q, k, component_degree_closed_form(q, k), D.degree(), static_cast<long>(riemann_roch_basis(D, F).size())};
}

// ---------------------------------------------------------------------------
// Symmetric powers as sections
// ---------------------------------------------------------------------------

/** @brief Parameters t (degree), s (twist) and e (exponent of z - z^q) of the isomorphism. */
struct SymGeomParams {
    long q = 2, k = 0, i = 0;
    long t = 0, s = 0, e = 0;
};

/**
 * @brief even k: t = (q-1)k/2 - i(q+1), e = i - k/2;
 *        odd k:  t = ((q-1)k - (q+1))/2 - i(q+1), e = i - (k-1)/2;  s = e.
 * @throws InvalidParameters when q is not a prime power, k or i is negative, or t < 0.
 */
inline SymGeomParams symgeom_params(long q, long k, long i) {
    if (!is_prime_power(q)) throw InvalidParameters("q must be a prime power");
    if (k < 0 || i < 0) throw InvalidParameters("k and i must be non-negative");
    SymGeomParams P{q, k, i, 0, 0, 0};
    if (k % 2 == 0) {
        P.t = (q - 1) * k / 2 - i * (q + 1);
        P.e = i - k / 2;
    } else {
        P.t = ((q - 1) * k - (q + 1)) / 2 - i * (q + 1);
        P.e = i - (k - 1) / 2;
    }
    P.s = P.e;
    if (P.t < 0) throw InvalidParameters("no symmetric power for these parameters (t < 0)");
    return P;
}

/** @brief Target divisor: -e [b] at every F_q-point and t + q e at infinity. */
inline P1Divisor symgeom_divisor(const SymGeomParams& P, const FqField& F) {
    P1Divisor D;
    D.at_infinity = P.t + P.q * P.e;
    for (const auto& b : F.elements()) D.at_points[b.value()] = -P.e;
    return D;
}

/** @brief The map X^r Y^{t-r} -> z^r (z - z^q)^e. */
inline FqRational symgeom_iso(const SymElement<FqElem>& F, const SymGeomParams& P) {
    const FqField& K = F.coeffs[0].field();
    FqRational zq = FqRational::z(K) - FqRational::z(K).pow(P.q);
    return FqRational::from_poly(FqPoly(F.coeffs, K.zero())) * zq.pow(P.e);
}

struct SymGeomCheck {
    SymGeomParams params;
    long dimension = 0;        ///< t + 1
    long target_h0 = 0;        ///< dim of the Riemann-Roch space of the target divisor
    size_t image_rank = 0;
    bool image_in_target = false;
    bool equivariant = false;
    size_t group_elements_checked = 0;
    bool pass() const {
        return image_in_target && equivariant && static_cast<long>(image_rank) == dimension && target_h0 == dimension;
    }
};

/** @brief Bijectivity onto the Riemann-Roch space and equivariance under all of GL_2(F_q). */
inline SymGeomCheck symgeom_check(long q, long k, long i) {
    SymGeomCheck c;
    c.params = symgeom_params(q, k, i);
    const auto& P = c.params;
    const FqField& F = FqField::get(q);
    P1Divisor D = symgeom_divisor(P, F);
    c.dimension = P.t + 1;
    c.target_h0 = static_cast<long>(riemann_roch_basis(D, F).size());
    std::vector<FqRational> images;
    c.image_in_target = true;
    for (long r = 0; r <= P.t; ++r) {
        images.push_back(symgeom_iso(sym_basis<FqElem>(static_cast<int>(P.t), static_cast<int>(r), P.s, F.zero()), P));
        c.image_in_target = c.image_in_target && in_riemann_roch(images.back(), D);
    }
    c.image_rank = rank_of_functions(images, F);
    c.equivariant = true;
    for (const auto& g : gl2_elements(F)) {
        for (long r = 0; r <= P.t && c.equivariant; ++r) {
            auto basis = sym_basis<FqElem>(static_cast<int>(P.t), static_cast<int>(r), P.s, F.zero());
            c.equivariant = symgeom_iso(sym_act(g, basis), P) == weight_action_p1(images[r], g, k);
        }
        ++c.group_elements_checked;
        if (!c.equivariant) break;
    }
    return c;
}

// ---------------------------------------------------------------------------
// The quotient representation and its stable lines
// ---------------------------------------------------------------------------

/** @brief A finite-dimensional representation of GL_2(F_q) given on every group element. */
struct FqRepresentation {
    long q = 2;
    size_t dim = 0;
    std::vector<Mat2<FqElem>> elements;
    std::vector<Matrix<FqElem>> matrices;
};

struct QuotientAnalysis {
    SymGeomParams params;
    size_t relation_count = 0;
    size_t quotient_dim = 0;
    bool relations_stable = false;   ///< the span of the relations is GL_2(F_q)-stable
    bool homomorphism = false;       ///< rho(g h) = rho(g) rho(h) for all pairs
    std::vector<std::vector<FqElem>> stable_lines;  ///< normalised representatives, quotient coordinates
    std::vector<long> kept_monomials;               ///< X^r Y^{t-r} spanning the quotient
    std::vector<size_t> pivots;                     ///< pivot monomials of the echelon relations
    std::vector<std::vector<FqElem>> relation_echelon;
    FqRepresentation rep;
    bool pass() const { return quotient_dim == static_cast<size_t>(params.q + 1) && relations_stable && homomorphism; }
};

/** @brief Class in the quotient of a form given on all t+1 monomials. */
inline std::vector<FqElem> quotient_class(const QuotientAnalysis& Q, std::vector<FqElem> v) {
    for (size_t r = 0; r < Q.pivots.size(); ++r) {
        FqElem f = v[Q.pivots[r]];
        if (f.is_zero()) continue;
        for (size_t c = 0; c < v.size(); ++c) v[c] = v[c] - f * Q.relation_echelon[r][c];
    }
    std::vector<FqElem> out;
    for (long m : Q.kept_monomials) out.push_back(v[m]);
    return out;
}

/**
 * @brief Quotient of Sym^t[s] by the relations X^j Y^{t-j} - X^{q+j-1} Y^{t-q-j+1} (1 <= j <= t-q),
 *        with stable lines found by brute force over all projective points and all group elements.
 */
inline QuotientAnalysis quotient_rep_and_stable_lines(long q, long k, long i) {
    QuotientAnalysis out;
    out.params = symgeom_params(q, k, i);
    const auto& P = out.params;
    if (P.t < q + 1) throw InvalidParameters("the quotient needs t >= q + 1");
    const FqField& F = FqField::get(q);
    const size_t n = P.t + 1;
    std::vector<std::vector<FqElem>> rel;
    for (long j = 1; j <= P.t - q; ++j) {
        std::vector<FqElem> v(n, F.zero());
        v[j] = F.one();
        v[q + j - 1] = -F.one();
        rel.push_back(v);
    }
    out.relation_count = rel.size();
    // Echelon form of the relations; the non-pivot monomials span the quotient.
    Matrix<FqElem> R(rel.size(), n, F.zero());
    for (size_t r = 0; r < rel.size(); ++r)
        for (size_t c = 0; c < n; ++c) R(r, c) = rel[r][c];
    auto piv = R.rref();
    std::vector<bool> is_piv(n, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<size_t> kept;
    for (size_t c = 0; c < n; ++c)
        if (!is_piv[c]) kept.push_back(c);
    out.quotient_dim = kept.size();
    for (auto c : kept) out.kept_monomials.push_back(static_cast<long>(c));
    out.pivots = piv;
    for (size_t r = 0; r < piv.size(); ++r) {
        std::vector<FqElem> row;
        for (size_t c = 0; c < n; ++c) row.push_back(R(r, c));
        out.relation_echelon.push_back(row);
    }
    auto reduce = [&](const std::vector<FqElem>& v) { return quotient_class(out, v); };
    auto act = [&](const Mat2<FqElem>& g, const std::vector<FqElem>& v) {
        return sym_act(g, SymElement<FqElem>{static_cast<int>(P.t), v, P.s}).coeffs;
    };

    auto group = gl2_elements(F);
    out.relations_stable = true;
    for (const auto& g : group)
        for (const auto& v : rel) {
            auto img = reduce(act(g, v));
            for (const auto& x : img) out.relations_stable = out.relations_stable && x.is_zero();
        }

    out.rep.q = q;
    out.rep.dim = kept.size();
    for (const auto& g : group) {
        Matrix<FqElem> M(kept.size(), kept.size(), F.zero());
        for (size_t c = 0; c < kept.size(); ++c) {
            std::vector<FqElem> e(n, F.zero());
            e[kept[c]] = F.one();
            auto img = reduce(act(g, e));
            for (size_t r = 0; r < kept.size(); ++r) M(r, c) = img[r];
        }
        out.rep.elements.push_back(g);
        out.rep.matrices.push_back(M);
    }
    std::map<std::vector<int>, size_t> index;
    auto key = [](const Mat2<FqElem>& g) { return std::vector<int>{g.a.value(), g.b.value(), g.c.value(), g.d.value()}; };
    for (size_t a = 0; a < group.size(); ++a) index[key(group[a])] = a;
    out.homomorphism = true;
    for (size_t a = 0; a < group.size() && out.homomorphism; ++a)
        for (size_t b = 0; b < group.size() && out.homomorphism; ++b)
            out.homomorphism = out.rep.matrices[index[key(group[a] * group[b])]] == out.rep.matrices[a] * out.rep.matrices[b];

    // Projective points: first non-zero coordinate equal to 1.
    const size_t d = kept.size();
    long total = 1;
    for (size_t c = 0; c < d; ++c) total *= q;
    for (long code = 1; code < total; ++code) {
        std::vector<FqElem> v(d, F.zero());
        long t = code;
        for (size_t c = 0; c < d; ++c) {
            v[c] = F.elem(t % q);
            t /= q;
        }
        size_t lead = 0;
        while (v[lead].is_zero()) ++lead;
        if (v[lead] != F.one()) continue;
        bool stable = true;
        for (size_t a = 0; a < out.rep.matrices.size() && stable; ++a) {
            auto w = out.rep.matrices[a] * v;
            std::vector<std::vector<FqElem>> pair{v, w};
            stable = rank_of(pair, d, F.zero()) == 1;
        }
        if (stable) out.stable_lines.push_back(v);
    }
    return out;
}

// ---------------------------------------------------------------------------
// The forms (z - z^q)^{-1}
// ---------------------------------------------------------------------------

struct BFormsCheck {
    long q = 2;
    bool sl2_invariant = false;         ///< (z - z^q)^{-1} fixed by SL_2(F_q) in weight q+1
    bool gl2_det_inverse = false;       ///< and scaled by det^{-1} under GL_2(F_q)
    bool in_component_space = false;   ///< lies in the sections of weight q+1 on a component
    bool involution_swaps_parity = false;  ///< [[0,1],[p,0]] flips vertex parity on a radius-2 truncation
    bool involution_square_fixes = false;
    bool pass() const {
        return sl2_invariant && gl2_det_inverse && in_component_space && involution_swaps_parity && involution_square_fixes;
    }
};

inline BFormsCheck b_forms_check(long q) {
    const FqField& F = FqField::get(q);
    BFormsCheck c;
    c.q = q;
    FqRational f = (FqRational::z(F) - FqRational::z(F).pow(q)).pow(-1);
    c.sl2_invariant = true;
    for (const auto& g : sl2_elements(F)) c.sl2_invariant = c.sl2_invariant && weight_action_p1(f, g, q + 1) == f;
    c.gl2_det_inverse = true;
    for (const auto& g : gl2_elements(F))
        c.gl2_det_inverse = c.gl2_det_inverse && weight_action_p1(f, g, q + 1) == f.scaled(g.det().inverse());
    c.in_component_space = in_riemann_roch(f, component_divisor(q + 1, F));
    // The tree is built over Q_p with p the characteristic; parity flips only depend on v(det) = 1.
    const long p = F.characteristic();
    TruncatedTree T(p, 2);
    GroupElement w{0, 1, Rational(p), 0};
    c.involution_swaps_parity = c.involution_square_fixes = true;
    for (const auto& v : T.vertices()) {
        Vertex wv = act_on_vertex(w, v, p);
        c.involution_swaps_parity = c.involution_swaps_parity && parity(wv) == -parity(v);
        c.involution_square_fixes = c.involution_square_fixes && act_on_vertex(w, wv, p) == v;
    }
    return c;
}

// ---------------------------------------------------------------------------
// Global sections over a truncation
// ---------------------------------------------------------------------------

struct GlobalSections {
    long q = 2, k = 0, radius = 0;
    long vertices = 0, edges = 0;
    long local_h0 = 0;
    long closed_form = 0;
    std::optional<long> assembled;          ///< direct gluing computation (q prime)
    std::optional<long> node_evaluation_rank;  ///< rank of the values at the nodes (even k)
    bool pass() const { return !assembled || *assembled == closed_form; }
};

/** @brief |V| max(0, deg+1) for odd k; |V|(deg+1) - |E| for even k >= 0 (0 when deg < 0). */
inline long global_sections_closed_form(long q, long k, long V, long E) {
    long deg = component_degree_closed_form(q, k);
    if (deg < 0) return 0;
    return (k % 2 != 0) ? V * (deg + 1) : V * (deg + 1) - E;
}

/**
 * @brief Dimension of the sections of O(k) over the components in a ball of the tree.
 *
 * For odd k the components do not interact.  For even k the local sections
 * phi_v (coordinate w_v, parent at infinity, child c at w_v = c) must agree
 * at each node: lim_{w->inf} w^{k/2} phi_child = lim_{w->c} (w-c)^{k/2} phi_parent.
 */
inline GlobalSections global_sections_truncated(long q, long k, long radius) {
    if (!is_prime_power(q)) throw InvalidParameters("q must be a prime power");
    if (radius < 0 || radius > 8) throw InvalidParameters("radius must lie in [0, 8]");
    GlobalSections out;
    out.q = q;
    out.k = k;
    out.radius = radius;
    out.vertices = TruncatedTree::predicted_vertex_count(q, radius);
    out.edges = out.vertices - 1;
    const FqField& F = FqField::get(q);
    auto basis = riemann_roch_basis(component_divisor(k, F), F);
    out.local_h0 = static_cast<long>(basis.size());
    out.closed_form = global_sections_closed_form(q, k, out.vertices, out.edges);
    if (!is_prime(q)) return out;

    TruncatedTree T(q, radius);
    const long V = static_cast<long>(T.vertices().size()), d = out.local_h0;
    if (k % 2 != 0 || d == 0) {
        out.assembled = V * d;
        return out;
    }
    const long half = k / 2;
    auto at_infinity = [&](const FqRational& phi) {
        // w^{half} phi at infinity: non-zero only when deg num - deg den = -half.
        if (phi.is_zero() || phi.numerator().degree() - phi.denominator().degree() != -half) return F.zero();
        return phi.numerator().lead() / phi.denominator().lead();
    };
    auto at_point = [&](const FqRational& phi, const FqElem& c) {
        FqRational g = phi * FqRational::from_poly(FqPoly::linear(c).pow(static_cast<unsigned>(half)));
        return g.eval(c);
    };
    const size_t nE = T.edges().size();
    Matrix<FqElem> M(nE, V * d, F.zero());
    for (size_t e = 0; e < nE; ++e) {
        const Edge& E = T.edges()[e];
        size_t ip = *T.index_of(E.parent), ic = *T.index_of(E.child);
        Rational shift = (E.child.offset - E.parent.offset) * p_power(q, E.parent.level);
        FqElem c = reduce_rational(shift, F);
        for (long j = 0; j < d; ++j) {
            M(e, ic * d + j) = at_infinity(basis[j]);
            M(e, ip * d + j) = M(e, ip * d + j) - at_point(basis[j], c);
        }
    }
    auto ker = M.kernel();
    out.assembled = static_cast<long>(ker.size());
    // Values at the nodes of the glued sections.
    std::vector<std::vector<FqElem>> values;
    for (const auto& x : ker) {
        std::vector<FqElem> val;
        for (size_t e = 0; e < nE; ++e) {
            size_t ic = *T.index_of(T.edges()[e].child);
            FqElem s = F.zero();
            for (long j = 0; j < d; ++j) s = s + x[ic * d + j] * at_infinity(basis[j]);
            val.push_back(s);
        }
        values.push_back(val);
    }
    out.node_evaluation_rank = static_cast<long>(rank_of(values, nE, F.zero()));
    return out;
}

// ---------------------------------------------------------------------------
// The bundle on the even-valuation subgroup
// ---------------------------------------------------------------------------

inline long floor_half(long x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); }

/** @brief Valuations (floor(kn/2), floor(k(n+1)/2)) of the generators on the edge {(n,0),(n+1,0)}. */
inline std::pair<long, long> geven_lattice_profile(long k, long n) {
    return {floor_half(k * n), floor_half(k * (n + 1))};
}

/** @brief f lies in the line bundle pi^{floor(k m / 2)} O at the vertex (m, b). */
inline bool geven_membership(const RationalFunction& f, long k, const Vertex& v) {
    return !(gauss_valuation(f, v) < Valuation(floor_half(k * v.level)));
}

/** @brief Weight-k action of an element with even v(det), where chi^k(g) = p^{k v(det)/2} lies in Q. */
inline RationalFunction geven_act(const GroupElement& g, const RationalFunction& f, long k) {
    const long p = f.prime();
    if (val_p(g.det(), p) % 2 != 0) throw InvalidParameters("element does not lie in the even-valuation subgroup");
    return automorphic_act(g, f, k);
}

}  // namespace drinfeld

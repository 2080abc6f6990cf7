#pragma once
/**
 * @file lattices.hpp
 * @brief Vertex and edge lattices in the dual of Sym^k[1] x chi^{-k-2},
 *        their mod-pihat local spaces D, E and the local harmonic spaces,
 *        and membership of sections in the integral line bundle O(k).
 *
 * Relative positions of two lattices are computed by an elementary-divisor
 * (Smith) decomposition over the discrete valuation ring O of Q_p(pihat).
 */

#include <string>
#include <vector>

#include "symrep.hpp"

namespace drinfeld {

/**
 * @brief M = U diag(pihat^{exps}) V with U, V in GL_n(O).
 */
struct DvrSmith {
    std::vector<Valuation> exps;
    Matrix<KHat> U;
};

/** @brief Elementary divisors of an invertible matrix over O (pivoting on minimal valuation). */
inline DvrSmith smith_dvr(const Matrix<KHat>& M) {
    const size_t n = M.rows();
    const long p = M.zero().prime();
    Matrix<KHat> A = M, P = Matrix<KHat>::identity(n, KHat(p));
    DvrSmith out{{}, Matrix<KHat>(n, n, KHat(p))};
    for (size_t t = 0; t < n; ++t) {
        size_t bi = n, bj = n;
        Valuation best = Valuation::infinity();
        for (size_t i = t; i < n; ++i)
            for (size_t j = t; j < n; ++j)
                if (!A(i, j).is_zero() && (bi == n || A(i, j).valuation() < best)) {
                    best = A(i, j).valuation();
                    bi = i, bj = j;
                }
        if (bi == n) throw SingularMatrix("lattice transition matrix is singular");
        for (size_t j = 0; j < n; ++j) {
            std::swap(A(t, j), A(bi, j));
            std::swap(P(t, j), P(bi, j));
        }
        for (size_t i = 0; i < n; ++i) std::swap(A(i, t), A(i, bj));
        const KHat piv = A(t, t);
        for (size_t i = t + 1; i < n; ++i) {
            if (A(i, t).is_zero()) continue;
            KHat f = A(i, t) / piv;  // integral by minimality of the pivot
            for (size_t j = 0; j < n; ++j) {
                A(i, j) -= f * A(t, j);
                P(i, j) -= f * P(t, j);
            }
        }
        for (size_t j = t + 1; j < n; ++j) {
            if (A(t, j).is_zero()) continue;
            KHat f = A(t, j) / piv;
            for (size_t i = 0; i < n; ++i) A(i, j) -= f * A(i, t);
        }
        out.exps.push_back(best);
    }
    out.U = P.inverse();
    return out;
}

/** @brief True when every entry has non-negative valuation. */
inline bool is_integral(const std::vector<KHat>& v) {
    for (const auto& x : v)
        if (x.valuation() < Valuation(0)) return false;
    return true;
}

/**
 * @brief The lattice L_Z = gamma.(sum_j O h_j) for a transporter gamma with gamma.(0,0) = Z.
 *        The basis matrix has the images gamma.h_j as columns.
 */
struct VertexLattice {
    Vertex vertex;
    int k = 0;
    long p = 2;
    Matrix<KHat> basis;

    bool contains(const DualVector& h) const { return is_integral(basis.inverse() * h.coords); }
    /** @brief Coordinates of h in this lattice's basis. */
    std::vector<KHat> coordinates(const DualVector& h) const { return basis.inverse() * h.coords; }
};

inline VertexLattice vertex_lattice(const Vertex& v, int k, long p, const GroupElement& transporter) {
    if (k < 0) throw InvalidParameters("weight k must be non-negative");
    if (act_on_vertex(transporter, {0, 0}, p) != v) throw InvalidParameters("transporter does not reach " + v.str());
    return {v, k, p, dual_matrix(transporter, k, p)};
}
inline VertexLattice vertex_lattice(const Vertex& v, int k, long p) {
    return vertex_lattice(v, k, p, representative(v, p));
}

/** @brief Position of L2 relative to L1: L2 = sum pihat^{e_i} u_i with (u_i) an O-basis of L1. */
struct RelativePosition {
    std::vector<Valuation> exps;
    Matrix<KHat> U;  ///< columns: coordinates of u_i in the basis of L1
};

inline RelativePosition relative_position(const VertexLattice& L1, const VertexLattice& L2) {
    DvrSmith s = smith_dvr(L1.basis.inverse() * L2.basis);
    return {s.exps, s.U};
}

/** @brief Valuations of the basis vectors when the lattice is diagonal in the h_j basis. */
inline std::optional<std::vector<Valuation>> diagonal_profile(const VertexLattice& L) {
    const size_t n = L.basis.rows();
    std::vector<Valuation> out;
    for (size_t j = 0; j < n; ++j) {
        for (size_t i = 0; i < n; ++i)
            if (i != j && !L.basis(i, j).is_zero()) return std::nullopt;
        out.push_back(L.basis(j, j).valuation());
    }
    return out;
}

/** @brief Intersection of the two vertex lattices of an edge. */
struct EdgeLattice {
    Edge edge;
    int k = 0;
    long p = 2;
    Matrix<KHat> basis;              ///< columns span L_Z1 cap L_Z2
    std::vector<Valuation> profile;  ///< max(0, e_i), sorted, relative to L_{parent}

    bool contains(const DualVector& h) const { return is_integral(basis.inverse() * h.coords); }
};

inline EdgeLattice edge_lattice(const Edge& e, int k, long p) {
    VertexLattice L1 = vertex_lattice(e.parent, k, p), L2 = vertex_lattice(e.child, k, p);
    RelativePosition rel = relative_position(L1, L2);
    const size_t n = k + 1;
    Matrix<KHat> scale(n, n, KHat(p));
    std::vector<Valuation> prof;
    for (size_t i = 0; i < n; ++i) {
        Valuation e_i = max(rel.exps[i], Valuation(0));
        scale(i, i) = KHat::pihat_power(p, e_i.twice());
        prof.push_back(e_i);
    }
    std::sort(prof.begin(), prof.end());
    return {e, k, p, L1.basis * rel.U * scale, prof};
}

/** @brief Reduction mod pihat of an integral vector into F_p^n. */
inline std::vector<FqElem> reduce_vector(const std::vector<KHat>& v, const FqField& F) {
    std::vector<FqElem> out;
    for (const auto& x : v) out.push_back(reduce_mod_pihat(x, F));
    return out;
}

/**
 * @brief Basis of D^Z_{Z,Z'}, the image of L_Z cap L_Z' in L_Z / pihat L_Z,
 *        in coordinates of the basis of L_Z.
 */
inline std::vector<std::vector<FqElem>> d_space(const Vertex& Z, const Vertex& Zp, int k, long p) {
    const FqField& F = FqField::get(p);
    RelativePosition rel = relative_position(vertex_lattice(Z, k, p), vertex_lattice(Zp, k, p));
    std::vector<std::vector<FqElem>> basis;
    for (size_t i = 0; i < rel.exps.size(); ++i)
        if (!(Valuation(0) < rel.exps[i])) basis.push_back(reduce_vector(rel.U.column(i), F));
    return basis;
}

/** @brief dim E_{Z1,Z2} = dim of the image of L_Z1 cap L_Z2 in (L_Z1 + L_Z2)/pihat. */
inline int e_dimension(const Edge& e, int k, long p) {
    RelativePosition rel = relative_position(vertex_lattice(e.parent, k, p), vertex_lattice(e.child, k, p));
    int d = 0;
    for (const auto& x : rel.exps) d += (x == Valuation(0));
    return d;
}

/** @brief Kernel of the signed sum map prod_{Z' ~ Z} D^Z_{Z,Z'} -> L_Z/pihat. */
struct LocalHarmonic {
    Vertex vertex;
    int k = 0;
    long p = 2;
    std::vector<int> d_dims;                       ///< dim D for each neighbour (parent first)
    std::vector<std::vector<FqElem>> kernel;       ///< coordinates on the concatenated D bases
    size_t sum_map_rank = 0;                       ///< rank of the sum map (k+1 when surjective)
};

inline LocalHarmonic local_harmonic(const Vertex& Z, int k, long p) {
    const FqField& F = FqField::get(p);
    LocalHarmonic out{Z, k, p, {}, {}, 0};
    std::vector<std::vector<FqElem>> cols;
    FqElem sign = F.integer(parity(Z));
    for (const auto& W : neighbors(Z, p)) {
        auto D = d_space(Z, W, k, p);
        out.d_dims.push_back(static_cast<int>(D.size()));
        for (auto& v : D) {
            for (auto& x : v) x = x * sign;
            cols.push_back(std::move(v));
        }
    }
    Matrix<FqElem> M = Matrix<FqElem>::from_columns(cols, k + 1, F.zero());
    out.kernel = M.kernel();
    out.sum_map_rank = M.rank();
    return out;
}

/** @brief Dimensions of the local spaces at an edge and its parent vertex, with closed forms. */
struct LocalSpaces {
    long q = 2;
    int k = 0;
    int dimD = 0, dimE = 0, dimZhar = 0;
    int predictedD = 0, predictedE = 0, predictedZhar = 0;
    bool sum_map_surjective = false;
    bool pass() const {
        return dimD == predictedD && dimE == predictedE && dimZhar == predictedZhar && sum_map_surjective;
    }
};

inline int predicted_dim_d(int k) { return k / 2 + 1; }
inline int predicted_dim_e(int k) { return k % 2 == 0 ? 1 : 0; }
inline int predicted_dim_zhar(int k, long q) {
    return k % 2 == 0 ? static_cast<int>((q - 1) * (k + 2) / 2 + 1) : static_cast<int>((q - 1) * (k + 1) / 2);
}

/** @brief Local spaces for the edge e (D seen from its parent end) and the parent's harmonic space. */
inline LocalSpaces local_spaces(const Edge& e, int k, long q) {
    if (!is_prime(q)) throw InvalidParameters("local spaces are computed over Q_p, so q must be prime");
    if (k < 0) throw InvalidParameters("weight k must be non-negative");
    LocalSpaces s;
    s.q = q;
    s.k = k;
    s.dimD = static_cast<int>(d_space(e.parent, e.child, k, q).size());
    s.dimE = e_dimension(e, k, q);
    LocalHarmonic h = local_harmonic(e.parent, k, q);
    s.dimZhar = static_cast<int>(h.kernel.size());
    s.sum_map_surjective = h.sum_map_rank == static_cast<size_t>(k + 1);
    s.predictedD = predicted_dim_d(k);
    s.predictedE = predicted_dim_e(k);
    s.predictedZhar = predicted_dim_zhar(k, q);
    return s;
}

// ---------------------------------------------------------------------------
// Sections of O(k)
// ---------------------------------------------------------------------------

/** @brief Outcome of a membership test with the valuations that decided it. */
struct MembershipCertificate {
    bool member = false;
    Valuation transported;  ///< Gauss valuation at (0,0) of f|_{gamma_v^{-1}}
    Valuation raw;          ///< Gauss valuation of f at v
    Valuation raw_bound;    ///< k * level / 2
};

/**
 * @brief f lies in O(k) on the tube of vertex v: after transport to (0,0) by
 *        the weight-k action it is integral there.
 */
inline MembershipCertificate section_membership(const RationalFunction& f, long k, const Vertex& v) {
    long p = f.prime();
    RationalFunction h = automorphic_act(representative(v, p).inverse(), f, k);
    MembershipCertificate c;
    c.transported = gauss_valuation(h, Vertex{0, 0});
    c.raw = gauss_valuation(f, v);
    c.raw_bound = Valuation::halves(k * v.level);
    c.member = !(c.transported < Valuation(0));
    return c;
}

/**
 * @brief The identity 2 w((a + c z)^{-k}) + k w(det g) = k (n' - n) behind the
 *        equivariance of O(k), for g mapping (n,0) to (n',0).  The valuation of
 *        a + cz is taken at the Gauss point of the tube of (n',0), where it is
 *        attained by every point of the tube outside the residue discs of
 *        the neighbouring components.
 */
struct ValuationIdentity {
    long n = 0, n_image = 0, k = 0;
    Valuation lhs;
    long rhs = 0;
    bool pass() const { return lhs == Valuation(rhs); }
};

inline ValuationIdentity valuation_identity(const GroupElement& g, long n, long k, long p) {
    require_invertible(g);
    Vertex image = act_on_vertex(g, {n, 0}, p);
    if (sgn(image.offset) != 0) throw InvalidParameters("g does not map (n,0) to a vertex (n',0)");
    Poly<KHat> lin(std::vector<KHat>{to_khat(g.a, p), to_khat(g.c, p)}, KHat(p));
    Valuation w = gauss_on_disc(lin, KHat(p), -image.level);
    ValuationIdentity out;
    out.n = n;
    out.n_image = image.level;
    out.k = k;
    out.lhs = Valuation::halves(-2 * k * w.twice()) + Valuation(k * val_p(g.det(), p));
    out.rhs = k * (image.level - n);
    return out;
}

/** @brief Membership in O(k) on the tube of an edge, by the coefficient criterion. */
struct EdgeMembershipCertificate {
    bool member = false;
    Valuation nonnegative_part;  ///< inf_{j >= 0} v(b_j)
    Valuation negative_part;     ///< inf_{j < 0} v(b_j) + j
    Valuation required_negative; ///< 0 for even k, -1/2 for odd k
};

/**
 * @brief After transport to the standard edge (weight k), write b = f z^{floor(k/2)} = sum b_j z^j.
 *        Even k: generator z^{-k/2}, so v(b_j) >= max(0, -j).
 *        Odd k: generators z^{-(k-1)/2} and pihat z^{-(k+1)/2}, so v(b_j) >= 0 for j >= 0
 *        and v(b_j) >= -j - 1/2 for j < 0.
 */
inline EdgeMembershipCertificate edge_membership(const RationalFunction& f, long k, const Edge& e) {
    long p = f.prime();
    RationalFunction h = automorphic_act(edge_transporter(e, p).inverse(), f, k);
    RationalFunction b = h * RationalFunction::z_power(k >= 0 ? k / 2 : -((-k + 1) / 2), p);
    LaurentWindow w = laurent_standard(b, 0, -1);
    EdgeMembershipCertificate c;
    c.nonnegative_part = w.upper_tail[0];
    c.negative_part = w.lower_tail[1];
    c.required_negative = Valuation::halves((k % 2 == 0) ? 0 : -1);
    c.member = !(c.nonnegative_part < Valuation(0)) && !(c.negative_part < c.required_negative);
    return c;
}

/** @brief A monomial pihat^{pihat_exp} z^{z_exp} on the standard edge. */
struct EdgeMonomial {
    long pihat_exp;
    long z_exp;
};

/** @brief Local generators of O(k) on the standard edge. */
inline std::vector<EdgeMonomial> edge_generators(long k) {
    long fl = k >= 0 ? k / 2 : -((-k + 1) / 2);
    if (k % 2 == 0) return {{0, -fl}};
    return {{0, -fl}, {1, -fl - 1}};
}

/** @brief pihat^a z^j is integral on the standard edge tube: a/2 >= max(-j, 0). */
inline bool edge_monomial_integral(long a, long j) { return a >= 2 * std::max(-j, 0L); }

/** @brief Does the multiplication O(k1) x O(k2) -> O(k1+k2) hit the generators on the standard edge? */
struct ProductMapCheck {
    bool surjective = false;
    size_t source_rank = 0;  ///< rank of the fibre of O(k1) (x) O(k2) at the singular point
    size_t target_rank = 0;  ///< rank of the fibre of O(k1+k2)
};

inline ProductMapCheck product_map_check(long k1, long k2) {
    auto g1 = edge_generators(k1), g2 = edge_generators(k2), gt = edge_generators(k1 + k2);
    ProductMapCheck c;
    c.source_rank = g1.size() * g2.size();
    c.target_rank = gt.size();
    c.surjective = true;
    for (const auto& t : gt) {
        bool hit = false;
        for (const auto& a : g1)
            for (const auto& b : g2)
                hit = hit || edge_monomial_integral(t.pihat_exp - a.pihat_exp - b.pihat_exp, t.z_exp - a.z_exp - b.z_exp);
        c.surjective = c.surjective && hit;
    }
    return c;
}

}  // namespace drinfeld

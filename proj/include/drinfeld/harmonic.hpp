#pragma once
/**
 * @file harmonic.hpp
 * @brief Cochains on a truncated tree with values in the dual of
 *        Sym^k[1] x chi^{-k-2}, the harmonicity operator Delta, kernels of
 *        Delta over Q(pihat) and modulo pihat, and the residue map from
 *        rational weight-(k+2) sections to cochains.
 */

#include <memory>
#include <string>
#include <vector>

#include "lattices.hpp"

namespace drinfeld {

/** @brief One dual vector per (unordered) edge of a truncated tree. */
struct Cochain {
    int k = 0;
    std::shared_ptr<const TruncatedTree> tree;
    std::vector<DualVector> values;  ///< indexed like tree->edges()

    static Cochain zero(int k, std::shared_ptr<const TruncatedTree> tree) {
        Cochain c{k, tree, {}};
        c.values.assign(tree->edges().size(), DualVector::zero(k, tree->prime()));
        return c;
    }
    bool is_zero() const {
        for (const auto& v : values)
            if (!v.is_zero()) return false;
        return true;
    }
    friend Cochain operator+(const Cochain& x, const Cochain& y) {
        Cochain r = x;
        for (size_t i = 0; i < r.values.size(); ++i) r.values[i] = r.values[i] + y.values[i];
        return r;
    }
    Cochain scaled(const KHat& c) const {
        Cochain r = *this;
        for (auto& v : r.values) v = v.scaled(c);
        return r;
    }
};

/** @brief Delta(f)(Z) = sg(Z) sum_{Z' ~ Z} f({Z, Z'}) at every interior vertex (indexed like interior_vertices()). */
inline std::vector<DualVector> delta(const Cochain& f) {
    const auto& T = *f.tree;
    std::vector<DualVector> out;
    for (size_t i : T.interior_vertices()) {
        DualVector s = DualVector::zero(f.k, T.prime());
        for (size_t e : T.incident_edges(i)) s = s + f.values[e];
        out.push_back(s.scaled(KHat(T.prime(), parity(T.vertices()[i]))));
    }
    return out;
}

/** @brief How the boundary of a truncation is treated when computing harmonic cochains. */
enum class HarmonicMode {
    OverKHat,                  ///< values in Q(pihat)^{k+1}, Delta = 0 at interior vertices
    ModPihatFreeBoundary,      ///< values in L_e / pihat on every edge, reduced Delta = 0 at interior vertices
    ModPihatLatticeBoundary,   ///< boundary edges only carry their image D^Z in L_Z / pihat at the interior end
};

inline std::string to_string(HarmonicMode m) {
    switch (m) {
        case HarmonicMode::OverKHat: return "khat";
        case HarmonicMode::ModPihatFreeBoundary: return "free";
        case HarmonicMode::ModPihatLatticeBoundary: return "lattice";
    }
    return "?";
}

struct HarmonicKernel {
    HarmonicMode mode = HarmonicMode::OverKHat;
    size_t dimension = 0;
    long predicted = 0;
    std::vector<Cochain> basis;  ///< filled for OverKHat only
    bool beta_injective = true;  ///< L_e/pihat -> L_Z1/pihat + L_Z2/pihat injective on every edge
    bool pass() const { return static_cast<long>(dimension) == predicted && beta_injective; }
};

/** @brief Reduction of the edge lattice basis into L_Z / pihat for an endpoint Z. */
inline Matrix<FqElem> edge_to_vertex_reduction(const EdgeLattice& Le, const Vertex& Z, int k, long p) {
    const FqField& F = FqField::get(p);
    Matrix<KHat> coords = vertex_lattice(Z, k, p).basis.inverse() * Le.basis;
    Matrix<FqElem> R(k + 1, k + 1, F.zero());
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= k; ++j) R(i, j) = reduce_mod_pihat(coords(i, j), F);
    return R;
}

inline HarmonicKernel harmonic_kernel(std::shared_ptr<const TruncatedTree> tree, int k, HarmonicMode mode) {
    if (k < 0) throw InvalidParameters("weight k must be non-negative");
    const auto& T = *tree;
    const long p = T.prime();
    const auto interior = T.interior_vertices();
    const size_t nE = T.edges().size(), nI = interior.size(), n = k + 1;
    HarmonicKernel out;
    out.mode = mode;

    if (mode == HarmonicMode::OverKHat) {
        // The coordinates decouple: the kernel is ker(incidence) (x) Q(pihat)^{k+1}.
        Matrix<Rational> M(nI, nE, Rational(0));
        for (size_t r = 0; r < nI; ++r)
            for (size_t e : T.incident_edges(interior[r])) M(r, e) = parity(T.vertices()[interior[r]]);
        auto ker = M.kernel();
        for (const auto& v : ker)
            for (int j = 0; j <= k; ++j) {
                Cochain c = Cochain::zero(k, tree);
                for (size_t e = 0; e < nE; ++e) c.values[e].coords[j] = KHat(p, v[e]);
                out.basis.push_back(std::move(c));
            }
        out.dimension = out.basis.size();
        out.predicted = static_cast<long>((nE - nI) * n);
        return out;
    }

    const FqField& F = FqField::get(p);
    std::vector<int> interior_row(T.vertices().size(), -1);
    for (size_t r = 0; r < nI; ++r) interior_row[interior[r]] = static_cast<int>(r);

    // Column blocks: one per edge, each a list of vectors in L_Z / pihat for the interior ends.
    struct Block {
        size_t edge;
        std::vector<std::pair<size_t, Matrix<FqElem>>> images;  // (vertex index, matrix of the block's columns)
        size_t width;
    };
    std::vector<Block> blocks;
    for (size_t e = 0; e < nE; ++e) {
        EdgeLattice Le = edge_lattice(T.edges()[e], k, p);
        auto [u, w] = T.edge_ends(e);
        Matrix<FqElem> Ru = edge_to_vertex_reduction(Le, T.vertices()[u], k, p);
        Matrix<FqElem> Rw = edge_to_vertex_reduction(Le, T.vertices()[w], k, p);
        Matrix<FqElem> stacked(2 * n, n, F.zero());
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) stacked(i, j) = Ru(i, j), stacked(n + i, j) = Rw(i, j);
        out.beta_injective = out.beta_injective && stacked.rank() == n;

        bool iu = T.is_interior(u), iw = T.is_interior(w);
        Block b{e, {}, n};
        if (mode == HarmonicMode::ModPihatLatticeBoundary && (iu != iw)) {
            // Only the image D^Z in the interior end is retained.
            size_t Z = iu ? u : w;
            const Matrix<FqElem>& R = iu ? Ru : Rw;
            Matrix<FqElem> echelon = R.transpose();
            auto piv = echelon.rref();
            Matrix<FqElem> D(n, piv.size(), F.zero());
            for (size_t c = 0; c < piv.size(); ++c)
                for (size_t i = 0; i < n; ++i) D(i, c) = echelon(c, i);
            b.width = piv.size();
            b.images.push_back({Z, D});
        } else {
            if (iu) b.images.push_back({u, Ru});
            if (iw) b.images.push_back({w, Rw});
        }
        blocks.push_back(std::move(b));
    }

    size_t cols = 0;
    for (const auto& b : blocks) cols += b.width;
    Matrix<FqElem> M(nI * n, cols, F.zero());
    size_t c0 = 0;
    for (const auto& b : blocks) {
        for (const auto& [Z, R] : b.images) {
            size_t r0 = interior_row[Z] * n;
            FqElem sg = F.integer(parity(T.vertices()[Z]));
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < b.width; ++j) M(r0 + i, c0 + j) = R(i, j) * sg;
        }
        c0 += b.width;
    }
    out.dimension = cols - M.rank();
    if (mode == HarmonicMode::ModPihatFreeBoundary) {
        out.predicted = static_cast<long>((nE - nI) * n);
    } else {
        long ii_edges = 0;
        for (size_t e = 0; e < nE; ++e)
            ii_edges += T.is_interior(T.edge_ends(e).first) && T.is_interior(T.edge_ends(e).second);
        out.predicted = static_cast<long>(nI) * predicted_dim_zhar(k, p) - ii_edges * predicted_dim_e(k);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Residues
// ---------------------------------------------------------------------------

/**
 * @brief Residue of g on edge e using a transporter t with t.(standard edge) = e.
 *
 * With gamma = t^{-1}, expand g|_gamma (weight k+2) as sum a_j z^j on the
 * standard annulus and write gamma.(X^i Y^{k-i}) = sum_s c_s X^s Y^{k-s} in
 * Sym^k[1] x chi^{-k-2}.  The i-th coordinate is
 *     (-1)^{v(det gamma)} sum_s a_{-s-1} c_s.
 * The orientation sign makes the value independent of the transporter
 * (the edge flip reverses the orientation of the annulus).
 */
inline DualVector res0_on_edge(const RationalFunction& g, int k, const GroupElement& transporter) {
    const long p = g.prime();
    GroupElement gamma = transporter.inverse();
    LaurentWindow w = laurent_standard(automorphic_act(gamma, g, k + 2), -k - 1, -1);
    Matrix<KHat> C = sym_matrix(gamma, k, 1, -k - 2, p);
    KHat sign(p, (val_p(gamma.det(), p) % 2 == 0) ? 1 : -1);
    DualVector h = DualVector::zero(k, p);
    for (int i = 0; i <= k; ++i) {
        KHat s(p);
        for (int t = 0; t <= k; ++t) s += w.coefficient(-t - 1) * C(t, i);
        h.coords[i] = s * sign;
    }
    return h;
}

/**
 * @brief Action of g on a value of an (unoriented) cochain: the dual action
 *        times the orientation character (-1)^{v(det g)}.  Elements with odd
 *        v(det g) swap the even and odd vertices, hence reverse the
 *        orientation that the residue sign refers to; with this action
 *        Res0(g.f)_e = g.(Res0(f)_{g^{-1} e}).
 */
inline DualVector cochain_value_act(const GroupElement& g, const DualVector& h, long p) {
    DualVector r = dual_act(g, h, p);
    return val_p(g.det(), p) % 2 == 0 ? r : r.scaled(KHat(p, -1));
}

/** @brief Stabilisers of the standard edge used to audit transporter independence. */
inline std::vector<GroupElement> standard_edge_stabilizers(long p) {
    return {edge_flip(p), {1, 0, Rational(p), 1}, {2 * p + 1, Rational(p), 1, 1}};
}

/**
 * @brief The residue cochain of g on every edge of the tree.
 * @param audit recompute each edge with alternative transporters and throw
 *        InvariantViolation on any disagreement.
 */
inline Cochain res0(const RationalFunction& g, int k, std::shared_ptr<const TruncatedTree> tree, bool audit = false) {
    if (k < 0) throw InvalidParameters("weight k must be non-negative");
    const long p = tree->prime();
    Cochain c = Cochain::zero(k, tree);
    for (size_t e = 0; e < tree->edges().size(); ++e) {
        GroupElement t = edge_transporter(tree->edges()[e], p);
        c.values[e] = res0_on_edge(g, k, t);
        if (audit)
            for (const auto& s : standard_edge_stabilizers(p))
                if (!(res0_on_edge(g, k, t * s) == c.values[e]))
                    throw InvariantViolation("residue depends on the transporter at edge " + tree->edges()[e].str());
    }
    return c;
}

/** @brief Per-edge integrality of the residue cochain. */
struct ResidueIntegrality {
    struct EdgeEntry {
        size_t edge;
        bool precondition;  ///< g lies in O(k+2) at both endpoints
        bool in_lattice;    ///< the residue lies in L_Z1 cap L_Z2
    };
    std::vector<EdgeEntry> edges;
    bool all_integral() const {
        for (const auto& e : edges)
            if (!e.in_lattice) return false;
        return true;
    }
    /** @brief Integrality holds wherever the membership hypothesis holds. */
    bool pass() const {
        for (const auto& e : edges)
            if (e.precondition && !e.in_lattice) return false;
        return true;
    }
};

inline ResidueIntegrality res0_integrality(const RationalFunction& g, int k, std::shared_ptr<const TruncatedTree> tree) {
    const long p = tree->prime();
    Cochain c = res0(g, k, tree);
    ResidueIntegrality out;
    for (size_t e = 0; e < tree->edges().size(); ++e) {
        const Edge& E = tree->edges()[e];
        bool pre = section_membership(g, k + 2, E.parent).member && section_membership(g, k + 2, E.child).member;
        bool in = vertex_lattice(E.parent, k, p).contains(c.values[e]) && vertex_lattice(E.child, k, p).contains(c.values[e]);
        out.edges.push_back({e, pre, in});
    }
    return out;
}

}  // namespace drinfeld

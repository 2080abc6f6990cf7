#include <gtest/gtest.h>

#include <random>

#include "drinfeld/lattices.hpp"
#include "drinfeld/modp.hpp"
#include "drinfeld/random.hpp"

using namespace drinfeld;

namespace {

FqRational b_form(const FqField& F) { return (FqRational::z(F) - FqRational::z(F).pow(F.order())).pow(-1); }

/** @brief Polynomial with coefficients given by the base-q digits of code (degree < len). */
FqPoly poly_from_code(const FqField& F, long code, long len) {
    std::vector<FqElem> c;
    for (long i = 0; i < len; ++i, code /= F.order()) c.push_back(F.elem(code % F.order()));
    return FqPoly(c, F.zero());
}

/** @brief Number of elements of L(D), counted by enumerating every numerator over the allowed denominator. */
long brute_force_size(const P1Divisor& D, const FqField& F) {
    FqPoly den = FqPoly::constant(F.one());
    long den_deg = 0;
    for (const auto& [b, m] : D.at_points)
        if (m > 0) {
            den *= FqPoly::linear(F.elem(b)).pow(static_cast<unsigned>(m));
            den_deg += m;
        }
    long len = den_deg + D.at_infinity + 1;
    if (len <= 0) return 1;
    long total = 1;
    for (long i = 0; i < len; ++i) total *= F.order();
    long count = 0;
    for (long code = 0; code < total; ++code) {
        FqPoly N = poly_from_code(F, code, len);
        bool ok = true;
        for (const auto& [b, m] : D.at_points)
            if (m < 0 && !N.is_zero())
                ok = ok && N.divmod(FqPoly::linear(F.elem(b)).pow(static_cast<unsigned>(-m))).second.is_zero();
        if (ok) ++count;
    }
    return count;
}

bool proportional(const std::vector<FqElem>& a, const std::vector<FqElem>& b) {
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j)
            if (!(a[i] * b[j] - a[j] * b[i]).is_zero()) return false;
    return true;
}

GroupElement even_element(Sampler& S) {
    for (;;) {
        GroupElement g = S.group_element();
        if (val_p(g.det(), S.prime()) % 2 == 0) return g;
    }
}

}  // namespace

TEST(WeightAction, FixesTheBForm) {
    for (long q : {2L, 3L, 4L, 5L}) {
        const FqField& F = FqField::get(q);
        FqRational f = b_form(F);
        Mat2<FqElem> u{F.one(), F.one(), F.zero(), F.one()}, w{F.zero(), -F.one(), F.one(), F.zero()};
        Mat2<FqElem> id{F.one(), F.zero(), F.zero(), F.one()};
        EXPECT_EQ(weight_action_p1(f, u, q + 1), f);
        if (q % 2 == 1) {
            EXPECT_EQ(weight_action_p1(f, w, q + 1), f);
        }
        for (long k = -3; k <= 3; ++k) EXPECT_EQ(weight_action_p1(FqRational::z(F).pow(2), id, k), FqRational::z(F).pow(2));
        Mat2<FqElem> singular{F.one(), F.one(), F.one(), F.one()};
        EXPECT_THROW(weight_action_p1(f, singular, q + 1), SingularMatrix);
    }
}

TEST(WeightAction, IsALeftAction) {
    const FqField& F = FqField::get(3);
    auto G = gl2_elements(F);
    ASSERT_EQ(G.size(), 48u);
    FqRational f = FqRational::z(F).pow(2) + FqRational::constant(F.one());
    for (size_t i = 0; i < G.size(); i += 5)
        for (size_t j = 0; j < G.size(); j += 7)
            EXPECT_EQ(weight_action_p1(f, G[i] * G[j], 2), weight_action_p1(weight_action_p1(f, G[j], 2), G[i], 2));
}

TEST(RiemannRoch, BasisMatchesBruteForceCount) {
    std::mt19937_64 rng(4242);
    auto uni = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
    int checked = 0;
    while (checked < 50) {
        long q = uni(0, 1) ? 2 : 3;
        const FqField& F = FqField::get(q);
        P1Divisor D;
        D.at_infinity = uni(-2, 3);
        for (long b = 0; b < q; ++b)
            if (uni(0, 1)) D.at_points[static_cast<int>(b)] = uni(-2, 2);
        long pos = D.at_infinity;
        for (const auto& [b, m] : D.at_points) pos += std::max(0L, m);
        if (pos > 6) continue;
        ++checked;
        auto basis = riemann_roch_basis(D, F);
        EXPECT_EQ(static_cast<long>(basis.size()), std::max(0L, D.degree() + 1));
        EXPECT_EQ(rank_of_functions(basis, F), basis.size());
        for (const auto& f : basis) EXPECT_TRUE(in_riemann_roch(f, D));
        long size = 1;
        for (size_t i = 0; i < basis.size(); ++i) size *= q;
        EXPECT_EQ(brute_force_size(D, F), size);
    }
}

TEST(ComponentDegree, ExamplesAndClosedForm) {
    EXPECT_EQ(component_degree(3, 2).closed_form, 2);
    EXPECT_EQ(component_degree(3, 3).closed_form, 1);
    EXPECT_EQ(component_degree(2, 0).closed_form, 0);
    for (long q : {2L, 3L, 4L, 5L})
        for (long k = -6; k <= 9; ++k) EXPECT_TRUE(component_degree(q, k).pass()) << "q=" << q << " k=" << k;
}

TEST(ComponentDegree, MatchesTheLocalHarmonicSpace) {
    for (long q : {2L, 3L, 5L})
        for (int k = 0; k <= 6; ++k)
            EXPECT_EQ(local_spaces(standard_edge(), k, q).dimZhar, component_degree(q, k + 2).h0) << q << "," << k;
}

TEST(SymGeom, ExamplesAndSweep) {
    EXPECT_EQ(symgeom_params(3, 4, 0).t, 4);
    EXPECT_EQ(symgeom_params(2, 9, 0).t, 3);
    EXPECT_THROW(symgeom_params(3, 1, 0), InvalidParameters);
    EXPECT_THROW(symgeom_params(2, 4, 1), InvalidParameters);
    EXPECT_THROW(symgeom_params(6, 4, 0), InvalidParameters);
    int checked = 0;
    for (long q : {2L, 3L, 4L})
        for (long k = 0; k <= 9; ++k)
            for (long i = 0; i <= 4; ++i) {
                long t;
                try {
                    t = symgeom_params(q, k, i).t;
                } catch (const InvalidParameters&) {
                    continue;
                }
                auto c = symgeom_check(q, k, i);
                EXPECT_TRUE(c.pass()) << q << "," << k << "," << i;
                EXPECT_EQ(static_cast<long>(c.image_rank), t + 1);
                ++checked;
            }
    EXPECT_GT(checked, 20);
}

TEST(Quotient, StableLineForQTwoWeightNine) {
    auto Q = quotient_rep_and_stable_lines(2, 9, 0);
    EXPECT_TRUE(Q.pass());
    EXPECT_EQ(Q.quotient_dim, 3u);
    const FqField& F = FqField::get(2);
    FqElem o = F.one(), z = F.zero();
    // Coordinates indexed by X^r Y^{3-r}, r = 0..3.
    std::vector<FqElem> a{o, z, o, o}, b{o, o, z, o};  // X^3+Y^3+X^2Y and X^3+Y^3+XY^2
    auto ca = quotient_class(Q, a), cb = quotient_class(Q, b);
    EXPECT_EQ(ca, cb);
    bool stable = false;
    for (const auto& line : Q.stable_lines) stable = stable || proportional(line, ca);
    EXPECT_TRUE(stable);
    EXPECT_THROW(quotient_rep_and_stable_lines(3, 2, 0), InvalidParameters);
}

TEST(Quotient, RepresentationsForSmallFields) {
    for (long q : {2L, 3L})
        for (long k = 0; k <= 12; ++k) {
            SymGeomParams P;
            try {
                P = symgeom_params(q, k, 0);
            } catch (const InvalidParameters&) {
                continue;
            }
            if (P.t < q + 1) continue;
            EXPECT_TRUE(quotient_rep_and_stable_lines(q, k, 0).pass()) << q << "," << k;
        }
}

TEST(BForms, InvariantsHold) {
    for (long q : {2L, 3L, 4L, 5L}) {
        auto c = b_forms_check(q);
        EXPECT_TRUE(c.sl2_invariant);
        EXPECT_TRUE(c.gl2_det_inverse);
        EXPECT_TRUE(c.in_component_space);
        EXPECT_TRUE(c.involution_swaps_parity);
        EXPECT_TRUE(c.involution_square_fixes);
    }
}

TEST(GlobalSections, ExamplesAndAssembly) {
    EXPECT_EQ(global_sections_truncated(2, 3, 1).closed_form, 4);
    EXPECT_EQ(global_sections_truncated(2, 2, 1).closed_form, 5);
    EXPECT_EQ(global_sections_truncated(2, 1, 1).closed_form, 0);
    EXPECT_EQ(*global_sections_truncated(2, 1, 1).assembled, 0);
    for (long q : {2L, 3L})
        for (long k = 0; k <= 5; ++k)
            for (long r = 0; r <= 2; ++r) {
                auto g = global_sections_truncated(q, k, r);
                ASSERT_TRUE(g.assembled.has_value());
                EXPECT_EQ(*g.assembled, g.closed_form) << q << "," << k << "," << r;
            }
    EXPECT_FALSE(global_sections_truncated(4, 2, 1).assembled.has_value());
    EXPECT_THROW(global_sections_truncated(6, 2, 1), InvalidParameters);
    EXPECT_THROW(global_sections_truncated(2, 2, 9), InvalidParameters);
}

TEST(GEven, ProfilesAndMembership) {
    EXPECT_EQ(geven_lattice_profile(3, 1), std::make_pair(1L, 3L));
    EXPECT_EQ(geven_lattice_profile(3, 0), std::make_pair(0L, 1L));
    EXPECT_EQ(geven_lattice_profile(1, -1), std::make_pair(-1L, 0L));
    const long p = 3;
    EXPECT_TRUE(geven_membership(RationalFunction::constant(KHat(p, 1)), 2, {0, 0}));
    EXPECT_FALSE(geven_membership(RationalFunction::constant(KHat(p, 1)), 2, {1, 0}));
    EXPECT_THROW(geven_act(edge_flip(p), RationalFunction::z_power(1, p), 2), InvalidParameters);
}

TEST(GEven, ActionIsEquivariantAndRational) {
    for (long p : {2L, 3L}) {
        Sampler S(p, 2100 + p);
        for (int t = 0; t < 40; ++t) {
            long k = S.integer(-3, 4);
            GroupElement g = even_element(S);
            Vertex v = S.vertex();
            RationalFunction f = S.function(2).to_function();
            RationalFunction gf = geven_act(g, f, k);
            EXPECT_EQ(geven_membership(f, k, v), geven_membership(gf, k, act_on_vertex(g, v, p)));
            if (k % 2 == 0) {
                // chi^k(g) is a rational number, so rational functions over Q stay over Q.
                FactoredRational r(KHat(p, S.rational(-1, 1, false)), {{KHat(p, S.rational()), -1}});
                RationalFunction h = geven_act(g, r.to_function(), k);
                for (const auto& c : h.numerator().coeffs()) EXPECT_TRUE(c.in_base_field());
                for (const auto& c : h.denominator().coeffs()) EXPECT_TRUE(c.in_base_field());
            }
        }
    }
}

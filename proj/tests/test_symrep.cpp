#include <gtest/gtest.h>

#include "drinfeld/random.hpp"
#include "drinfeld/symrep.hpp"

using namespace drinfeld;

namespace {

SymElement<KHat> random_form(Sampler& S, int n, long twist) {
    SymElement<KHat> F{n, {}, twist};
    for (int i = 0; i <= n; ++i) F.coeffs.push_back(KHat(S.prime(), S.rational(), S.rational()));
    return F;
}

DualVector random_dual(Sampler& S, int k) {
    DualVector h = DualVector::zero(k, S.prime());
    for (auto& c : h.coords) c = KHat(S.prime(), S.rational(), S.rational());
    return h;
}

/** @brief Direct evaluation of sum_i c_i X^i Y^{n-i}. */
KHat evaluate(const SymElement<KHat>& F, const KHat& X, const KHat& Y) {
    KHat s(X.prime());
    for (int i = 0; i <= F.degree; ++i) s += F.coeffs[i] * X.pow(i) * Y.pow(F.degree - i);
    return s;
}

}  // namespace

TEST(SymRep, GammaMinusOneEigenvalues) {
    for (long p : {2L, 3L})
        for (int k = 0; k <= 6; ++k) {
            GroupElement g = gamma_n(-1, p);
            for (int i = 0; i <= k; ++i) {
                auto e = sym_basis<KHat>(k, i, 1, KHat(p));
                auto img = sym_act(g, e, -k - 2, p);
                SymElement<KHat> expected = e;
                expected.coeffs[i] = KHat::pihat_power(p, k - 2 * i);
                EXPECT_EQ(img, expected) << "k=" << k << " i=" << i;
                auto h = dual_act(g, DualVector::basis(k, i, p), p);
                EXPECT_EQ(h, DualVector::basis(k, i, p).scaled(KHat::pihat_power(p, 2 * i - k)));
            }
        }
}

TEST(SymRep, ActionMatchesPointwiseEvaluation) {
    Sampler S(3, 7);
    for (int t = 0; t < 20; ++t) {
        int n = static_cast<int>(S.integer(0, 4));
        long s = S.integer(-2, 2), c = S.integer(-3, 3);
        GroupElement g = S.group_element();
        auto F = random_form(S, n, s);
        auto G = sym_act(g, F, c, 3);
        KHat X(3, S.rational()), Y(3, S.rational());
        KHat factor = KHat(3, g.det()).pow(s) * chi(g, 3).pow(c);
        KHat expected = factor * evaluate(F, KHat(3, g.d) * X + KHat(3, g.b) * Y, KHat(3, g.c) * X + KHat(3, g.a) * Y);
        EXPECT_EQ(evaluate(G, X, Y), expected);
    }
}

TEST(SymRep, LeftActionOnFormsAndDuals) {
    for (long p : {2L, 5L}) {
        Sampler S(p, 17);
        for (int t = 0; t < 20; ++t) {
            int k = static_cast<int>(S.integer(0, 5));
            GroupElement g = S.group_element(), h = S.group_element();
            auto F = random_form(S, k, S.integer(-2, 2));
            long c = S.integer(-4, 4);
            EXPECT_EQ(sym_act(g * h, F, c, p), sym_act(g, sym_act(h, F, c, p), c, p));
            auto d = random_dual(S, k);
            EXPECT_EQ(dual_act(g * h, d, p), dual_act(g, dual_act(h, d, p), p));
        }
    }
}

TEST(SymRep, PairingIsInvariant) {
    Sampler S(3, 27);
    for (int t = 0; t < 20; ++t) {
        int k = static_cast<int>(S.integer(0, 5));
        GroupElement g = S.group_element();
        auto F = random_form(S, k, 1);
        auto h = random_dual(S, k);
        EXPECT_EQ(pairing(dual_act(g, h, 3), sym_act(g, F, -k - 2, 3), 3), pairing(h, F, 3));
    }
}

TEST(SymRep, DualIsomorphismIsEquivariant) {
    for (long p : {2L, 3L}) {
        Sampler S(p, 37);
        for (int t = 0; t < 20; ++t) {
            int k = static_cast<int>(S.integer(0, 6));
            GroupElement g = S.group_element();
            auto h = random_dual(S, k);
            EXPECT_EQ(dual_to_sym(dual_act(g, h, p)), sym_act(g, dual_to_sym(h), k + 2, p));
        }
    }
}

TEST(SymRep, RelabellingIsTorusEquivariantOnly) {
    Sampler S(3, 47);
    for (int t = 0; t < 20; ++t) {
        int k = static_cast<int>(S.integer(0, 6));
        GroupElement d{S.rational(-2, 2, false), 0, 0, S.rational(-2, 2, false)};
        auto h = random_dual(S, k);
        EXPECT_EQ(relabel(dual_act(d, h, 3)), sym_act(d, relabel(h), k + 2, 3));
    }
    // A unipotent element already breaks the plain relabelling for k = 1.
    GroupElement u{1, 1, 0, 1};
    auto h0 = DualVector::basis(1, 0, 3);
    EXPECT_NE(relabel(dual_act(u, h0, 3)), sym_act(u, relabel(h0), 3, 3));
    EXPECT_EQ(dual_to_sym(dual_act(u, h0, 3)), sym_act(u, dual_to_sym(h0), 3, 3));
}

TEST(SymRep, FiniteFieldActionIsALeftAction) {
    const FqField& F = FqField::get(4);
    auto els = F.elements();
    Mat2<FqElem> g{els[1], els[2], els[0], els[3]}, h{els[2], els[1], els[1], els[0]};
    SymElement<FqElem> e{3, {els[1], els[0], els[3], els[2]}, 1};
    EXPECT_EQ(sym_act(g * h, e), sym_act(g, sym_act(h, e)));
    Mat2<FqElem> singular{els[1], els[1], els[1], els[1]};
    EXPECT_THROW(sym_act(singular, e), SingularMatrix);
}

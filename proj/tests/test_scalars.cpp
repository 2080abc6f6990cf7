#include <gtest/gtest.h>

#include <random>

#include "drinfeld/linalg.hpp"
#include "drinfeld/polynomial.hpp"

using namespace drinfeld;

namespace {

/** @brief Valuation from the numerator and denominator by repeated division (independent of val_p). */
long naive_valuation(const Rational& x, long p) {
    Integer n = x.get_num(), d = x.get_den();
    long v = 0;
    while (n % p == 0) n /= p, ++v;
    while (d % p == 0) d /= p, --v;
    return v;
}

Rational random_rational(std::mt19937_64& rng, long p) {
    std::uniform_int_distribution<long> num(-200, 200), den(1, 50), ex(-3, 3);
    Rational x(num(rng), den(rng));
    x.canonicalize();
    return x * p_power(p, ex(rng));
}

}  // namespace

TEST(Valuation, ExamplesOnKHat) {
    EXPECT_EQ(KHat(2, 0, 4).valuation(), Valuation::halves(5));
    EXPECT_EQ(KHat(2, 0, 4).valuation().str(), "5/2");
    EXPECT_TRUE(KHat(2).valuation().is_infinite());
    EXPECT_EQ(KHat(2).valuation().str(), "inf");
    EXPECT_EQ(KHat(2, 1, 1).valuation(), Valuation(0));
    EXPECT_EQ(KHat::pihat(3) * KHat::pihat(3), KHat(3, 3));
}

TEST(Valuation, HalfIntegerArithmetic) {
    Valuation a = Valuation::halves(3), b = Valuation::halves(-1);
    EXPECT_EQ(a + b, Valuation(1));
    EXPECT_EQ((a - b).str(), "2");
    EXPECT_EQ(a.floor(), 1);
    EXPECT_EQ(a.ceil(), 2);
    EXPECT_EQ(b.floor(), -1);
    EXPECT_EQ(b.ceil(), 0);
    EXPECT_LT(b, a);
    EXPECT_LT(a, Valuation::infinity());
    EXPECT_EQ(min(a, b), b);
}

TEST(Valuation, AgreesWithNaiveCountOnRationals) {
    std::mt19937_64 rng(1);
    for (long p : {2L, 3L, 5L, 7L})
        for (int t = 0; t < 200; ++t) {
            Rational x = random_rational(rng, p);
            if (sgn(x) == 0) continue;
            EXPECT_EQ(val_p(x, p), naive_valuation(x, p));
        }
}

TEST(Valuation, UltrametricOnRandomKHat) {
    std::mt19937_64 rng(2);
    for (long p : {2L, 3L, 5L})
        for (int t = 0; t < 300; ++t) {
            KHat x(p, random_rational(rng, p), random_rational(rng, p));
            KHat y(p, random_rational(rng, p), random_rational(rng, p));
            if (x.is_zero() || y.is_zero()) continue;
            EXPECT_EQ((x * y).valuation(), x.valuation() + y.valuation());
            Valuation s = (x + y).valuation();
            EXPECT_GE(s, min(x.valuation(), y.valuation()));
            if (x.valuation() != y.valuation()) EXPECT_EQ(s, min(x.valuation(), y.valuation()));
            // The norm has twice the valuation of x.
            EXPECT_EQ(Valuation(val_p(x.norm(), p)), x.valuation() + x.valuation());
            EXPECT_EQ(x * x.inverse(), KHat(p, 1));
        }
}

TEST(Reduction, Examples) {
    const FqField& F2 = FqField::get(2);
    const FqField& F3 = FqField::get(3);
    EXPECT_EQ(reduce_mod_pihat(KHat(2, 3), F2), F2.one());
    EXPECT_EQ(reduce_mod_pihat(KHat::pihat(3), F3), F3.zero());
    EXPECT_EQ(reduce_mod_pihat(KHat(2, Rational(1, 3)), F2), F2.one());
    EXPECT_THROW(reduce_mod_pihat(KHat(2, Rational(1, 2)), F2), NegativeValuation);
    EXPECT_THROW(reduce_mod_pihat(KHat(2, 1), F3), ResidueFieldMismatch);
}

TEST(Reduction, IsARingHomomorphism) {
    std::mt19937_64 rng(3);
    for (long p : {2L, 3L, 5L, 7L}) {
        const FqField& F = FqField::get(p);
        for (int t = 0; t < 200; ++t) {
            auto integral = [&] {
                Rational a = random_rational(rng, p), b = random_rational(rng, p);
                if (sgn(a) != 0 && val_p(a, p) < 0) a *= p_power(p, -val_p(a, p));
                if (sgn(b) != 0 && val_p(b, p) < 0) b *= p_power(p, -val_p(b, p));
                return KHat(p, a, b);
            };
            KHat x = integral(), y = integral();
            EXPECT_EQ(reduce_mod_pihat(x + y, F), reduce_mod_pihat(x, F) + reduce_mod_pihat(y, F));
            EXPECT_EQ(reduce_mod_pihat(x * y, F), reduce_mod_pihat(x, F) * reduce_mod_pihat(y, F));
        }
    }
}

TEST(FiniteField, AxiomsAndFrobenius) {
    for (long q : {2L, 3L, 4L, 5L, 8L, 9L, 16L, 25L, 27L}) {
        const FqField& F = FqField::get(q);
        auto els = F.elements();
        ASSERT_EQ(static_cast<long>(els.size()), q);
        for (const auto& x : els) {
            EXPECT_EQ(x.pow(q), x) << "q=" << q;
            if (!x.is_zero()) EXPECT_EQ(x * x.inverse(), F.one());
            for (const auto& y : els) {
                EXPECT_EQ(x + y, y + x);
                EXPECT_EQ(x * y, y * x);
                for (const auto& z : {F.one(), F.elem(q - 1)}) EXPECT_EQ(x * (y + z), x * y + x * z);
            }
        }
        // The primitive element has multiplicative order q - 1.
        FqElem g = F.elem(F.primitive_element());
        long order = 1;
        for (FqElem t = g; t != F.one(); t = t * g) ++order;
        EXPECT_EQ(order, q - 1);
    }
    EXPECT_THROW(FqField::get(6), InvalidParameters);
}

TEST(Polynomial, DivisionAndGcd) {
    const FqField& F = FqField::get(5);
    Poly<FqElem> a = Poly<FqElem>::linear(F.integer(1)) * Poly<FqElem>::linear(F.integer(2));
    Poly<FqElem> b = Poly<FqElem>::linear(F.integer(2)) * Poly<FqElem>::linear(F.integer(3));
    auto [q, r] = (a * b).divmod(b);
    EXPECT_EQ(q, a);
    EXPECT_TRUE(r.is_zero());
    EXPECT_EQ(gcd(a, b).monic(), Poly<FqElem>::linear(F.integer(2)));

    Poly<KHat> z2 = Poly<KHat>::monomial(KHat(3, 1), 2);
    EXPECT_EQ(z2.taylor_shift(KHat(3, 1)).eval(KHat(3, 0)), KHat(3, 1));
    EXPECT_EQ(z2.derivative(), Poly<KHat>::monomial(KHat(3, 2), 1));
}

TEST(LinearAlgebra, KernelRankInverse) {
    Matrix<Rational> M(3, 4, Rational(0));
    // Rows (1,2,3,4), (2,4,6,8), (0,1,1,1): rank 2.
    long rows[3][4] = {{1, 2, 3, 4}, {2, 4, 6, 8}, {0, 1, 1, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) M(i, j) = rows[i][j];
    EXPECT_EQ(M.rank(), 2u);
    auto ker = M.kernel();
    ASSERT_EQ(ker.size(), 2u);
    for (const auto& v : ker) {
        auto w = M * v;
        for (const auto& x : w) EXPECT_EQ(x, 0);
    }
    Matrix<Rational> A(2, 2, Rational(0));
    A(0, 0) = 2, A(0, 1) = 1, A(1, 0) = 1, A(1, 1) = 1;
    auto I = A * A.inverse();
    EXPECT_EQ(I(0, 0), 1);
    EXPECT_EQ(I(0, 1), 0);
    EXPECT_EQ(I(1, 1), 1);
    Matrix<Rational> S(2, 2, Rational(1));
    EXPECT_THROW(S.inverse(), SingularMatrix);
}

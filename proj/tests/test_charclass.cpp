#include <gtest/gtest.h>

#include "kcharge/kcharge.hpp"
#include "support.hpp"

using namespace kcharge;
using kcharge::testing::Rng;
using kcharge::testing::uniform;

TEST(Series, ToddCoefficients)
{
    // t / (1 - e^{-t}) = 1 + t/2 + t^2/12 - t^4/720 + ...
    const UnivariateSeries td = UnivariateSeries::todd(6);
    EXPECT_EQ(td[0], 1);
    EXPECT_EQ(td[1], Rational(1, 2));
    EXPECT_EQ(td[2], Rational(1, 12));
    EXPECT_EQ(td[3], 0);
    EXPECT_EQ(td[4], Rational(-1, 720));
    EXPECT_EQ(td[5], 0);
    EXPECT_EQ(td[6], Rational(1, 30240));
}

TEST(Series, AHatCoefficients)
{
    // (t/2) / sinh(t/2) = 1 - t^2/24 + 7 t^4/5760 - ...
    const UnivariateSeries a = UnivariateSeries::a_hat(4);
    EXPECT_EQ(a[1], 0);
    EXPECT_EQ(a[2], Rational(-1, 24));
    EXPECT_EQ(a[4], Rational(7, 5760));
}

TEST(Series, ExpLogInverse)
{
    const UnivariateSeries e = UnivariateSeries::exponential(8);
    const UnivariateSeries l = e.log();
    EXPECT_EQ(l[1], 1);
    for (int k = 2; k <= 8; ++k) {
        EXPECT_EQ(l[k], 0);
    }
    const UnivariateSeries td = UnivariateSeries::todd(8);
    const UnivariateSeries prod = td * td.inverse();
    EXPECT_EQ(prod[0], 1);
    for (int k = 1; k <= 8; ++k) {
        EXPECT_EQ(prod[k], 0);
    }
}

TEST(Newton, MatchesExplicitRoots)
{
    // random rational roots: e_k and p_k computed directly
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const int r = uniform(rng, 1, 5);
        std::vector<Rational> roots;
        for (int i = 0; i < r; ++i) {
            roots.push_back(kcharge::testing::small_rational(rng));
        }
        const int n = 6;
        std::vector<Rational> e(static_cast<std::size_t>(n + 1), Rational(0));
        e[0] = 1;
        for (const Rational& x : roots) {
            for (int k = n; k >= 1; --k) {
                e[static_cast<std::size_t>(k)] += x * e[static_cast<std::size_t>(k - 1)];
            }
        }
        std::vector<Rational> c(e.begin() + 1, e.end());
        const auto s = power_sums_from_chern<Rational>(c, n, Rational(0));
        for (int k = 1; k <= n; ++k) {
            Rational direct = 0;
            for (const Rational& x : roots) {
                Rational pw = 1;
                for (int j = 0; j < k; ++j) {
                    pw *= x;
                }
                direct += pw;
            }
            EXPECT_EQ(s[static_cast<std::size_t>(k - 1)], direct);
        }
        const auto back = chern_from_power_sums<Rational>(s, n, Rational(0), Rational(1));
        for (int k = 1; k <= n; ++k) {
            EXPECT_EQ(back[static_cast<std::size_t>(k - 1)], e[static_cast<std::size_t>(k)]);
        }
    }
}

TEST(Genus, ToddLowDegrees)
{
    const GenusPolynomials& td = todd_polynomials(4);
    EXPECT_EQ(td.degree(0).to_string(), "1");
    EXPECT_EQ(td.degree(1).to_string(), "1/2*c1");
    EXPECT_EQ(td.degree(2).to_string(), "1/12*c1^2 + 1/12*c2");
    EXPECT_EQ(td.degree(3).to_string(), "1/24*c1*c2");
    EXPECT_EQ(td.degree(4).to_string(), "-1/720*c1^4 + 1/180*c1^2*c2 + 1/720*c1*c3 + 1/240*c2^2 - 1/720*c4");
}

TEST(Genus, AHatLowDegrees)
{
    const GenusPolynomials& a = a_hat_polynomials(2);
    EXPECT_EQ(a.degree(1).to_string(), "-1/24*p1");
    EXPECT_EQ(a.degree(2).to_string(), "7/5760*p1^2 - 1/1440*p2");
}

TEST(Genus, StableAcrossOrders)
{
    const GenusPolynomials& low = todd_polynomials(5);
    const GenusPolynomials& high = todd_polynomials(9);
    for (int k = 0; k <= 5; ++k) {
        EXPECT_EQ(low.degree(k).to_string(), high.degree(k).to_string()) << k;
    }
}

TEST(Genus, ToddIdentityAndMutation)
{
    EXPECT_TRUE(todd_identity_check(10, 5));
    EXPECT_TRUE(todd_identity_check(6, 6));
    UnivariateSeries mutated = UnivariateSeries::a_hat(10);
    mutated[4] += Rational(1, 1000000);
    EXPECT_FALSE(todd_identity_check(10, 5, mutated));
    UnivariateSeries far = UnivariateSeries::a_hat(10);
    far[10] -= Rational(1, 7);
    EXPECT_FALSE(todd_identity_check(10, 5, far));
}

TEST(Genus, RejectsBadSeries)
{
    UnivariateSeries odd = UnivariateSeries::a_hat(6);
    odd[3] = 1;
    EXPECT_THROW(expand_genus(odd, 3, GenusVariables::Pontryagin), InvalidArgument);
    UnivariateSeries shifted = UnivariateSeries::todd(4);
    shifted[0] = 2;
    EXPECT_THROW(expand_genus(shifted, 4, GenusVariables::Chern), InvalidArgument);
}

TEST(ChernCharacter, LineBundlesOnProjectiveSpace)
{
    for (int n = 1; n <= 4; ++n) {
        const Space x = Space::cp(n);
        const GradedClass h = GradedClass::generator(x, 0);
        for (int k = -3; k <= 3; ++k) {
            const GradedClass c = GradedClass::one(x) + Rational(k) * h;
            GradedClass expected(x);
            Rational coeff = 1;
            for (int j = 0; j <= n; ++j) {
                expected += coeff * h.pow(j);
                coeff = coeff * k / (j + 1);
            }
            EXPECT_EQ(chern_character(1, c), expected) << n << " " << k;
        }
    }
}

TEST(ChernCharacter, InverseRoundTrip)
{
    Rng rng(22);
    const Space x = Space::product({Space::cp(2), Space::sphere(2)});
    for (int trial = 0; trial < 20; ++trial) {
        GradedClass c = GradedClass::one(x);
        for (const auto& e : x.basis()) {
            if (x.degree(e) > 0) {
                c += GradedClass::monomial(x, e, Rational(uniform(rng, -3, 3)));
            }
        }
        const int rank = uniform(rng, 0, 4);
        EXPECT_EQ(total_chern_from_character(chern_character(rank, c)), c);
    }
}

TEST(ChernCharacter, DegreeCapTruncates)
{
    const Space x = Space::cp(3);
    const GradedClass c = GradedClass::one(x) + GradedClass::generator(x, 0);
    EXPECT_EQ(chern_character(1, c, 1).to_string(), "1 + x");
    EXPECT_EQ(chern_character(1, c, 2).to_string(), "1 + x + 1/2*x^2");
    EXPECT_EQ(chern_character(1, c).to_string(), "1 + x + 1/2*x^2 + 1/6*x^3");
}

TEST(ToddClass, ToddGenusOfProjectiveSpaces)
{
    for (int n = 1; n <= 6; ++n) {
        const Space x = Space::cp(n);
        const GradedClass c = (GradedClass::one(x) + GradedClass::generator(x, 0)).pow(n + 1);
        EXPECT_EQ(integrate(todd_class(c)), 1) << n;
    }
}

TEST(Pontryagin, ProjectiveSpaces)
{
    // p(T CP^n) = (1 + x^2)^{n+1}
    for (int n = 1; n <= 5; ++n) {
        const Space x = Space::cp(n);
        const GradedClass h = GradedClass::generator(x, 0);
        const GradedClass c = (GradedClass::one(x) + h).pow(n + 1);
        const auto p = pontryagin_classes(c);
        const GradedClass expected = (GradedClass::one(x) + h.pow(2)).pow(n + 1);
        for (std::size_t i = 0; i < p.size(); ++i) {
            EXPECT_EQ(p[i], expected.homogeneous(4 * static_cast<int>(i + 1))) << n << " " << i;
        }
    }
}

TEST(AHat, GenusOfProjectivePlane)
{
    const Space x = Space::cp(2);
    const GradedClass c = (GradedClass::one(x) + GradedClass::generator(x, 0)).pow(3);
    const auto p = pontryagin_classes(c);
    EXPECT_EQ(integrate(a_hat_class(x, p)), Rational(-1, 8));
    // p1 = 5x^2, p2 = 10x^4: (7*25 - 4*10) / 5760
    const Space y = Space::cp(4);
    const GradedClass c4 = (GradedClass::one(y) + GradedClass::generator(y, 0)).pow(5);
    EXPECT_EQ(integrate(a_hat_class(y, pontryagin_classes(c4))), Rational(3, 128));
}

TEST(ToddClass, RequiresUnitConstantTerm)
{
    const Space x = Space::cp(2);
    EXPECT_THROW(todd_class(GradedClass::constant(x, 2)), InvalidArgument);
    EXPECT_THROW(chern_character(1, GradedClass(x)), InvalidArgument);
}

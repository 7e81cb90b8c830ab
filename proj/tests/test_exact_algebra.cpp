#include <gtest/gtest.h>

#include <random>

#include "ggw/poly.hpp"
#include "ggw/ratfunc.hpp"
#include "ggw/rational.hpp"
#include "ggw/rewriting.hpp"
#include "ggw/series.hpp"
#include "oracles.hpp"

using namespace ggw;

TEST(Rational, ParsesAndPrintsCanonically) {
    EXPECT_EQ(Rational::parse("6/4").str(), "3/2");
    EXPECT_EQ(Rational::parse("-2/4").str(), "-1/2");
    EXPECT_THROW(Rational::parse("-2/-4"), InputError);
    EXPECT_EQ(Rational::parse("5").str(), "5");
    EXPECT_EQ(Rational::parse("0/7").str(), "0");
    EXPECT_THROW(Rational::parse("1/0"), InputError);
    EXPECT_THROW(Rational::parse("0.5"), InputError);
    EXPECT_THROW(Rational::parse(""), InputError);
}

TEST(Rational, FieldAxiomsOnRandomSamples) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        Rational a = oracle::random_rational(rng), b = oracle::random_rational(rng), c = oracle::random_rational(rng);
        EXPECT_EQ((a + b) * c, a * c + b * c);
        EXPECT_EQ(a - a, Rational(0));
        if (!a.is_zero()) {
            EXPECT_EQ(a * a.reciprocal(), Rational(1));
        }
    }
    EXPECT_EQ(Rational(2, 3).pow(-2), Rational(9, 4));
}

TEST(MultiPoly, CanonicalTextIsAscendingGrlex) {
    MultiPoly q = var("q");
    MultiPoly p = MultiPoly(1) - q.scaled(Rational(1, 2)) + q.pow(2).scaled(Rational(3));
    EXPECT_EQ(p.str(), "1 - 1/2*q + 3*q^2");
    EXPECT_EQ(MultiPoly().str(), "0");
    EXPECT_EQ((var("x") - var("x")).str(), "0");
}

TEST(MultiPoly, RingIdentitiesAndEvaluation) {
    MultiPoly x = var("x"), y = var("y");
    MultiPoly a = x + y, b = x - y;
    EXPECT_EQ(a * b, x.pow(2) - y.pow(2));
    EXPECT_EQ((a.pow(3)).total_degree(), 3U);
    std::map<std::string, Rational> pt{{"x", Rational(2)}, {"y", Rational(1, 3)}};
    EXPECT_EQ((a * b).evaluate(pt), Rational(4) - Rational(1, 9));
    EXPECT_EQ(a.substitute("y", x), x.scaled(Rational(2)));
}

TEST(RationalFunction, ArithmeticAndEquality) {
    MultiPoly x = var("x");
    RationalFunction f(MultiPoly(1), x + MultiPoly(1));
    RationalFunction g(MultiPoly(1), x - MultiPoly(1));
    RationalFunction sum = f + g;
    EXPECT_EQ(sum, RationalFunction(x.scaled(Rational(2)), x.pow(2) - MultiPoly(1)));
    EXPECT_EQ(f * (x + MultiPoly(1)), RationalFunction(1));
    EXPECT_THROW(RationalFunction(x, MultiPoly()), DomainError);
    EXPECT_THROW(g.evaluate({{"x", Rational(1)}}), DomainError);
    EXPECT_EQ(f.evaluate({{"x", Rational(1)}}), Rational(1, 2));
}

TEST(RationalFunction, DenominatorIsPrimitive) {
    MultiPoly x = var("x");
    RationalFunction f(MultiPoly(3), x.scaled(Rational(6)) + MultiPoly(Rational(9, 2)));
    EXPECT_EQ(f.str(), "(2)/(3 + 4*x)");
}

TEST(TruncatedSeries, ProductRespectsTruncation) {
    auto s = TruncatedSeries::in_q(3);
    s.set(0, RationalFunction(1));
    s.set(1, RationalFunction(1));
    auto sq = s * s;
    EXPECT_EQ(sq.str(), "1 + 2*q + q^2");
    auto geo = TruncatedSeries::in_q(3);
    for (int d = 0; d <= 5; ++d) geo.set(d, RationalFunction(1));
    EXPECT_EQ(geo.str(), "1 + q + q^2 + q^3");
    auto inv = TruncatedSeries::in_q(3);
    inv.set(0, RationalFunction(1));
    inv.set(1, RationalFunction(-1));
    EXPECT_EQ((geo * inv).str(), "1");
}

TEST(TruncatedSeries, ArityMismatchIsRejected) {
    auto a = TruncatedSeries::in_q(2);
    auto b = TruncatedSeries::in_degree_vars(2, 2);
    EXPECT_THROW(a + b, DomainError);
    EXPECT_THROW(a.set(Degree{1, 1}, RationalFunction(1)), DomainError);
}

namespace {

BinomialPresentation beta_power(unsigned k) {
    return {{"beta", "q"}, {{Term{Rational(1), {{"beta", k}}}, Term{Rational(1), {{"q", 1}}}}}};
}

}  // namespace

TEST(Rewriting, RepeatedReduction) {
    auto p = beta_power(3);
    EXPECT_EQ(normal_form(Term{Rational(1), {{"beta", 7}}}, p).str(), "beta*q^2");
    EXPECT_EQ(normal_form(Term{Rational(2), {{"beta", 2}}}, p).str(), "2*beta^2");
}

TEST(Rewriting, NormalFormIsIrreducibleAndLinear) {
    auto p = beta_power(4);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<unsigned> e(0, 20);
    for (int i = 0; i < 100; ++i) {
        Term t{Rational(1), {{"beta", e(rng)}, {"q", e(rng)}}};
        auto nf = normal_form(t, p);
        EXPECT_LT(nf.degree_in("beta"), 4U);
        // Exponent bookkeeping: beta^a q^b -> beta^(a mod 4) q^(b + a div 4).
        unsigned a = t.mono["beta"], b = t.mono["q"];
        Monomial want;
        if (a % 4) want["beta"] = a % 4;
        if (b + a / 4) want["q"] = b + a / 4;
        EXPECT_EQ(nf, MultiPoly::monomial(Rational(1), want));
    }
}

TEST(Rewriting, NonTerminatingSystemExhaustsFuel) {
    BinomialPresentation loop{{"x", "y"},
                              {{Term{Rational(1), {{"x", 1}}}, Term{Rational(1), {{"y", 1}}}},
                               {Term{Rational(1), {{"y", 1}}}, Term{Rational(1), {{"x", 1}}}}}};
    EXPECT_THROW(normal_form(Term{Rational(1), {{"x", 1}}}, loop), RewriteFuelExhausted);
}

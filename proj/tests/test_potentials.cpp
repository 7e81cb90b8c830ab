#include <gtest/gtest.h>

#include <random>

#include "ggw/potentials.hpp"
#include "oracles.hpp"

using namespace ggw;

TEST(Delta, WorkedValues) {
    MultiPoly th = var("theta"), w = var("w"), z = var("zeta");
    EXPECT_EQ(delta_factor(0), RationalFunction(1));
    EXPECT_EQ(delta_factor(2), RationalFunction((th + w + z) * (th + w + z.scaled(Rational(2)))));
    EXPECT_EQ(delta_factor(-1), RationalFunction(MultiPoly(1), th + w));
    EXPECT_EQ(delta_factor(-2), RationalFunction(MultiPoly(1), (th + w) * (th + w - z)));
}

TEST(Delta, RecursionInM) {
    MultiPoly th = var("theta"), w = var("w"), z = var("zeta");
    for (long m = -3; m <= 3; ++m)
        EXPECT_EQ(delta_factor(m), delta_factor(m - 1) * RationalFunction(th + w + z.scaled(Rational(m)))) << m;
}

TEST(Delta, MatchesRatioOfSemiInfiniteProducts) {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 200; ++i) {
        Rational th = oracle::random_rational(rng), w = oracle::random_rational(rng);
        Rational z = Rational(1) + Rational(static_cast<long>(rng() % 50), 7);
        std::map<std::string, Rational> pt{{"theta", th}, {"w", w}, {"zeta", z}};
        for (long m = -3; m <= 3; ++m) {
            Rational want;
            try {
                want = oracle::delta_truncated(m, th, w, z);
            } catch (const DomainError&) {
                continue;
            }
            try {
                EXPECT_EQ(delta_factor(m).evaluate(pt), want);
            } catch (const DomainError&) {
            }
        }
    }
}

TEST(LocalizedPotential, ProjectiveLineCoefficients) {
    auto s = localized_potential(LinearActionSpec::projective_space(2, 2));
    MultiPoly x1 = var("Xinv1"), x2 = var("Xinv2"), z = var("zeta");
    auto f = [&](const MultiPoly& x, unsigned e) { return MultiPoly(1) - x * z.pow(e); };
    EXPECT_EQ(s.coefficient(0), RationalFunction(1));
    EXPECT_EQ(s.coefficient(1), RationalFunction(MultiPoly(1), f(x1, 1) * f(x2, 1)));
    EXPECT_EQ(s.coefficient(2),
              RationalFunction(MultiPoly(1), f(x1, 1) * f(x2, 1) * f(x1, 2) * f(x2, 2)));
}

TEST(LocalizedPotential, NegativeWeightsGiveNumerators) {
    LinearActionSpec spec{1, {{1}, {-1}}, 2};
    auto s = localized_potential(spec);
    MultiPoly x1 = var("Xinv1"), x2 = var("Xinv2"), z = var("zeta"), zi = var("zetainv");
    EXPECT_EQ(s.coefficient(1), RationalFunction(MultiPoly(1) - x2, MultiPoly(1) - x1 * z));
    EXPECT_EQ(s.coefficient(2), RationalFunction((MultiPoly(1) - x2) * (MultiPoly(1) - x2 * zi),
                                                 (MultiPoly(1) - x1 * z) * (MultiPoly(1) - x1 * z.pow(2))));
    auto plus = localized_potential(spec, PotentialBranch::plus);
    EXPECT_EQ(plus.coefficient(1), RationalFunction(MultiPoly(1) - x2, MultiPoly(1) - x1 * zi));
}

TEST(LocalizedPotential, RecursionInDegree) {
    for (std::size_t k = 1; k <= 4; ++k) {
        auto s = localized_potential(LinearActionSpec::projective_space(k, 4));
        for (int d = 0; d < 4; ++d) {
            MultiPoly den(1);
            for (std::size_t j = 0; j < k; ++j)
                den = den * (MultiPoly(1) - var(xinv_name(j)) * var("zeta").pow(static_cast<unsigned>(d + 1)));
            EXPECT_EQ(s.coefficient(d + 1), s.coefficient(d) * RationalFunction(MultiPoly(1), den));
        }
    }
    EXPECT_THROW(localized_potential(LinearActionSpec{2, {{1}}, 2}), InputError);
}

TEST(QuantumDifferentialEquation, ResidualsVanish) {
    for (int k = 1; k <= 5; ++k)
        for (int D = 1; D <= 6; ++D) {
            EXPECT_TRUE(qde_residual_cohomological(k, D).is_zero()) << k << " " << D;
            EXPECT_TRUE(qde_residual_ktheoretic(k, D).is_zero()) << k << " " << D;
        }
    EXPECT_THROW(qde_residual_cohomological(0, 2), DomainError);
    EXPECT_THROW(qde_residual_ktheoretic(2, 0), DomainError);
}

TEST(Presentations, QuantumCohomologyOfProjectiveSpace) {
    auto qh = qh_presentation(3);
    EXPECT_EQ(qh.normal_form(var("beta").pow(7)), var("beta") * var("q").pow(2));
    EXPECT_EQ(qh.normal_form(var("beta").pow(3)), var("q"));
    EXPECT_THROW(qh_presentation(1), DomainError);
}

TEST(Presentations, QuantumKTheoryThroughBeta) {
    auto qk = qk_presentation(2);
    MultiPoly b = MultiPoly(1) - var("Linv");
    EXPECT_EQ(qk_normal_form(b.pow(2), qk), var("q"));
    EXPECT_EQ(qk_normal_form(b.pow(5), qk), b * var("q").pow(2));
    EXPECT_THROW(qk_presentation(0), DomainError);
}

TEST(Presentations, ToricRelationFromWeights) {
    LinearActionSpec spec{1, {{1}, {1}, {-1}}, 2};
    auto p = batyrev_presentation(spec, {{1}});
    ASSERT_EQ(p.presentation.relations.size(), 1U);
    EXPECT_EQ(relation_str(p.presentation.relations[0]), "beta1*beta2 = beta3*q");
}

TEST(Presentations, DegenerateRelationIsReoriented) {
    LinearActionSpec spec{1, {{-1}}, 2};
    auto p = batyrev_presentation(spec, {{1}});
    ASSERT_EQ(p.presentation.relations.size(), 1U);
    EXPECT_FALSE(p.notes.empty());
    EXPECT_THROW(batyrev_presentation(spec, {{-1}}), InputError);
}

TEST(Presentations, IdentifiedToricRelationsAgreeWithProjectiveSpace) {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<unsigned> e(0, 12);
    for (int k = 2; k <= 4; ++k) {
        auto spec = LinearActionSpec::projective_space(static_cast<std::size_t>(k));
        std::map<std::string, std::string> rename;
        for (int j = 1; j <= k; ++j) rename["beta" + std::to_string(j)] = "beta";
        auto toric = identify_generators(batyrev_presentation(spec, {{1}}), rename);
        auto qh = qh_presentation(k);
        for (int i = 0; i < 100; ++i) {
            auto m = MultiPoly::monomial(Rational(1), {{"beta", e(rng)}, {"q", e(rng) % 3}});
            EXPECT_EQ(toric.normal_form(m), qh.normal_form(m));
        }
    }
}

TEST(FramedSheaves, RankOneFirstCoefficient) {
    FramedSheafSpec spec{1, 1, 1, std::nullopt};
    auto s = framed_sheaf_fundamental_solution(spec);
    MultiPoly t = var("theta1");
    EXPECT_EQ(s.coefficient(1), RationalFunction(var("xi1") + var("xi2") - t, t + var("zeta")));
    EXPECT_TRUE(s.coefficient(0).is_zero());
}

TEST(FramedSheaves, SymbolicAgreesWithSpecialized) {
    for (int k = 1; k <= 2; ++k)
        for (int r = 1; r <= 2; ++r) {
            FramedSheafSpec sym{k, r, 2, std::nullopt};
            FramedSheafSpec num = sym;
            num.point = sym.default_point();
            EXPECT_EQ(evaluate_series(framed_sheaf_fundamental_solution(sym), *num.point),
                      framed_sheaf_fundamental_solution(num));
        }
}

TEST(FramedSheaves, SpecializedAgreesWithDisplayedFormula) {
    std::mt19937_64 rng(53);
    for (int iter = 0; iter < 30; ++iter) {
        int k = 1 + static_cast<int>(rng() % 3), r = 1 + static_cast<int>(rng() % 2);
        FramedSheafSpec spec{k, r, 3, std::nullopt};
        auto pt = spec.default_point();
        for (auto& [name, v] : pt)
            if (name != "zeta") v += Rational(static_cast<long>(rng() % 5), 97);
        spec.point = pt;
        auto s = framed_sheaf_fundamental_solution(spec);
        for (int d = 1; d <= 3; ++d) EXPECT_EQ(s.coefficient(d), RationalFunction(oracle::framed_coefficient(k, r, d, pt)));
    }
}

TEST(FramedSheaves, LimitsAndVanishingFactors) {
    EXPECT_THROW(framed_sheaf_fundamental_solution({4, 1, 2, std::nullopt}), DomainError);
    EXPECT_THROW(framed_sheaf_fundamental_solution({1, 1, 4, std::nullopt}), DomainError);
    FramedSheafSpec spec{1, 1, 1, std::nullopt};
    auto pt = spec.default_point();
    pt["theta1"] = Rational(-1);
    spec.point = pt;
    try {
        framed_sheaf_fundamental_solution(spec);
        FAIL() << "expected a vanishing factor";
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("theta1"), std::string::npos);
    }
    FramedSheafSpec missing{2, 1, 1, std::map<std::string, Rational>{{"theta1", Rational(1)}}};
    EXPECT_THROW(framed_sheaf_fundamental_solution(missing), InputError);
}

TEST(Age, WorkedValuesAndInverseSum) {
    EXPECT_EQ(age(3, {1, 1, 1}), Rational(1));
    EXPECT_EQ(age(2, {1, 1}), Rational(1));
    EXPECT_EQ(age(5, {1, 2}), Rational(3, 5));
    EXPECT_THROW(age(3, {3}), DomainError);
    EXPECT_THROW(age(0, {}), DomainError);
    for (long r = 2; r <= 7; ++r)
        for (long a = 0; a < r; ++a)
            for (long b = 0; b < r; ++b) {
                long nonzero = (a != 0) + (b != 0);
                EXPECT_EQ(age(r, {a, b}) + age(r, {(r - a) % r, (r - b) % r}), Rational(nonzero));
            }
}

TEST(Crepancy, WeightSums) {
    EXPECT_EQ(crepancy_check({1, 1, -1, -1}).str(), "crepant");
    EXPECT_EQ(crepancy_check({1, 1, -1}).str(), "non_crepant(1)");
    EXPECT_EQ(crepancy_check({1, -2}).str(), "non_crepant(-1)");
}

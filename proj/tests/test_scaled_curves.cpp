#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "ggw/scaled_curves.hpp"
#include "oracles.hpp"

using namespace ggw;

namespace {

std::multiset<int> dims(const std::vector<ScaledType>& ts) {
    std::multiset<int> out;
    for (const auto& t : ts) out.insert(stratum_dimension(t));
    return out;
}

std::set<std::string> terms(const std::vector<ScaledType>& ts) {
    std::set<std::string> out;
    for (const auto& t : ts) out.insert(canonical_term(t));
    return out;
}

// Degeneration moves used to test closure of the enumeration.

ScaledType finite_root_to_infinity(const ScaledType& t) {
    ScaledType u = t;
    u.root_kind = RootKind::infinite;
    ScaledVertex child{Level::transition, 0, t.vertices[0].markings};
    u.vertices[0] = {Level::infinite, -1, {}};
    u.vertices.push_back(child);
    int c = static_cast<int>(u.vertices.size()) - 1;
    for (int v = 1; v < c; ++v)
        if (u.vertices[static_cast<std::size_t>(v)].parent == 0) u.vertices[static_cast<std::size_t>(v)].parent = c;
    return u;
}

/// Turns transition vertex v infinite, moving the items in `first` (bitmask
/// over its markings then children) under one new transition vertex and the
/// rest under another.
ScaledType split_transition(const ScaledType& t, int v, unsigned first) {
    ScaledType u = t;
    auto& vx = u.vertices[static_cast<std::size_t>(v)];
    std::vector<int> marks;
    for (int m : vx.markings)
        if (m != 0) marks.push_back(m);
    std::vector<int> kids = t.children(v);
    vx.level = Level::infinite;
    vx.markings.erase(std::remove_if(vx.markings.begin(), vx.markings.end(), [](int m) { return m != 0; }),
                      vx.markings.end());
    int a = static_cast<int>(u.vertices.size());
    u.vertices.push_back({Level::transition, v, {}});
    u.vertices.push_back({Level::transition, v, {}});
    std::size_t idx = 0;
    for (int m : marks) u.vertices[static_cast<std::size_t>((first >> idx++ & 1U) ? a : a + 1)].markings.push_back(m);
    for (int k : kids) u.vertices[static_cast<std::size_t>(k)].parent = (first >> idx++ & 1U) ? a : a + 1;
    if (v == 0 && u.mode == CurveMode::projective) u.root_kind = RootKind::infinite;
    return u;
}

ScaledType collide(const ScaledType& t, int v, int m1, int m2) {
    ScaledType u = t;
    auto& ms = u.vertices[static_cast<std::size_t>(v)].markings;
    ms.erase(std::remove_if(ms.begin(), ms.end(), [&](int m) { return m == m1 || m == m2; }), ms.end());
    u.vertices.push_back({Level::zero, v, {m1, m2}});
    return u;
}

std::vector<ScaledType> degenerations(const ScaledType& t) {
    std::vector<ScaledType> out;
    if (t.mode == CurveMode::projective && t.root_kind == RootKind::finite) out.push_back(finite_root_to_infinity(t));
    for (int v = 0; v < static_cast<int>(t.vertices.size()); ++v) {
        const auto& vx = t.at(v);
        if (vx.level == Level::transition) {
            std::size_t items = t.children(v).size();
            for (int m : vx.markings) items += m != 0 ? 1 : 0;
            for (unsigned f = 0; f < (1U << items); ++f) out.push_back(split_transition(t, v, f));
        }
        if (vx.level != Level::infinite)
            for (int a : vx.markings)
                for (int b : vx.markings)
                    if (a != 0 && b != 0 && a < b) out.push_back(collide(t, v, a, b));
    }
    return out;
}

}  // namespace

TEST(ScaledCurves, CensusForSmallN) {
    auto p0 = enumerate_types(0, CurveMode::projective);
    EXPECT_EQ(p0.size(), 2U);
    auto p2 = enumerate_types(2, CurveMode::projective);
    EXPECT_EQ(p2.size(), 6U);
    EXPECT_EQ(dims(p2), (std::multiset<int>{3, 2, 2, 2, 1, 1}));
    auto a2 = enumerate_types(2, CurveMode::affine);
    EXPECT_EQ(a2.size(), 3U);
    EXPECT_EQ(dims(a2), (std::multiset<int>{1, 0, 0}));
    EXPECT_EQ(enumerate_types(1, CurveMode::projective).size(), 2U);
}

TEST(ScaledCurves, TwoPointConfigurationsMatchTheListedStrata) {
    EXPECT_EQ(terms(enumerate_types(2, CurveMode::projective)),
              (std::set<std::string>{"(τκ)(z1 z2)", "(τκ)((z1 z2))", "τ(κ(z1) κ(z2))", "τ(κ(z1 z2))",
                                     "τ(κ((z1 z2)))", "τ((κ(z1) κ(z2)))"}));
    EXPECT_EQ(terms(enumerate_types(2, CurveMode::affine)),
              (std::set<std::string>{"κ(z1 z2)", "κ((z1 z2))", "κ(z1) κ(z2)"}));
}

TEST(ScaledCurves, EnumerationBoundAndDegenerateAffine) {
    EXPECT_THROW(enumerate_types(7, CurveMode::projective), DomainError);
    EXPECT_NO_THROW(enumerate_types(3, CurveMode::projective, 3));
    EXPECT_THROW(enumerate_types(4, CurveMode::projective, 3), DomainError);
    EXPECT_THROW(enumerate_types(0, CurveMode::affine), DomainError);
}

TEST(ScaledCurves, EveryEnumeratedTypeValidatesAndTopDimensionMatches) {
    for (int n = 0; n <= 4; ++n)
        for (auto mode : {CurveMode::projective, CurveMode::affine}) {
            if (mode == CurveMode::affine && n == 0) continue;
            auto ts = enumerate_types(n, mode);
            ASSERT_FALSE(ts.empty());
            for (const auto& t : ts) EXPECT_FALSE(validate(t)) << canonical_term(t);
            int top = *dims(ts).rbegin();
            EXPECT_EQ(top, mode == CurveMode::projective ? n + 1 : n - 1);
            EXPECT_EQ(terms(ts).size(), ts.size());
            for (const auto& t : ts) EXPECT_GE(stratum_dimension(t), 0);
        }
}

TEST(ScaledCurves, ClosedUnderDegenerationMoves) {
    for (int n = 1; n <= 4; ++n)
        for (auto mode : {CurveMode::projective, CurveMode::affine}) {
            auto ts = enumerate_types(n, mode);
            auto known = terms(ts);
            for (const auto& t : ts)
                for (const auto& u : degenerations(t)) {
                    if (validate(u)) continue;
                    EXPECT_TRUE(known.count(canonical_term(u))) << canonical_term(t) << " -> " << canonical_term(u);
                    EXPECT_LT(stratum_dimension(u), stratum_dimension(t));
                }
        }
}

TEST(ScaledCurves, NoSiblingSubtreesCoincide) {
    for (int n = 1; n <= 4; ++n) {
        for (const auto& t : enumerate_types(n, CurveMode::projective)) {
            for (int v = 0; v < static_cast<int>(t.vertices.size()); ++v) {
                std::set<std::string> seen;
                for (int c : t.children(v)) {
                    ScaledType sub;
                    sub.mode = CurveMode::affine;
                    // Re-root the child's subtree to read its encoding.
                    std::vector<int> map(t.vertices.size(), -1);
                    std::vector<int> stack{c};
                    map[static_cast<std::size_t>(c)] = 0;
                    sub.vertices.push_back({t.at(c).level, -1, t.at(c).markings});
                    while (!stack.empty()) {
                        int x = stack.back();
                        stack.pop_back();
                        for (int y : t.children(x)) {
                            map[static_cast<std::size_t>(y)] = static_cast<int>(sub.vertices.size());
                            sub.vertices.push_back({t.at(y).level, map[static_cast<std::size_t>(x)], t.at(y).markings});
                            stack.push_back(y);
                        }
                    }
                    EXPECT_TRUE(seen.insert(canonical_term(sub)).second);
                }
            }
        }
    }
}

TEST(ScaledCurves, TermRoundTrip) {
    for (int n = 0; n <= 4; ++n)
        for (auto mode : {CurveMode::projective, CurveMode::affine}) {
            if (mode == CurveMode::affine && n == 0) continue;
            for (const auto& t : enumerate_types(n, mode)) {
                auto back = parse_term(canonical_term(t));
                EXPECT_FALSE(validate(back)) << canonical_term(t);
                EXPECT_EQ(canonical_term(back), canonical_term(t));
                EXPECT_EQ(stratum_dimension(back), stratum_dimension(t));
            }
        }
    auto leaves = parse_term("τ((κ(z1 z2) κ(z3)) κ((z4 z5)(z6 (z7 z8))))");
    EXPECT_FALSE(validate(leaves));
    EXPECT_EQ(parse_term("tau(kappa(z1) kappa(z2))").vertices.size(), 3U);
    EXPECT_THROW(parse_term("τ(κ(z1)"), InputError);
    EXPECT_THROW(parse_term("τ(q1)"), InputError);
}

TEST(ScaledCurves, ValidationReportsTheFailedClause) {
    ScaledType open;
    open.mode = CurveMode::projective;
    open.root_kind = RootKind::finite;
    open.vertices = {{Level::transition, -1, {}}};
    EXPECT_FALSE(validate(open));

    ScaledType boundary;
    boundary.mode = CurveMode::projective;
    boundary.root_kind = RootKind::infinite;
    boundary.n = 1;
    boundary.vertices = {{Level::infinite, -1, {}}, {Level::transition, 0, {1}}};
    EXPECT_FALSE(validate(boundary));

    ScaledType bad = boundary;
    bad.vertices = {{Level::infinite, -1, {}}, {Level::zero, 0, {}}, {Level::transition, 1, {1}}};
    auto v = validate(bad);
    ASSERT_TRUE(v);
    EXPECT_EQ(v->clause, "monotonicity");
    EXPECT_EQ(v->vertex, 1);

    ScaledType marked_infinite = boundary;
    marked_infinite.vertices = {{Level::infinite, -1, {1}}};
    ASSERT_TRUE(validate(marked_infinite));
    EXPECT_EQ(validate(marked_infinite)->clause, "marking_property");

    ScaledType unstable = boundary;
    unstable.vertices = {{Level::infinite, -1, {}}, {Level::infinite, 0, {}}, {Level::transition, 1, {1}}};
    ASSERT_TRUE(validate(unstable));
    EXPECT_EQ(validate(unstable)->clause, "stability");

    auto zero_root = parse_term("κ(z1 z2)");
    zero_root.vertices[0].level = Level::zero;
    EXPECT_EQ(validate(zero_root)->clause, "root");
    EXPECT_THROW(stratum_dimension(unstable), InvalidScaledType);
}

TEST(ScaledCurves, DimensionsAndImages) {
    EXPECT_EQ(stratum_dimension(parse_term("(τκ)(z1 z2)")), 3);
    EXPECT_EQ(stratum_dimension(parse_term("τ(κ(z1) κ(z2))")), 2);
    for (int n = 1; n <= 4; ++n) {
        std::string body;
        for (int i = 1; i <= n; ++i) body += (i > 1 ? " z" : "z") + std::to_string(i);
        EXPECT_EQ(stratum_dimension(parse_term("κ(" + body + ")")), n - 1);
    }
    EXPECT_EQ(rho_image(parse_term("(τκ)()")), RhoImage::dominant);
    EXPECT_EQ(rho_image(parse_term("τ(κ(z1) κ(z2))")), RhoImage::infinity);
    EXPECT_EQ(rho_image(parse_term("(τκ)((z1 z2))")), RhoImage::dominant);
    EXPECT_THROW(rho_image(parse_term("κ(z1 z2)")), DomainError);
}

TEST(ScaledCurves, AffineCoordinate) {
    EXPECT_EQ(affine_two_marking_coordinate(Rational(0), Rational(1), Rational(1)), Rational(1));
    EXPECT_EQ(affine_two_marking_coordinate(Rational(0), Rational(1), Rational(0)), Rational(0));
    EXPECT_EQ(affine_two_marking_coordinate(Rational(1), Rational(3), Rational(1, 2)), Rational(1));
    EXPECT_THROW(affine_two_marking_coordinate(Rational(2), Rational(2), Rational(1)), DomainError);
}

TEST(ScaledCurves, BalancedWorkedExamples) {
    // Transition vertices 2 and 3 under the infinite vertex 1.
    auto t = parse_term("τ((κ(z1) κ(z2)))");
    EXPECT_TRUE(check_balanced(t, {{Rational(5), Rational(2), Rational(2)}}));
    EXPECT_FALSE(check_balanced(t, {{Rational(5), Rational(2), Rational(3)}}));
    auto single = parse_term("τ(κ(z1 z2))");
    EXPECT_TRUE(check_balanced(single, {{Rational(7)}}));
    EXPECT_THROW(check_balanced(t, {{Rational(1), Rational(0), Rational(1)}}), DomainError);
    EXPECT_THROW(check_balanced(t, {{Rational(1)}}), DomainError);
}

TEST(ScaledCurves, BalancedAgreesWithPathProducts) {
    std::mt19937_64 rng(17);
    std::vector<ScaledType> pool;
    for (int n = 1; n <= 4; ++n)
        for (auto mode : {CurveMode::projective, CurveMode::affine})
            for (auto& t : enumerate_types(n, mode)) pool.push_back(t);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::bernoulli_distribution coin(0.5);
    int seen_true = 0, seen_false = 0;
    for (int i = 0; i < 600; ++i) {
        const auto& t = pool[pick(rng)];
        auto g = oracle::random_gamma(t, rng, coin(rng));
        bool want = oracle::balanced_by_paths(t, g);
        EXPECT_EQ(check_balanced(t, {g}), want) << canonical_term(t);
        (want ? seen_true : seen_false)++;
    }
    EXPECT_GT(seen_true, 0);
    EXPECT_GT(seen_false, 0);
}

TEST(ScaledCurves, BalancedInvariantUnderVertexRescaling) {
    std::mt19937_64 rng(23);
    for (int n = 2; n <= 4; ++n)
        for (const auto& t : enumerate_types(n, CurveMode::projective)) {
            for (int v = 1; v < static_cast<int>(t.vertices.size()); ++v) {
                if (t.children(v).empty() || t.at(v).level == Level::transition) continue;
                auto g = oracle::random_gamma(t, rng, (rng() & 1U) != 0);
                Rational c = oracle::random_nonzero(rng);
                auto h = g;
                h[static_cast<std::size_t>(v - 1)] *= c;
                for (int w : t.children(v)) h[static_cast<std::size_t>(w - 1)] /= c;
                EXPECT_EQ(check_balanced(t, {h}), check_balanced(t, {g}));
            }
        }
}

TEST(ScaledCurves, DivisorPairs) {
    auto a2 = divisor_pairs(2, CurveMode::affine);
    EXPECT_EQ(a2.left, (std::vector<std::string>{"κ((z1 z2))"}));
    EXPECT_EQ(a2.right, (std::vector<std::string>{"κ(z1) κ(z2)"}));
    auto p2 = divisor_pairs(2, CurveMode::projective);
    EXPECT_EQ(std::set<std::string>(p2.right.begin(), p2.right.end()),
              (std::set<std::string>{"τ(κ(z1 z2))", "τ(κ(z1) κ(z2))"}));
    EXPECT_EQ(p2.left, (std::vector<std::string>{"(τκ)(z1 z2) [δ=0]"}));
    auto p1 = divisor_pairs(1, CurveMode::projective);
    EXPECT_EQ(p1.right, (std::vector<std::string>{"τ(κ(z1))"}));
}

#pragma once

// Independent reference computations for the test suites. Nothing here calls
// the convex-hull, rewriting or enumeration code under test; each oracle
// recomputes its answer from definitions by brute force.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "ggw/rational.hpp"
#include "ggw/scaled_curves.hpp"

namespace oracle {

using ggw::Rational;
using ggw::RationalVector;
using Weights = std::vector<std::vector<long>>;

// ------------------------------------------------------------ Hilbert-Mumford

/// min_i (-mu_i . lambda) + theta . lambda, straight from the definition.
/// T is Rational, or a machine integer when the inputs are integral.
template <class T>
T hm(const std::vector<std::vector<T>>& pts, const std::vector<T>& theta, const std::vector<T>& lambda) {
    T best{};
    bool first = true;
    for (const auto& p : pts) {
        T v{};
        for (std::size_t a = 0; a < p.size(); ++a) v -= p[a] * lambda[a];
        if (first || v < best) best = v;
        first = false;
    }
    for (std::size_t a = 0; a < theta.size(); ++a) best += theta[a] * lambda[a];
    return best;
}

/// Candidate one-parameter subgroups: +-e_a, and for r = 2 the differences
/// p - q of support weights and their rotations by 90 degrees.
template <class T>
std::vector<std::vector<T>> candidates(const std::vector<std::vector<T>>& pts, std::size_t r) {
    std::vector<std::vector<T>> out;
    for (std::size_t a = 0; a < r; ++a)
        for (int s : {1, -1}) {
            std::vector<T> e(r);
            e[a] = T(s);
            out.push_back(e);
        }
    if (r == 2)
        for (const auto& p : pts)
            for (const auto& q : pts) {
                std::vector<T> d{p[0] - q[0], p[1] - q[1]};
                if (d[0] == T{} && d[1] == T{}) continue;
                out.push_back(d);
                out.push_back({-d[1], d[0]});
            }
    return out;
}

template <class T>
int sign_of(const T& x) {
    return (T{} < x) - (x < T{});
}

/// Status strings as produced by ggw::to_string(Stability).
template <class T>
std::string classify(const std::vector<std::vector<T>>& pts, const std::vector<T>& theta, std::size_t r) {
    auto cands = candidates(pts, r);
    bool all_negative = true, poly = true;
    for (const auto& l : cands) {
        int w = sign_of(hm(pts, theta, l));
        if (w > 0) return "unstable";
        if (w == 0) {
            all_negative = false;
            std::vector<T> m;
            for (const auto& x : l) m.push_back(-x);
            if (sign_of(hm(pts, theta, m)) != 0) poly = false;
        }
    }
    if (all_negative) return "stable";
    return poly ? "polystable_not_stable" : "semistable_not_polystable";
}

// ------------------------------------------------------------ balanced products

/// Literal check: for every pair of transition vertices, the product of
/// gamma_e^{+1} along edges walked towards the root and gamma_e^{-1} along
/// edges walked away from it equals 1.
inline bool balanced_by_paths(const ggw::ScaledType& t, const std::vector<Rational>& gamma) {
    std::vector<int> trans;
    for (int v = 0; v < static_cast<int>(t.vertices.size()); ++v)
        if (t.at(v).level == ggw::Level::transition) trans.push_back(v);
    auto ancestors = [&](int v) {
        std::vector<int> a{v};
        while (v != 0) a.push_back(v = t.at(v).parent);
        return a;
    };
    for (std::size_t x = 0; x < trans.size(); ++x)
        for (std::size_t y = x + 1; y < trans.size(); ++y) {
            auto pa = ancestors(trans[x]), pb = ancestors(trans[y]);
            int lca = 0;
            for (int u : pa)
                if (std::find(pb.begin(), pb.end(), u) != pb.end()) {
                    lca = u;
                    break;
                }
            Rational prod(1);
            for (int u = trans[x]; u != lca; u = t.at(u).parent) prod *= gamma[static_cast<std::size_t>(u - 1)];
            for (int u = trans[y]; u != lca; u = t.at(u).parent) prod /= gamma[static_cast<std::size_t>(u - 1)];
            if (!prod.is_one()) return false;
        }
    return true;
}

// ------------------------------------------------------------ Delta factors

/// Delta as the ratio of the two semi-infinite products cut at a common
/// lower bound (the tails below it cancel identically).
inline Rational delta_truncated(long m, const Rational& theta, const Rational& w, const Rational& zeta,
                                long lower = -20) {
    Rational num(1), den(1);
    for (long l = lower; l <= m; ++l) num *= theta + w + Rational(l) * zeta;
    for (long l = lower; l <= 0; ++l) den *= theta + w + Rational(l) * zeta;
    return num / den;
}

/// Straight-line framed-sheaf coefficient from the displayed formula using
/// delta_truncated; ordered pairs i != j.
inline Rational framed_coefficient(int k, int r, int d, const std::map<std::string, Rational>& pt) {
    const Rational z = pt.at("zeta"), x1 = pt.at("xi1"), x2 = pt.at("xi2");
    std::vector<Rational> th;
    for (int i = 1; i <= k; ++i) th.push_back(pt.at("theta" + std::to_string(i)));
    Rational total;
    std::vector<int> dd(static_cast<std::size_t>(k), 0);
    auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == k - 1) {
            dd[static_cast<std::size_t>(i)] = left;
            Rational t(1);
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b) {
                    if (a == b) continue;
                    long m = dd[static_cast<std::size_t>(a)] - dd[static_cast<std::size_t>(b)];
                    Rational tab = th[static_cast<std::size_t>(a)] - th[static_cast<std::size_t>(b)];
                    t *= delta_truncated(m, tab, x1 + x2, z) * delta_truncated(m, tab, Rational(0), z) /
                         (delta_truncated(m, tab, x1, z) * delta_truncated(m, tab, x2, z));
                }
            for (int a = 0; a < k; ++a) {
                long da = dd[static_cast<std::size_t>(a)];
                Rational f = delta_truncated(da, th[static_cast<std::size_t>(a)], Rational(0), z) *
                             delta_truncated(-da, -th[static_cast<std::size_t>(a)], x1 + x2, z);
                t /= f.pow(r);
            }
            total += t;
            return;
        }
        for (int x = 0; x <= left; ++x) {
            dd[static_cast<std::size_t>(i)] = x;
            self(self, i + 1, left - x);
        }
    };
    rec(rec, 0, d);
    return total;
}

// ------------------------------------------------------------ random helpers

inline Rational random_rational(std::mt19937_64& rng, long span = 9, long maxden = 7) {
    std::uniform_int_distribution<long> num(-span, span), den(1, maxden);
    return Rational(num(rng), den(rng));
}

inline Rational random_nonzero(std::mt19937_64& rng) {
    static const long vals[][2] = {{1, 1}, {-1, 1}, {2, 1}, {-2, 1}, {1, 2}, {-1, 2}, {3, 1}, {1, 3}, {-3, 2}};
    std::uniform_int_distribution<std::size_t> pick(0, 8);
    auto v = vals[pick(rng)];
    return Rational(v[0], v[1]);
}

/// Random gamma; with `make_balanced` the edges above transition vertices
/// are rescaled so that all transition vertices share one scale.
inline std::vector<Rational> random_gamma(const ggw::ScaledType& t, std::mt19937_64& rng, bool make_balanced) {
    std::vector<Rational> g;
    for (std::size_t e = 0; e < t.edge_count(); ++e) g.push_back(random_nonzero(rng));
    if (!make_balanced) return g;
    Rational target = random_nonzero(rng);
    for (int v = 1; v < static_cast<int>(t.vertices.size()); ++v) {
        if (t.at(v).level != ggw::Level::transition) continue;
        Rational above(1);
        for (int u = t.at(v).parent; u != 0; u = t.at(u).parent) above *= g[static_cast<std::size_t>(u - 1)];
        g[static_cast<std::size_t>(v - 1)] = target / above;
    }
    return g;
}

}  // namespace oracle

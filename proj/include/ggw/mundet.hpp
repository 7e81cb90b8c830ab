#pragma once

/**
 * @file mundet.hpp
 * @brief Ramanathan and Mundet weights for toric gauged maps.
 *
 * A gauged map from a curve to P(V)/G, G a torus, is modelled by the degree
 * d(P) of the bundle (a coweight), the set of weight spaces on which the
 * section is non-zero, and the integer d(u) = -c_1(L). Its Mundet weight is
 *
 *     mu(sigma, lambda) = min_{i : u_i != 0} ( (d(P), lambda) - mu_i . lambda + theta . lambda )
 *
 * where (., .) is the metric of the weight system. Semistability is
 * theta in hull{ mu_i - d(P)^vee }, d(P)^vee = M d(P), so classification
 * reduces to the point case on shifted weights.
 */

#include <optional>
#include <string>
#include <vector>

#include "ggw/errors.hpp"
#include "ggw/lattice_stability.hpp"

namespace ggw {

// ---------------------------------------------------------------- Ramanathan

struct FiltrationBlock {
    long rank;
    long degree;
};

/// Ranks and degrees of the graded pieces of a flag, sub-bundle first.
struct FiltrationData {
    long total_rank = 0;
    long total_degree = 0;
    std::vector<FiltrationBlock> blocks;

    void validate() const {
        if (total_rank <= 0) throw InputError("total rank must be positive");
        if (blocks.empty()) throw InputError("filtration needs at least one block");
        long r = 0, d = 0;
        for (const auto& b : blocks) {
            if (b.rank <= 0) throw InputError("block ranks must be positive");
            r += b.rank;
            d += b.degree;
        }
        if (r != total_rank) throw InputError("block ranks do not sum to the total rank");
        if (d != total_degree) throw InputError("block degrees do not sum to the total degree");
    }
};

/// sum_i lambda_i * degree_i, lambda dominant (non-increasing, not constant).
/// Positive means destabilizing: for rank 2 and lambda = (1, -1) the sign is
/// the sign of the degree of the sub-bundle.
inline Rational ramanathan_weight(const FiltrationData& f, const RationalVector& lambda) {
    f.validate();
    if (lambda.size() != f.blocks.size()) throw DomainError("need one lambda entry per block");
    bool constant = true;
    for (std::size_t i = 1; i < lambda.size(); ++i) {
        if (lambda[i] > lambda[i - 1]) throw DomainError("lambda is not dominant (must be non-increasing)");
        if (lambda[i] != lambda[0]) constant = false;
    }
    if (constant) throw DomainError("lambda is central (constant); it carries no information");
    Rational w;
    for (std::size_t i = 0; i < lambda.size(); ++i) w += lambda[i] * Rational(f.blocks[i].degree);
    return w;
}

// ---------------------------------------------------------------- Mundet

struct GaugedMapData {
    WeightSystem ws;
    std::vector<long> bundle_degree;          ///< d(P), a coweight
    std::vector<std::size_t> section_support; ///< 0-based; may be empty for generalized maps
    long section_degree = 0;                  ///< d(u)

    void validate() const {
        ws.validate();
        if (bundle_degree.size() != ws.rank) throw InputError("bundle degree length differs from rank");
        for (auto i : section_support)
            if (i >= ws.size()) throw InputError("section support index out of range");
    }

    /// d(P)^vee = M d(P).
    [[nodiscard]] RationalVector degree_dual() const { return mat_vec(ws.metric, to_rational(bundle_degree)); }

    /// mu_i - d(P)^vee over the section support.
    [[nodiscard]] std::vector<RationalVector> shifted_points() const {
        RationalVector dv = degree_dual();
        std::vector<RationalVector> pts;
        for (auto i : section_support) pts.push_back(ws.weight(i) - dv);
        return pts;
    }
};

/// Either a rational weight or +infinity (empty section support).
struct MundetWeight {
    bool infinite = false;
    Rational value;

    [[nodiscard]] bool destabilizing() const { return infinite || value.sign() > 0; }
    [[nodiscard]] std::string str() const { return infinite ? "+inf" : value.str(); }
};

inline MundetWeight mundet_weight_toric(const GaugedMapData& g, const RationalVector& lambda) {
    g.validate();
    if (lambda.size() != g.ws.rank) throw DomainError("coweight length differs from rank");
    require_nonzero(lambda);
    if (g.section_support.empty()) return {true, {}};
    // (d(P), lambda) in the metric.
    Rational pairing = dot(g.degree_dual(), lambda);
    std::optional<Rational> best;
    for (auto i : g.section_support) {
        Rational v = pairing - dot(g.ws.weight(i), lambda) + dot(g.ws.theta, lambda);
        if (!best || v < *best) best = v;
    }
    return {false, *best};
}

/// Total Mundet weight as the sum of its bundle and target parts.
inline Rational mundet_weight_total(const Rational& bundle_part, const Rational& target_part) {
    return bundle_part + target_part;
}

enum class MundetStatus { unstable, semistable, polystable, stable };

inline std::string to_string(MundetStatus s) {
    switch (s) {
        case MundetStatus::unstable: return "unstable";
        case MundetStatus::semistable: return "semistable";
        case MundetStatus::polystable: return "polystable";
        case MundetStatus::stable: return "stable";
    }
    return "?";
}

struct MundetVerdict {
    MundetStatus status = MundetStatus::unstable;
    std::optional<RationalVector> witness;
};

/// Polystable/stable refine exactly as in the point case (torus actions).
/// An empty section support is unstable; its witness is the first basis
/// coweight, along which the weight is +infinity.
inline MundetVerdict mundet_classify(const GaugedMapData& g) {
    g.validate();
    MundetVerdict out;
    if (g.section_support.empty()) {
        RationalVector e(g.ws.rank);
        e[0] = Rational(1);
        out.witness = e;
        return out;
    }
    auto v = classify_points(g.shifted_points(), g.ws.theta, g.ws.rank);
    switch (v.status) {
        case Stability::unstable: out.status = MundetStatus::unstable; break;
        case Stability::semistable_not_polystable: out.status = MundetStatus::semistable; break;
        case Stability::polystable_not_stable: out.status = MundetStatus::polystable; break;
        case Stability::stable: out.status = MundetStatus::stable; break;
    }
    out.witness = v.witness;
    return out;
}

// ---------------------------------------------------------------- quot dimensions

/// Projective dimension k(dP + du + 1) - 1 of the quot compactification for
/// C^x acting on C^k with all weights 1 over a genus-0 curve.
inline long quot_moduli_dimension(long k, long dP, long du) {
    if (k <= 0) throw DomainError("k must be positive");
    if (dP + du < 0) throw DomainError("empty moduli: dP + du < 0 leaves no sections");
    return k * (dP + du + 1) - 1;
}

/// Extrapolation to a general torus, still genus 0: the section space is
/// W = sum_i H^0(O(e_i)), e_i = mu_i(d(P)) + d(u), with h^0 = e_i + 1 for
/// e_i >= 0 and 0 otherwise. Returns dim P(W) = dim W - 1, or nullopt
/// when W = 0.
inline std::optional<long> quot_dimension_genus0(const std::vector<std::vector<long>>& weights,
                                                 const std::vector<long>& dP, long du) {
    long total = 0;
    for (const auto& mu : weights) {
        if (mu.size() != dP.size()) throw InputError("weight length differs from bundle degree length");
        long e = du;
        for (std::size_t a = 0; a < mu.size(); ++a) e += mu[a] * dP[a];
        if (e >= 0) total += e + 1;
    }
    if (total == 0) return std::nullopt;
    return total - 1;
}

}  // namespace ggw

#pragma once

/**
 * @file lattice_stability.hpp
 * @brief Hilbert-Mumford stability for a linearized torus action on P(V).
 *
 * A point [x_1 : ... : x_k] only matters through its support
 * {i : x_i != 0}. With weights mu_i and linearization shift theta the
 * Hilbert-Mumford weight along a coweight lambda is
 *
 *     mu(x, lambda) = min_{i in supp x} ( -mu_i . lambda ) + theta . lambda
 *
 * and the point is semistable iff theta lies in hull{mu_i : i in supp x},
 * polystable iff theta lies in the relative interior, and stable iff
 * moreover the affine span of those weights has full dimension r.
 *
 * Pairings of weights against coweights are plain dot products; the metric
 * of the WeightSystem is only used where weights and coweights must be
 * identified (the Kirwan-Ness strata here and d(P)^vee in mundet.hpp).
 * For a torus the positive Weyl chamber is the whole Lie algebra, so no
 * chamber restriction is applied to strata.
 */

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ggw/convex.hpp"
#include "ggw/errors.hpp"
#include "ggw/linalg.hpp"
#include "ggw/rational.hpp"

namespace ggw {

struct WeightSystem {
    std::size_t rank = 1;
    std::vector<std::vector<long>> weights;
    RationalVector theta;
    RationalMatrix metric;  ///< inner product on coweights

    /// Identity metric and zero theta.
    static WeightSystem standard(std::size_t rank, std::vector<std::vector<long>> weights) {
        WeightSystem ws;
        ws.rank = rank;
        ws.weights = std::move(weights);
        ws.theta.assign(rank, Rational(0));
        ws.metric.assign(rank, RationalVector(rank));
        for (std::size_t i = 0; i < rank; ++i) ws.metric[i][i] = Rational(1);
        ws.validate();
        return ws;
    }

    [[nodiscard]] std::size_t size() const { return weights.size(); }

    [[nodiscard]] RationalVector weight(std::size_t i) const { return to_rational(weights.at(i)); }

    /// Throws InputError on any broken invariant.
    void validate() const {
        if (rank == 0) throw InputError("torus rank must be positive");
        if (weights.empty()) throw InputError("weight system needs at least one weight");
        for (const auto& w : weights)
            if (w.size() != rank) throw InputError("weight vector length differs from rank");
        if (theta.size() != rank) throw InputError("theta length differs from rank");
        if (metric.size() != rank) throw InputError("metric must be rank x rank");
        for (const auto& row : metric)
            if (row.size() != rank) throw InputError("metric must be rank x rank");
        for (std::size_t i = 0; i < rank; ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (metric[i][j] != metric[j][i]) throw InputError("metric is not symmetric");
        // Sylvester: all leading principal minors positive.
        for (std::size_t m = 1; m <= rank; ++m) {
            RationalMatrix lead(m, RationalVector(m));
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) lead[i][j] = metric[i][j];
            if (determinant(lead).sign() <= 0) throw InputError("metric is not positive definite");
        }
    }
};

/// Non-empty set of 0-based weight indices, kept sorted.
class SupportSet {
public:
    SupportSet() = default;
    SupportSet(std::vector<std::size_t> indices, std::size_t k) : idx_(std::move(indices)) {
        std::sort(idx_.begin(), idx_.end());
        idx_.erase(std::unique(idx_.begin(), idx_.end()), idx_.end());
        if (idx_.empty()) throw InputError("support set must be non-empty");
        if (idx_.back() >= k) throw InputError("support index out of range");
    }

    /// From 1-based indices as they appear in files and on the command line.
    static SupportSet from_one_based(const std::vector<long>& indices, std::size_t k) {
        std::vector<std::size_t> z;
        for (long i : indices) {
            if (i < 1) throw InputError("support indices are 1-based");
            z.push_back(static_cast<std::size_t>(i - 1));
        }
        return SupportSet(std::move(z), k);
    }

    /// Support from a bitmask over k indices.
    static SupportSet from_mask(unsigned long mask, std::size_t k) {
        std::vector<std::size_t> z;
        for (std::size_t i = 0; i < k; ++i)
            if (mask >> i & 1UL) z.push_back(i);
        return SupportSet(std::move(z), k);
    }

    [[nodiscard]] const std::vector<std::size_t>& indices() const { return idx_; }
    [[nodiscard]] bool contains(std::size_t i) const { return std::binary_search(idx_.begin(), idx_.end(), i); }
    [[nodiscard]] std::string str() const {
        std::string s = "{";
        for (std::size_t i = 0; i < idx_.size(); ++i) s += (i ? "," : "") + std::to_string(idx_[i] + 1);
        return s + "}";
    }

private:
    std::vector<std::size_t> idx_;
};

enum class Stability { unstable, semistable_not_polystable, polystable_not_stable, stable };

inline std::string to_string(Stability s) {
    switch (s) {
        case Stability::unstable: return "unstable";
        case Stability::semistable_not_polystable: return "semistable_not_polystable";
        case Stability::polystable_not_stable: return "polystable_not_stable";
        case Stability::stable: return "stable";
    }
    return "?";
}

struct StabilityVerdict {
    Stability status = Stability::unstable;
    std::optional<RationalVector> witness;  ///< present iff unstable
};

inline void require_nonzero(const RationalVector& lambda) {
    if (is_zero_vector(lambda)) throw DomainError("one-parameter subgroup must be non-zero");
}

/// min_{i in s} (theta - mu_i) . lambda  for rational points mu_i.
inline Rational hm_weight_points(const std::vector<RationalVector>& points, const RationalVector& theta,
                                 const RationalVector& lambda) {
    require_nonzero(lambda);
    std::optional<Rational> best;
    for (const auto& mu : points) {
        Rational v = -dot(mu, lambda);
        if (!best || v < *best) best = v;
    }
    return *best + dot(theta, lambda);
}

inline std::vector<RationalVector> support_points(const WeightSystem& ws, const SupportSet& s) {
    std::vector<RationalVector> pts;
    for (auto i : s.indices()) pts.push_back(ws.weight(i));
    return pts;
}

/// Hilbert-Mumford weight mu(x, lambda) of any point with support s.
inline Rational hm_weight(const WeightSystem& ws, const SupportSet& s, const RationalVector& lambda) {
    if (lambda.size() != ws.rank) throw DomainError("coweight length differs from rank");
    return hm_weight_points(support_points(ws, s), ws.theta, lambda);
}

/// Classification of theta against hull(points) in Q^rank. Unstable verdicts
/// carry the lexicographically smallest separating primitive normal.
inline StabilityVerdict classify_points(const std::vector<RationalVector>& points, const RationalVector& theta,
                                        std::size_t rank) {
    PointHull hull(points, rank);
    StabilityVerdict v;
    if (!hull.contains(theta)) {
        v.status = Stability::unstable;
        v.witness = hull.separating_normals(theta).front();
        return v;
    }
    if (!hull.relative_interior_contains(theta)) v.status = Stability::semistable_not_polystable;
    else if (hull.dim() == rank) v.status = Stability::stable;
    else v.status = Stability::polystable_not_stable;
    return v;
}

inline StabilityVerdict classify(const WeightSystem& ws, const SupportSet& s) {
    return classify_points(support_points(ws, s), ws.theta, ws.rank);
}

struct KNStratum {
    RationalVector lambda;                  ///< optimal destabilizing coweight
    Rational norm_squared;                  ///< (lambda, lambda) in the metric
    std::vector<std::size_t> fixed_support; ///< {i : (theta - mu_i) . lambda = (lambda, lambda)}
    std::vector<std::size_t> upper_support; ///< {i : (theta - mu_i) . lambda >= (lambda, lambda)}

    /// Human-readable support pattern.
    [[nodiscard]] std::string pattern() const {
        auto set = [](const std::vector<std::size_t>& v) {
            std::string s = "{";
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i] + 1);
            return s + "}";
        };
        return "supp in " + set(upper_support) + ", lambda-optimal face on " + set(fixed_support);
    }
};

namespace detail {

inline RationalMatrix dual_metric(const WeightSystem& ws) {
    auto inv = inverse(ws.metric);
    if (!inv) throw InputError("metric is singular");
    return *inv;
}

}  // namespace detail

/**
 * Kirwan-Ness strata of the unstable locus.
 *
 * For every non-empty index set S the closest point beta of
 * hull{theta - mu_i : i in S} to the origin is computed in the dual metric
 * M^{-1}, and lambda = M^{-1} beta is the coweight with lambda^vee = beta. The candidate
 * is kept when it is non-zero and every i in S pairs to exactly
 * (lambda, lambda), which is the fixed-component condition
 * mu(lambda) = (lambda, lambda). Results are deduplicated by lambda and
 * returned in lexicographic order of lambda.
 *
 * Sign convention: the weight of z^lambda on the fibre of the linearization
 * over the fixed component is (theta - mu_i) . lambda, the same convention as
 * hm_weight. With it a support is unstable iff it matches a stratum.
 */
inline std::vector<KNStratum> kn_strata(const WeightSystem& ws) {
    ws.validate();
    const std::size_t k = ws.size();
    if (k > 20) throw DomainError("too many weights for stratum enumeration");
    RationalMatrix dual = detail::dual_metric(ws);
    std::vector<RationalVector> shifted;
    for (std::size_t i = 0; i < k; ++i) shifted.push_back(ws.theta - ws.weight(i));

    std::map<RationalVector, KNStratum> found;
    for (unsigned long mask = 1; mask < (1UL << k); ++mask) {
        std::vector<RationalVector> pts;
        for (std::size_t i = 0; i < k; ++i)
            if (mask >> i & 1UL) pts.push_back(shifted[i]);
        RationalVector beta = closest_point_to_origin(pts, dual);
        if (is_zero_vector(beta)) continue;
        RationalVector lambda = mat_vec(dual, beta);
        Rational nn = dot(beta, lambda);
        bool on_face = true;
        for (const auto& p : pts)
            if (dot(p, lambda) != nn) on_face = false;
        if (!on_face || found.count(lambda)) continue;
        KNStratum st{lambda, nn, {}, {}};
        for (std::size_t i = 0; i < k; ++i) {
            Rational v = dot(shifted[i], lambda);
            if (v == nn) st.fixed_support.push_back(i);
            if (v >= nn) st.upper_support.push_back(i);
        }
        found.emplace(lambda, std::move(st));
    }
    std::vector<KNStratum> out;
    for (auto& [_, st] : found) out.push_back(std::move(st));
    return out;
}

/// True when points with support s lie in the stratum: s sits inside the
/// upper set and the optimal point is in the hull of the face s meets.
inline bool stratum_covers(const WeightSystem& ws, const KNStratum& st, const SupportSet& s) {
    for (auto i : s.indices())
        if (!std::binary_search(st.upper_support.begin(), st.upper_support.end(), i)) return false;
    std::vector<RationalVector> face;
    for (auto i : s.indices())
        if (std::binary_search(st.fixed_support.begin(), st.fixed_support.end(), i))
            face.push_back(ws.theta - ws.weight(i));
    if (face.empty()) return false;
    RationalVector beta = mat_vec(ws.metric, st.lambda);
    return PointHull(face, ws.rank).contains(beta);
}

}  // namespace ggw

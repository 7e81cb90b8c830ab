#pragma once

/**
 * @file convex.hpp
 * @brief Exact half-space descriptions of small rational polytopes.
 *
 * The hull of a finite point set P in Q^r is described by
 *   - equalities  a . x = a . p0  for a basis a of the annihilator of the
 *     direction space of aff(P), and
 *   - facet inequalities  n . x <= b  with n an outer normal lying in the
 *     direction space (Euclidean orthogonal to every equality normal).
 *
 * Facets are found by direct enumeration: every choice of d affinely
 * independent points (d = dim aff P) determines a candidate hyperplane
 * inside aff(P), kept when all of P lies on one side. This is the
 * double-description idea specialised to the sizes this library meets.
 * All normals are stored as primitive integer vectors.
 */

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "ggw/errors.hpp"
#include "ggw/linalg.hpp"

namespace ggw {

struct HalfSpace {
    RationalVector normal;  ///< primitive integer outer normal
    Rational offset;        ///< normal . x <= offset on the hull
};

class PointHull {
public:
    PointHull(std::vector<RationalVector> points, std::size_t ambient_dim)
        : pts_(std::move(points)), r_(ambient_dim) {
        if (pts_.empty()) throw DomainError("hull of an empty point set");
        for (const auto& p : pts_)
            if (p.size() != r_) throw DomainError("point of wrong dimension");
        std::sort(pts_.begin(), pts_.end());
        pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
        build();
    }

    [[nodiscard]] std::size_t ambient_dim() const { return r_; }
    [[nodiscard]] std::size_t dim() const { return dim_; }
    /// Distinct points, sorted.
    [[nodiscard]] const std::vector<RationalVector>& points() const { return pts_; }
    [[nodiscard]] const std::vector<HalfSpace>& facets() const { return facets_; }
    /// Normals a with a . x constant on the hull (primitive, integer).
    [[nodiscard]] const std::vector<RationalVector>& equality_normals() const { return eqs_; }

    [[nodiscard]] bool contains(const RationalVector& x) const {
        for (const auto& a : eqs_)
            if (dot(a, x) != dot(a, pts_[0])) return false;
        for (const auto& f : facets_)
            if (dot(f.normal, x) > f.offset) return false;
        return true;
    }

    /// Relative interior; for a single point this is the point itself.
    [[nodiscard]] bool relative_interior_contains(const RationalVector& x) const {
        for (const auto& a : eqs_)
            if (dot(a, x) != dot(a, pts_[0])) return false;
        for (const auto& f : facets_)
            if (dot(f.normal, x) >= f.offset) return false;
        return true;
    }

    /// Every description normal n (facet normals and both signs of the
    /// equality normals) with n . x > max_{p in hull} n . p, sorted
    /// lexicographically.
    [[nodiscard]] std::vector<RationalVector> separating_normals(const RationalVector& x) const {
        std::set<RationalVector> out;
        for (const auto& f : facets_)
            if (dot(f.normal, x) > f.offset) out.insert(f.normal);
        for (const auto& a : eqs_) {
            Rational ax = dot(a, x), ap = dot(a, pts_[0]);
            if (ax > ap) out.insert(a);
            if (ax < ap) out.insert(negated(a));
        }
        return {out.begin(), out.end()};
    }

private:
    void build() {
        const RationalVector& p0 = pts_[0];
        RationalMatrix diffs;
        for (std::size_t i = 1; i < pts_.size(); ++i) diffs.push_back(pts_[i] - p0);
        dim_ = diffs.empty() ? 0 : rank(diffs, r_);
        for (auto& a : null_space(diffs, r_)) eqs_.push_back(primitive_integer(a));
        if (dim_ == 0) return;

        // Candidate facets: d-subsets {q_0, ..., q_{d-1}} of the points; the
        // normal n is orthogonal to the equality normals and to q_j - q_0.
        std::set<RationalVector> seen;
        std::vector<std::size_t> idx(dim_);
        auto consider = [&]() {
            RationalMatrix rows = eqs_;
            for (std::size_t j = 1; j < dim_; ++j) rows.push_back(pts_[idx[j]] - pts_[idx[0]]);
            RationalVector cross = cross_normal(rows, r_);
            if (is_zero_vector(cross)) return;  // chosen points affinely dependent
            RationalVector n = primitive_integer(cross);
            Rational ref = dot(n, pts_[idx[0]]);
            bool le = true, ge = true;
            for (const auto& p : pts_) {
                Rational v = dot(n, p);
                if (v > ref) le = false;
                if (v < ref) ge = false;
            }
            if (!le && !ge) return;
            if (!le) {
                n = negated(n);
                ref = -ref;
            }
            if (seen.insert(n).second) facets_.push_back({n, ref});
        };
        auto rec = [&](auto&& self, std::size_t pos, std::size_t start) -> void {
            if (pos == dim_) {
                consider();
                return;
            }
            for (std::size_t i = start; i < pts_.size(); ++i) {
                idx[pos] = i;
                self(self, pos + 1, i + 1);
            }
        };
        rec(rec, 0, 0);
        std::sort(facets_.begin(), facets_.end(),
                  [](const HalfSpace& a, const HalfSpace& b) { return a.normal < b.normal; });
    }

    std::vector<RationalVector> pts_;
    std::size_t r_;
    std::size_t dim_ = 0;
    std::vector<RationalVector> eqs_;
    std::vector<HalfSpace> facets_;
};

/**
 * Closest point of conv(points) to the origin in the quadratic form `gram`
 * (symmetric positive definite). Exact: every affinely independent subset is
 * tried; the minimiser over its affine hull is accepted when its barycentric
 * coordinates are non-negative and it satisfies the global optimality
 * condition  (q - p)^T G p >= 0  for every point q.
 */
inline RationalVector closest_point_to_origin(const std::vector<RationalVector>& points,
                                              const RationalMatrix& gram) {
    if (points.empty()) throw DomainError("closest point of an empty set");
    const std::size_t r = points[0].size();
    auto form = [&](const RationalVector& a, const RationalVector& b) { return dot(a, mat_vec(gram, b)); };
    auto optimal = [&](const RationalVector& p) {
        Rational pp = form(p, p);
        for (const auto& q : points)
            if (form(q, p) < pp) return false;
        return true;
    };

    const std::size_t n = points.size();
    const std::size_t max_size = std::min(n, r + 1);
    std::vector<std::size_t> idx;
    std::optional<RationalVector> found;
    auto try_subset = [&]() {
        const std::size_t m = idx.size();
        // KKT system: sum_t a_t <q_s, q_t> - nu = 0, sum_t a_t = 1.
        RationalMatrix kkt(m + 1, RationalVector(m + 1));
        RationalVector rhs(m + 1);
        for (std::size_t s = 0; s < m; ++s) {
            for (std::size_t t = 0; t < m; ++t) kkt[s][t] = form(points[idx[s]], points[idx[t]]);
            kkt[s][m] = Rational(-1);
            kkt[m][s] = Rational(1);
        }
        rhs[m] = Rational(1);
        auto sol = solve(kkt, rhs);
        if (!sol) return;
        RationalVector p(r);
        for (std::size_t t = 0; t < m; ++t) {
            if ((*sol)[t].sign() < 0) return;
            p = p + (*sol)[t] * points[idx[t]];
        }
        if (optimal(p)) found = p;
    };
    auto rec = [&](auto&& self, std::size_t start, std::size_t size) -> void {
        if (found) return;
        if (idx.size() == size) {
            try_subset();
            return;
        }
        for (std::size_t i = start; i < n && !found; ++i) {
            idx.push_back(i);
            self(self, i + 1, size);
            idx.pop_back();
        }
    };
    for (std::size_t size = 1; size <= max_size && !found; ++size) rec(rec, 0, size);
    if (!found) throw DomainError("closest-point search failed");
    return *found;
}

}  // namespace ggw

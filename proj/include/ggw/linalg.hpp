#pragma once

// Dense exact linear algebra over Q for the tiny systems the convex-geometry
// code needs (a handful of rows and columns).

#include <numeric>
#include <optional>
#include <vector>

#include "ggw/rational.hpp"

namespace ggw {

using RationalMatrix = std::vector<RationalVector>;

/// Reduced row echelon form in place, pivoting only in the first `cols`
/// columns; any trailing columns are carried along. Returns the pivot columns.
inline std::vector<std::size_t> rref(RationalMatrix& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.size() && m[sel][col].is_zero()) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[sel], m[row]);
        Rational inv = m[row][col].reciprocal();
        for (auto& x : m[row]) x *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col].is_zero()) continue;
            Rational f = m[r][col];
            for (std::size_t c = col; c < m[r].size(); ++c) m[r][c] -= f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t rank(RationalMatrix m, std::size_t cols) { return rref(m, cols).size(); }

/// Basis of {x : m x = 0}.
inline std::vector<RationalVector> null_space(RationalMatrix m, std::size_t cols) {
    auto pivots = rref(m, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<RationalVector> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        RationalVector v(cols);
        v[free] = Rational(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Solves a x = b for square nonsingular a; nullopt when singular.
inline std::optional<RationalVector> solve(const RationalMatrix& a, const RationalVector& b) {
    const std::size_t n = a.size();
    RationalMatrix aug(n, RationalVector(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
        aug[i][n] = b[i];
    }
    auto pivots = rref(aug, n);
    if (pivots.size() < n) return std::nullopt;
    RationalVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = aug[i][n];
    return x;
}

inline Rational determinant(RationalMatrix m) {
    const std::size_t n = m.size();
    Rational det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = col;
        while (sel < n && m[sel][col].is_zero()) ++sel;
        if (sel == n) return Rational(0);
        if (sel != col) {
            std::swap(m[sel], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero()) continue;
            Rational f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

inline std::optional<RationalMatrix> inverse(const RationalMatrix& a) {
    const std::size_t n = a.size();
    RationalMatrix aug(n, RationalVector(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
        aug[i][n + i] = Rational(1);
    }
    if (rref(aug, n).size() < n) return std::nullopt;
    RationalMatrix inv(n, RationalVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

inline RationalVector mat_vec(const RationalMatrix& m, const RationalVector& v) {
    RationalVector out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) out[i] = dot(m[i], v);
    return out;
}

/// Scales a non-zero rational vector to the primitive integer vector on the
/// same ray.
/// Generalized cross product of r - 1 vectors in Q^r: the cofactor vector,
/// orthogonal to every row, and zero iff the rows are dependent.
inline RationalVector cross_normal(const RationalMatrix& rows, std::size_t r) {
    RationalVector n(r);
    if (r == 1) {
        n[0] = Rational(1);
        return n;
    }
    if (r == 2) {
        n[0] = rows[0][1];
        n[1] = -rows[0][0];
        return n;
    }
    RationalMatrix minor(r - 1, RationalVector(r - 1));
    for (std::size_t skip = 0; skip < r; ++skip) {
        for (std::size_t i = 0; i + 1 < r; ++i)
            for (std::size_t j = 0, c = 0; j < r; ++j)
                if (j != skip) minor[i][c++] = rows[i][j];
        Rational d = determinant(minor);
        n[skip] = skip % 2 == 0 ? d : -d;
    }
    return n;
}

inline RationalVector primitive_integer(const RationalVector& v) {
    mpz_class l = 1, g = 0;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.denominator().get_mpz_t());
    std::vector<mpz_class> ints;
    for (const auto& x : v) {
        mpz_class n = x.numerator() * (l / x.denominator());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
        ints.push_back(n);
    }
    RationalVector out;
    for (auto& n : ints) out.emplace_back(g == 0 ? mpz_class(0) : mpz_class(n / g));
    return out;
}

inline RationalVector operator-(const RationalVector& a, const RationalVector& b) {
    RationalVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline RationalVector operator+(const RationalVector& a, const RationalVector& b) {
    RationalVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline RationalVector operator*(const Rational& c, const RationalVector& a) {
    RationalVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = c * a[i];
    return out;
}

inline RationalVector negated(const RationalVector& a) { return Rational(-1) * a; }

}  // namespace ggw

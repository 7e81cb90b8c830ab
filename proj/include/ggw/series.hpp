#pragma once

/**
 * @file series.hpp
 * @brief Novikov-type power series truncated at a total degree.
 *
 * The degree variable is either a single symbol q or a tuple q1..qr for
 * multi-degrees. Only degree vectors of total degree <= truncation are ever
 * stored; combining two series truncates at the smaller bound.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ggw/errors.hpp"
#include "ggw/ratfunc.hpp"

namespace ggw {

using Degree = std::vector<int>;

inline int total_degree(const Degree& d) {
    int s = 0;
    for (int x : d) s += x;
    return s;
}

struct DegreeLess {
    bool operator()(const Degree& a, const Degree& b) const {
        int da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return a < b;
    }
};

/// All non-negative degree vectors of length `arity` with total degree <= bound,
/// in graded-lex order.
inline std::vector<Degree> degrees_up_to(std::size_t arity, int bound) {
    std::vector<Degree> out;
    Degree cur(arity, 0);
    auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
        if (pos == arity) {
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[pos] = v;
            self(self, pos + 1, left - v);
        }
        cur[pos] = 0;
    };
    if (arity == 0) return {Degree{}};
    rec(rec, 0, bound);
    std::sort(out.begin(), out.end(), DegreeLess{});
    return out;
}

class TruncatedSeries {
public:
    using CoeffMap = std::map<Degree, RationalFunction, DegreeLess>;

    TruncatedSeries(std::vector<std::string> degree_vars, int truncation)
        : vars_(std::move(degree_vars)), trunc_(truncation) {
        if (vars_.empty()) throw DomainError("series needs at least one degree variable");
        if (trunc_ < 0) throw DomainError("negative truncation");
    }

    /// Single-variable series in `q`.
    static TruncatedSeries in_q(int truncation, const std::string& q = "q") {
        return TruncatedSeries({q}, truncation);
    }

    /// Series in q (arity 1) or q1..qr.
    static TruncatedSeries in_degree_vars(std::size_t arity, int truncation) {
        if (arity == 1) return in_q(truncation);
        std::vector<std::string> v;
        for (std::size_t i = 1; i <= arity; ++i) v.push_back("q" + std::to_string(i));
        return TruncatedSeries(std::move(v), truncation);
    }

    [[nodiscard]] const std::vector<std::string>& degree_vars() const { return vars_; }
    [[nodiscard]] std::size_t arity() const { return vars_.size(); }
    [[nodiscard]] int truncation() const { return trunc_; }
    [[nodiscard]] const CoeffMap& coefficients() const { return coeffs_; }
    [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }

    /// Sets the coefficient of q^d. Degrees above the truncation are dropped.
    void set(const Degree& d, RationalFunction c) {
        check_degree(d);
        if (total_degree(d) > trunc_) return;
        if (c.is_zero()) coeffs_.erase(d);
        else coeffs_[d] = std::move(c);
    }
    void set(int d, RationalFunction c) { set(Degree{d}, std::move(c)); }

    [[nodiscard]] RationalFunction coefficient(const Degree& d) const {
        check_degree(d);
        auto it = coeffs_.find(d);
        return it == coeffs_.end() ? RationalFunction() : it->second;
    }
    [[nodiscard]] RationalFunction coefficient(int d) const { return coefficient(Degree{d}); }

    /// Applies `f` to every stored coefficient, dropping those that become zero.
    template <class F>
    [[nodiscard]] TruncatedSeries map_coefficients(F&& f) const {
        TruncatedSeries out(vars_, trunc_);
        for (const auto& [d, c] : coeffs_) out.set(d, f(d, c));
        return out;
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.check_arity(b);
        TruncatedSeries out(a.vars_, std::min(a.trunc_, b.trunc_));
        for (const auto& [d, c] : a.coeffs_) out.add_to(d, c);
        for (const auto& [d, c] : b.coeffs_) out.add_to(d, c);
        return out;
    }

    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a + b.scaled(RationalFunction(-1));
    }

    /// Cauchy product of degree vectors.
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.check_arity(b);
        TruncatedSeries out(a.vars_, std::min(a.trunc_, b.trunc_));
        for (const auto& [da, ca] : a.coeffs_) {
            for (const auto& [db, cb] : b.coeffs_) {
                Degree d(da.size());
                for (std::size_t i = 0; i < d.size(); ++i) d[i] = da[i] + db[i];
                if (total_degree(d) > out.trunc_) continue;
                out.add_to(d, ca * cb);
            }
        }
        return out;
    }

    [[nodiscard]] TruncatedSeries scaled(const RationalFunction& s) const {
        TruncatedSeries out(vars_, trunc_);
        if (s.is_zero()) return out;
        for (const auto& [d, c] : coeffs_) out.set(d, c * s);
        return out;
    }

    /// Multiplies by q^shift (single-variable series), keeping the truncation.
    [[nodiscard]] TruncatedSeries shifted(const Degree& shift) const {
        check_degree(shift);
        TruncatedSeries out(vars_, trunc_);
        for (const auto& [d, c] : coeffs_) {
            Degree e(d.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = d[i] + shift[i];
            out.set(e, c);
        }
        return out;
    }

    [[nodiscard]] TruncatedSeries truncated(int bound) const {
        TruncatedSeries out(vars_, std::min(bound, trunc_));
        for (const auto& [d, c] : coeffs_) out.set(d, c);
        return out;
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        if (a.vars_ != b.vars_ || a.trunc_ != b.trunc_) return false;
        if (a.coeffs_.size() != b.coeffs_.size()) return false;
        auto it = b.coeffs_.begin();
        for (const auto& [d, c] : a.coeffs_) {
            if (d != it->first || !(c == it->second)) return false;
            ++it;
        }
        return true;
    }

    [[nodiscard]] std::string degree_monomial(const Degree& d) const {
        Monomial m;
        for (std::size_t i = 0; i < d.size(); ++i)
            if (d[i] > 0) m[vars_[i]] = static_cast<unsigned>(d[i]);
        return monomial_str(m);
    }

    /// Canonical text, lowest degree first. Constant coefficients print as
    /// plain polynomial terms ("1 - 1/2*q + 3*q^2"); other coefficients are
    /// parenthesized: "(1)/(1 - Xinv1*zeta)*q".
    [[nodiscard]] std::string str() const {
        if (coeffs_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [d, c] : coeffs_) {
            std::string qm = degree_monomial(d);
            bool neg = false;
            std::string body;
            if (c.is_constant()) {
                Rational v = c.constant_value();
                neg = v.sign() < 0;
                Rational a = neg ? -v : v;
                if (qm.empty()) body = a.str();
                else if (a.is_one()) body = qm;
                else body = a.str() + "*" + qm;
            } else {
                body = "(" + c.str() + ")";
                if (!qm.empty()) body += "*" + qm;
            }
            if (first) s += (neg ? "-" : "") + body;
            else s += (neg ? " - " : " + ") + body;
            first = false;
        }
        return s;
    }

private:
    void check_degree(const Degree& d) const {
        if (d.size() != vars_.size()) throw DomainError("degree vector arity mismatch");
        for (int x : d)
            if (x < 0) throw DomainError("negative degree");
    }
    void check_arity(const TruncatedSeries& o) const {
        if (o.vars_.size() != vars_.size()) throw DomainError("series arity mismatch");
    }
    void add_to(const Degree& d, const RationalFunction& c) {
        if (total_degree(d) > trunc_) return;
        auto it = coeffs_.find(d);
        if (it == coeffs_.end()) {
            if (!c.is_zero()) coeffs_.emplace(d, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }

    std::vector<std::string> vars_;
    int trunc_;
    CoeffMap coeffs_;
};

}  // namespace ggw

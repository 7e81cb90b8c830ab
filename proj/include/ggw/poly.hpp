#pragma once

/**
 * @file poly.hpp
 * @brief Sparse multivariate polynomials over Q.
 *
 * A polynomial carries its own variable universe (sorted by name). Binary
 * operations extend both operands to the union of their universes, so
 * callers never have to declare variables up front.
 *
 * Terms are kept in graded-lexicographic order of their exponent vectors;
 * the canonical text form lists them in that order, lowest first, e.g.
 * "1 - 1/2*q + 3*q^2".
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ggw/errors.hpp"
#include "ggw/rational.hpp"

namespace ggw {

/// Variable name -> exponent. Zero exponents are never stored.
using Monomial = std::map<std::string, unsigned>;

/// A monomial with a rational coefficient.
struct Term {
    Rational coeff{1};
    Monomial mono;
};

inline unsigned total_degree(const Monomial& m) {
    unsigned d = 0;
    for (const auto& [_, e] : m) d += e;
    return d;
}

/// True when `a` divides `b`.
inline bool divides(const Monomial& a, const Monomial& b) {
    for (const auto& [v, e] : a) {
        auto it = b.find(v);
        if (it == b.end() || it->second < e) return false;
    }
    return true;
}

inline std::string monomial_str(const Monomial& m) {
    std::string s;
    for (const auto& [v, e] : m) {
        if (!s.empty()) s += "*";
        s += v;
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

class MultiPoly {
public:
    using Exponents = std::vector<std::uint32_t>;

    struct GrlexLess {
        bool operator()(const Exponents& a, const Exponents& b) const {
            std::uint64_t da = 0, db = 0;
            for (auto e : a) da += e;
            for (auto e : b) db += e;
            if (da != db) return da < db;
            return a < b;
        }
    };
    using TermMap = std::map<Exponents, Rational, GrlexLess>;

    MultiPoly() = default;
    MultiPoly(const Rational& c) {  // NOLINT: constants promote to polynomials
        if (!c.is_zero()) terms_.emplace(Exponents{}, c);
    }
    MultiPoly(long c) : MultiPoly(Rational(c)) {}  // NOLINT
    MultiPoly(int c) : MultiPoly(Rational(c)) {}   // NOLINT

    static MultiPoly variable(const std::string& name) { return monomial(Rational(1), {{name, 1}}); }

    static MultiPoly monomial(const Rational& c, const Monomial& m) {
        MultiPoly p;
        if (c.is_zero()) return p;
        for (const auto& [v, e] : m)
            if (e > 0) p.vars_.push_back(v);
        Exponents ex;
        for (const auto& v : p.vars_) ex.push_back(m.at(v));
        p.terms_.emplace(std::move(ex), c);
        return p;
    }

    static MultiPoly from_term(const Term& t) { return monomial(t.coeff, t.mono); }

    [[nodiscard]] const std::vector<std::string>& vars() const { return vars_; }
    [[nodiscard]] const TermMap& raw_terms() const { return terms_; }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }

    [[nodiscard]] bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && total(terms_.begin()->first) == 0);
    }

    /// Value of a constant polynomial; throws if not constant.
    [[nodiscard]] Rational constant_value() const {
        if (!is_constant()) throw DomainError("polynomial is not constant");
        return terms_.empty() ? Rational(0) : terms_.begin()->second;
    }

    /// Coefficient of the constant term.
    [[nodiscard]] Rational constant_term() const {
        auto it = terms_.find(Exponents(vars_.size(), 0));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    [[nodiscard]] std::vector<Term> terms() const {
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& [ex, c] : terms_) out.push_back({c, to_monomial(ex)});
        return out;
    }

    [[nodiscard]] unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& [ex, _] : terms_) d = std::max<unsigned>(d, total(ex));
        return d;
    }

    [[nodiscard]] unsigned degree_in(const std::string& var) const {
        auto idx = index_of(var);
        if (idx < 0) return 0;
        unsigned d = 0;
        for (const auto& [ex, _] : terms_) d = std::max<unsigned>(d, ex[static_cast<std::size_t>(idx)]);
        return d;
    }

    /// Variables that actually occur with a non-zero exponent.
    [[nodiscard]] std::vector<std::string> support_vars() const {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            for (const auto& [ex, _] : terms_)
                if (ex[i] > 0) {
                    out.push_back(vars_[i]);
                    break;
                }
        }
        return out;
    }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& [_, c] : r.terms_) c = -c;
        return r;
    }

    MultiPoly& operator+=(const MultiPoly& o) { return add_scaled(o, Rational(1)); }
    MultiPoly& operator-=(const MultiPoly& o) { return add_scaled(o, Rational(-1)); }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        auto universe = merge_vars(a.vars_, b.vars_);
        MultiPoly x = a.extended(universe), y = b.extended(universe);
        MultiPoly r;
        r.vars_ = universe;
        Exponents ex(universe.size());
        for (const auto& [ea, ca] : x.terms_) {
            for (const auto& [eb, cb] : y.terms_) {
                for (std::size_t i = 0; i < ex.size(); ++i) ex[i] = ea[i] + eb[i];
                auto [it, inserted] = r.terms_.try_emplace(ex, ca * cb);
                if (!inserted) {
                    it->second += ca * cb;
                    if (it->second.is_zero()) r.terms_.erase(it);
                }
            }
        }
        return r;
    }

    MultiPoly scaled(const Rational& c) const {
        if (c.is_zero()) return {};
        MultiPoly r = *this;
        for (auto& [_, v] : r.terms_) v *= c;
        return r;
    }

    [[nodiscard]] MultiPoly pow(unsigned e) const {
        MultiPoly out(1), base = *this;
        while (e) {
            if (e & 1U) out *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return out;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
        return (a - b).is_zero();
    }

    /// Full evaluation. Every variable that occurs must be assigned.
    [[nodiscard]] Rational evaluate(const std::map<std::string, Rational>& point) const {
        std::vector<std::vector<Rational>> powers(vars_.size());
        Rational sum;
        for (const auto& [ex, c] : terms_) {
            Rational t = c;
            for (std::size_t i = 0; i < ex.size(); ++i) {
                if (ex[i] == 0) continue;
                auto it = point.find(vars_[i]);
                if (it == point.end()) throw DomainError("no value for variable '" + vars_[i] + "'");
                auto& cache = powers[i];
                if (cache.empty()) cache.push_back(Rational(1));
                while (cache.size() <= ex[i]) cache.push_back(cache.back() * it->second);
                t *= cache[ex[i]];
            }
            sum += t;
        }
        return sum;
    }

    /// Replaces `var` by `value` everywhere (a ring homomorphism).
    [[nodiscard]] MultiPoly substitute(const std::string& var, const MultiPoly& value) const {
        auto idx = index_of(var);
        if (idx < 0) return *this;
        auto i = static_cast<std::size_t>(idx);
        std::vector<MultiPoly> powers{MultiPoly(1)};
        MultiPoly out;
        for (const auto& [ex, c] : terms_) {
            while (powers.size() <= ex[i]) powers.push_back(powers.back() * value);
            Monomial rest = to_monomial(ex);
            rest.erase(var);
            out += monomial(c, rest) * powers[ex[i]];
        }
        return out;
    }

    /// Partial evaluation at rational values.
    [[nodiscard]] MultiPoly substitute(const std::map<std::string, Rational>& values) const {
        MultiPoly out = *this;
        for (const auto& [v, x] : values) out = out.substitute(v, MultiPoly(x));
        return out;
    }

    /// Leading term in graded-lex order (the largest exponent vector).
    [[nodiscard]] Term leading_term() const {
        if (is_zero()) throw DomainError("leading term of zero polynomial");
        auto it = std::prev(terms_.end());
        return {it->second, to_monomial(it->first)};
    }

    /// Positive rational c such that this / c has coprime integer coefficients
    /// and a positive leading coefficient; sign is folded into c.
    [[nodiscard]] Rational content() const {
        if (is_zero()) return Rational(1);
        mpz_class g = 0, l = 1;
        for (const auto& [_, c] : terms_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.numerator().get_mpz_t());
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.denominator().get_mpz_t());
        }
        Rational out(mpq_class(g, l));
        if (std::prev(terms_.end())->second.sign() < 0) out = -out;
        return out;
    }

    [[nodiscard]] std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [ex, c] : terms_) {
            std::string mono = monomial_str(to_monomial(ex));
            bool neg = c.sign() < 0;
            Rational a = neg ? -c : c;
            std::string body;
            if (mono.empty()) body = a.str();
            else if (a.is_one()) body = mono;
            else body = a.str() + "*" + mono;
            if (first) s += (neg ? "-" : "") + body;
            else s += (neg ? " - " : " + ") + body;
            first = false;
        }
        return s;
    }

    /// Same polynomial written over a larger universe (must contain vars()).
    [[nodiscard]] MultiPoly extended(const std::vector<std::string>& universe) const {
        if (universe == vars_) return *this;
        std::vector<std::size_t> where(vars_.size());
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            auto it = std::lower_bound(universe.begin(), universe.end(), vars_[i]);
            if (it == universe.end() || *it != vars_[i]) throw DomainError("universe misses a variable");
            where[i] = static_cast<std::size_t>(it - universe.begin());
        }
        MultiPoly r;
        r.vars_ = universe;
        for (const auto& [ex, c] : terms_) {
            Exponents e(universe.size(), 0);
            for (std::size_t i = 0; i < ex.size(); ++i) e[where[i]] = ex[i];
            r.terms_.emplace(std::move(e), c);
        }
        return r;
    }

private:
    static unsigned total(const Exponents& ex) {
        unsigned d = 0;
        for (auto e : ex) d += e;
        return d;
    }

    static std::vector<std::string> merge_vars(const std::vector<std::string>& a,
                                               const std::vector<std::string>& b) {
        if (a == b) return a;
        std::vector<std::string> u;
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
        return u;
    }

    [[nodiscard]] long index_of(const std::string& var) const {
        auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
        if (it == vars_.end() || *it != var) return -1;
        return it - vars_.begin();
    }

    [[nodiscard]] Monomial to_monomial(const Exponents& ex) const {
        Monomial m;
        for (std::size_t i = 0; i < ex.size(); ++i)
            if (ex[i]) m.emplace(vars_[i], ex[i]);
        return m;
    }

    MultiPoly& add_scaled(const MultiPoly& o, const Rational& s) {
        if (o.is_zero()) return *this;
        auto universe = merge_vars(vars_, o.vars_);
        if (universe != vars_) *this = extended(universe);
        const MultiPoly& y = o.vars_ == universe ? o : o.extended(universe);
        for (const auto& [ex, c] : y.terms_) {
            auto [it, inserted] = terms_.try_emplace(ex, c * s);
            if (!inserted) {
                it->second += c * s;
                if (it->second.is_zero()) terms_.erase(it);
            }
        }
        return *this;
    }

    std::vector<std::string> vars_;
    TermMap terms_;
};

inline MultiPoly operator*(const Rational& c, const MultiPoly& p) { return p.scaled(c); }

/// Shorthand for a single variable.
inline MultiPoly var(const std::string& name) { return MultiPoly::variable(name); }

}  // namespace ggw

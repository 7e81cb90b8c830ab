#pragma once

/**
 * @file rational.hpp
 * @brief Exact rationals backed by GMP.
 *
 * Values are always in lowest terms with a positive denominator. They cross
 * every I/O boundary as the strings "p/q" or "p"; there is no conversion to
 * or from floating point.
 */

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ggw/errors.hpp"

namespace ggw {

class Rational {
public:
    Rational() = default;
    Rational(long v) : q_(v) {}                       // NOLINT: implicit by design of arithmetic
    Rational(int v) : q_(static_cast<long>(v)) {}     // NOLINT
    Rational(long num, long den) {
        if (den == 0) throw DomainError("rational with zero denominator");
        q_ = mpq_class(mpz_class(num), mpz_class(den));
        q_.canonicalize();
    }
    explicit Rational(const mpz_class& z) : q_(z) {}
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    /// Parses "p", "-p", "p/q". Whitespace is not accepted.
    static Rational parse(std::string_view text) {
        if (text.empty()) throw InputError("empty rational literal");
        auto valid_int = [](std::string_view s) {
            std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
            if (i == s.size()) return false;
            for (; i < s.size(); ++i)
                if (s[i] < '0' || s[i] > '9') return false;
            return true;
        };
        auto slash = text.find('/');
        std::string num(text.substr(0, slash));
        std::string den = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
        if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
            throw InputError("malformed rational literal '" + std::string(text) + "'");
        if (num[0] == '+') num.erase(0, 1);
        mpz_class n(num, 10), d(den, 10);
        if (d == 0) throw InputError("rational literal with zero denominator '" + std::string(text) + "'");
        return Rational(mpq_class(n, d));
    }

    [[nodiscard]] mpz_class numerator() const { return q_.get_num(); }
    [[nodiscard]] mpz_class denominator() const { return q_.get_den(); }
    [[nodiscard]] const mpq_class& raw() const { return q_; }

    [[nodiscard]] bool is_zero() const { return sgn(q_) == 0; }
    [[nodiscard]] bool is_one() const { return q_ == 1; }
    [[nodiscard]] bool is_integer() const { return q_.get_den() == 1; }
    [[nodiscard]] int sign() const { return sgn(q_); }

    [[nodiscard]] std::string str() const {
        if (is_integer()) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw DomainError("division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    [[nodiscard]] Rational reciprocal() const {
        if (is_zero()) throw DomainError("reciprocal of zero");
        return Rational(mpq_class(1) / q_);
    }

    [[nodiscard]] Rational pow(long e) const {
        Rational base = e < 0 ? reciprocal() : *this;
        unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
        Rational out(1);
        while (n) {
            if (n & 1UL) out *= base;
            base *= base;
            n >>= 1;
        }
        return out;
    }

    [[nodiscard]] std::size_t hash() const {
        return std::hash<std::string>{}(str());
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class q_{0};
};

using RationalVector = std::vector<Rational>;

inline Rational dot(const RationalVector& a, const RationalVector& b) {
    Rational s;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) s += a[i] * b[i];
    return s;
}

inline bool is_zero_vector(const RationalVector& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

inline std::string to_string(const RationalVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].str();
    }
    return s + ")";
}

inline RationalVector to_rational(const std::vector<long>& v) {
    return RationalVector(v.begin(), v.end());
}

}  // namespace ggw

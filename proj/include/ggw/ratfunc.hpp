#pragma once

/**
 * @file ratfunc.hpp
 * @brief Quotients of multivariate polynomials over Q.
 *
 * No multivariate gcd is ever taken. The only normalization is pulling the
 * rational content out of the denominator, so that the stored denominator
 * is a primitive integer polynomial with positive leading coefficient.
 * Equality is decided by cross-multiplication.
 *
 * Inverted classes such as X^{-1} or L^{-1} are never negative exponents;
 * they are separate variables (e.g. "Xinv1", "Linv").
 */

#include <map>
#include <string>

#include "ggw/errors.hpp"
#include "ggw/poly.hpp"

namespace ggw {

class RationalFunction {
public:
    RationalFunction() : den_(1) {}
    RationalFunction(MultiPoly num) : num_(std::move(num)), den_(1) {}  // NOLINT
    RationalFunction(const Rational& c) : num_(c), den_(1) {}           // NOLINT
    RationalFunction(long c) : num_(c), den_(1) {}                      // NOLINT
    RationalFunction(int c) : num_(c), den_(1) {}                       // NOLINT

    RationalFunction(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DomainError("rational function with zero denominator");
        normalize();
    }

    [[nodiscard]] const MultiPoly& numerator() const { return num_; }
    [[nodiscard]] const MultiPoly& denominator() const { return den_; }

    [[nodiscard]] bool is_zero() const { return num_.is_zero(); }
    [[nodiscard]] bool is_polynomial() const { return den_.is_constant(); }
    [[nodiscard]] bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

    [[nodiscard]] Rational constant_value() const {
        return num_.constant_value() / den_.constant_value();
    }

    RationalFunction operator-() const { return raw(-num_, den_); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return a + (-b);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        if (a.is_zero() || b.is_zero()) return {};
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw DomainError("division by the zero rational function");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    [[nodiscard]] RationalFunction reciprocal() const { return RationalFunction(1) / *this; }

    [[nodiscard]] RationalFunction pow(long e) const {
        RationalFunction base = e < 0 ? reciprocal() : *this;
        unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
        return raw(base.num_.pow(static_cast<unsigned>(n)), base.den_.pow(static_cast<unsigned>(n)));
    }

    /// a/b == c/d  iff  a*d == c*b.
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        if (a.den_ == b.den_) return a.num_ == b.num_;
        return a.num_ * b.den_ == b.num_ * a.den_;
    }

    [[nodiscard]] Rational evaluate(const std::map<std::string, Rational>& point) const {
        Rational d = den_.evaluate(point);
        if (d.is_zero()) throw DomainError("denominator " + den_.str() + " vanishes at the evaluation point");
        return num_.evaluate(point) / d;
    }

    [[nodiscard]] RationalFunction substitute(const std::string& v, const RationalFunction& value) const {
        // p(v = a/b) = P(a, b) / b^deg, computed by homogenizing in v.
        unsigned dn = num_.degree_in(v), dd = den_.degree_in(v);
        unsigned top = std::max(dn, dd);
        auto homog = [&](const MultiPoly& p) {
            MultiPoly out;
            for (const auto& t : p.terms()) {
                Monomial m = t.mono;
                unsigned e = 0;
                if (auto it = m.find(v); it != m.end()) {
                    e = it->second;
                    m.erase(it);
                }
                out += MultiPoly::monomial(t.coeff, m) * value.num_.pow(e) * value.den_.pow(top - e);
            }
            return out;
        };
        return RationalFunction(homog(num_), homog(den_));
    }

    /// Canonical text: the numerator alone when the denominator is 1,
    /// otherwise "(num)/(den)".
    [[nodiscard]] std::string str() const {
        if (den_.is_constant()) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    static RationalFunction raw(MultiPoly n, MultiPoly d) {
        RationalFunction r;
        r.num_ = std::move(n);
        r.den_ = std::move(d);
        return r;
    }

    void normalize() {
        if (num_.is_zero()) {
            den_ = MultiPoly(1);
            return;
        }
        Rational c = den_.content();
        if (!c.is_one()) {
            Rational inv = c.reciprocal();
            den_ = den_.scaled(inv);
            num_ = num_.scaled(inv);
        }
    }

    MultiPoly num_;
    MultiPoly den_;
};

}  // namespace ggw

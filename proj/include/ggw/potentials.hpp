#pragma once

/**
 * @file potentials.hpp
 * @brief Truncated series from the applications: Delta factors, localized
 * potentials, framed-sheaf fundamental solutions, quantum differential and
 * difference equation residuals, presentations, ages, crepancy.
 *
 * Semi-infinite products never appear: every ratio
 *   prod_{l <= m} f(l) / prod_{l <= 0} f(l)
 * is cancelled to prod_{l=1}^{m} f(l) (m >= 0) or 1 / prod_{l=m+1}^{0} f(l)
 * (m < 0) before anything is computed.
 *
 * Inverted classes are separate variables: Xinv1..Xinvk for X_j^{-1},
 * Linv for L^{-1}, zetainv for zeta^{-1}.
 */

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ggw/errors.hpp"
#include "ggw/poly.hpp"
#include "ggw/ratfunc.hpp"
#include "ggw/rewriting.hpp"
#include "ggw/series.hpp"

namespace ggw {

inline constexpr int kDefaultTruncation = 4;

// ------------------------------------------------------------------ Delta

/// Delta_d(theta, w) for theta . d = m, as a finite ratio.
inline RationalFunction delta_factor(long m, const MultiPoly& theta, const MultiPoly& w, const MultiPoly& zeta) {
    auto factor = [&](long l) { return theta + w + zeta.scaled(Rational(l)); };
    MultiPoly p(1);
    if (m >= 0) {
        for (long l = 1; l <= m; ++l) p = p * factor(l);
        return RationalFunction(p);
    }
    for (long l = m + 1; l <= 0; ++l) p = p * factor(l);
    return RationalFunction(MultiPoly(1), p);
}

/// Delta factor in the symbols theta, w, zeta.
inline RationalFunction delta_factor(long m) { return delta_factor(m, var("theta"), var("w"), var("zeta")); }

// ------------------------------------------------------------------ linear actions

struct LinearActionSpec {
    std::size_t rank = 1;
    std::vector<std::vector<long>> weights;  ///< mu_1..mu_k, each of length rank
    int truncation = kDefaultTruncation;

    void validate() const {
        if (rank == 0) throw InputError("rank must be positive");
        if (weights.empty()) throw InputError("need at least one weight");
        for (const auto& w : weights)
            if (w.size() != rank) throw InputError("weight length differs from rank");
        if (truncation < 0) throw InputError("truncation must be non-negative");
    }

    /// mu_j(d) for a degree given as a non-negative multi-index.
    [[nodiscard]] long pairing(std::size_t j, const Degree& d) const {
        long s = 0;
        for (std::size_t a = 0; a < rank; ++a) s += weights.at(j)[a] * d.at(a);
        return s;
    }

    /// P^{k-1}: rank 1, k weights equal to 1.
    static LinearActionSpec projective_space(std::size_t k, int truncation = kDefaultTruncation) {
        return {1, std::vector<std::vector<long>>(k, std::vector<long>{1}), truncation};
    }
};

enum class PotentialBranch { minus, plus };

inline std::string xinv_name(std::size_t j) { return "Xinv" + std::to_string(j + 1); }

/**
 * Localized gauged potential, coefficient of q^d:
 *   prod_j 1 / prod_{m=1}^{mu_j(d)} (1 - X_j^{-1} zeta^m)        mu_j(d) >= 0
 *   prod_j     prod_{m=mu_j(d)+1}^{0} (1 - X_j^{-1} zeta^m)      mu_j(d) < 0
 * The minus branch is the displayed one. The plus branch replaces zeta by
 * zeta^{-1} throughout; it is provided by analogy and not checked against
 * an independent source.
 */
inline TruncatedSeries localized_potential(const LinearActionSpec& spec,
                                           PotentialBranch branch = PotentialBranch::minus) {
    spec.validate();
    const std::string up = branch == PotentialBranch::minus ? "zeta" : "zetainv";
    const std::string down = branch == PotentialBranch::minus ? "zetainv" : "zeta";
    // zeta^e for any integer e, with negative powers in the inverse variable.
    auto zeta_pow = [&](long e) {
        return e >= 0 ? var(up).pow(static_cast<unsigned>(e)) : var(down).pow(static_cast<unsigned>(-e));
    };
    TruncatedSeries out = TruncatedSeries::in_degree_vars(spec.rank, spec.truncation);
    for (const auto& d : degrees_up_to(spec.rank, spec.truncation)) {
        MultiPoly num(1), den(1);
        for (std::size_t j = 0; j < spec.weights.size(); ++j) {
            const MultiPoly x = var(xinv_name(j));
            auto factor = [&](long e) { return MultiPoly(1) - x * zeta_pow(e); };
            long m = spec.pairing(j, d);
            if (m >= 0)
                for (long e = 1; e <= m; ++e) den = den * factor(e);
            else
                for (long e = m + 1; e <= 0; ++e) num = num * factor(e);
        }
        out.set(d, RationalFunction(num, den));
    }
    return out;
}

// ------------------------------------------------------------------ QDE residuals

namespace detail {

/// Reduces modulo v^k = 0.
inline MultiPoly kill_power(const MultiPoly& p, const std::string& v, unsigned k) {
    BinomialPresentation pres{{v}, {{Term{Rational(1), {{v, k}}}, Term{Rational(0), {}}}}};
    return normal_form(p, pres);
}

}  // namespace detail

/**
 * ((beta + zeta q d/dq)^k - q) I for I = sum_{d<=D} q^d / prod_{m=1}^{d} (beta + m zeta)^k.
 *
 * Degrees 1..D telescope to zero. The degree-0 term is beta^k, which is the
 * classical relation of H(P^{k-1}); numerators are therefore reduced modulo
 * beta^k = 0 before returning.
 */
inline TruncatedSeries qde_residual_cohomological(int k, int D) {
    if (k < 1) throw DomainError("k must be at least 1");
    if (D < 1) throw DomainError("truncation must be at least 1");
    const MultiPoly beta = var("beta"), zeta = var("zeta");
    TruncatedSeries I = TruncatedSeries::in_q(D);
    MultiPoly den(1);
    for (int d = 0; d <= D; ++d) {
        if (d > 0) den = den * (beta + zeta.scaled(Rational(d))).pow(static_cast<unsigned>(k));
        I.set(d, RationalFunction(MultiPoly(1), den));
    }
    TruncatedSeries applied = I;
    for (int step = 0; step < k; ++step)
        applied = applied.map_coefficients([&](const Degree& d, const RationalFunction& c) {
            return c * RationalFunction(beta + zeta.scaled(Rational(d[0])));
        });
    TruncatedSeries residual = applied - I.shifted({1});
    return residual.map_coefficients([&](const Degree&, const RationalFunction& c) {
        return RationalFunction(detail::kill_power(c.numerator(), "beta", static_cast<unsigned>(k)), c.denominator());
    });
}

/**
 * (P^k - q) J for J = sum_{d<=D} q^d / prod_{m=1}^{d} (1 - L^{-1} zeta^m)^k,
 * P multiplying the q^d coefficient by (1 - L^{-1} zeta^d).
 *
 * The degree-0 term (1 - L^{-1})^k is the classical relation of K(P^{k-1});
 * numerators are reduced modulo it by writing L^{-1} = 1 - b and killing b^k.
 */
inline TruncatedSeries qde_residual_ktheoretic(int k, int D) {
    if (k < 1) throw DomainError("k must be at least 1");
    if (D < 1) throw DomainError("truncation must be at least 1");
    const MultiPoly linv = var("Linv"), zeta = var("zeta");
    auto factor = [&](int d) { return MultiPoly(1) - linv * zeta.pow(static_cast<unsigned>(d)); };
    TruncatedSeries J = TruncatedSeries::in_q(D);
    MultiPoly den(1);
    for (int d = 0; d <= D; ++d) {
        if (d > 0) den = den * factor(d).pow(static_cast<unsigned>(k));
        J.set(d, RationalFunction(MultiPoly(1), den));
    }
    TruncatedSeries applied = J;
    for (int step = 0; step < k; ++step)
        applied = applied.map_coefficients(
            [&](const Degree& d, const RationalFunction& c) { return c * RationalFunction(factor(d[0])); });
    TruncatedSeries residual = applied - J.shifted({1});
    const MultiPoly b = var("b");
    return residual.map_coefficients([&](const Degree&, const RationalFunction& c) {
        MultiPoly n = c.numerator().substitute("Linv", MultiPoly(1) - b);
        n = detail::kill_power(n, "b", static_cast<unsigned>(k)).substitute("b", MultiPoly(1) - linv);
        return RationalFunction(n, c.denominator());
    });
}

// ------------------------------------------------------------------ presentations

struct PresentationResult {
    BinomialPresentation presentation;
    std::vector<std::pair<std::string, std::string>> dictionary;
    std::vector<std::string> notes;

    [[nodiscard]] MultiPoly normal_form(const MultiPoly& p) const { return ggw::normal_form(p, presentation); }

    /// Relations, then the dictionary, one per line.
    [[nodiscard]] std::string str() const {
        std::string s;
        for (const auto& r : presentation.relations) s += relation_str(r) + "\n";
        for (const auto& [g, meaning] : dictionary) s += g + " : " + meaning + "\n";
        for (const auto& n : notes) s += "note: " + n + "\n";
        return s;
    }
};

inline BinomialRelation power_relation(const std::string& v, unsigned k, const std::string& q = "q") {
    return {Term{Rational(1), {{v, k}}}, Term{Rational(1), {{q, 1}}}};
}

/// QH(P^{k-1}) = Q[beta, q] / (beta^k - q).
inline PresentationResult qh_presentation(int k) {
    if (k < 2) throw DomainError("projective space P^{k-1} needs k >= 2");
    PresentationResult r;
    r.presentation = {{"beta", "q"}, {power_relation("beta", static_cast<unsigned>(k))}};
    r.dictionary = {{"beta", "Euler class of the hyperplane bundle"}, {"q", "Novikov variable of the line class"}};
    for (unsigned e : {static_cast<unsigned>(k)})
        if (!(r.normal_form(MultiPoly::monomial(Rational(1), {{"beta", e}})) == var("q")))
            throw DomainError("internal: beta^k does not reduce to q");
    return r;
}

/**
 * QK(P^{k-1}) = Q[L, L^{-1}, q] / ((1 - L^{-1})^k - q), presented through
 * beta = 1 - L^{-1} as Q[beta, q] / (beta^k - q). Use qk_normal_form for
 * polynomials written in Linv.
 */
inline PresentationResult qk_presentation(int k) {
    if (k < 2) throw DomainError("projective space P^{k-1} needs k >= 2");
    PresentationResult r;
    r.presentation = {{"beta", "q"}, {power_relation("beta", static_cast<unsigned>(k))}};
    r.dictionary = {{"beta", "1 - Linv, the K-theoretic Euler class of the hyperplane bundle"},
                    {"Linv", "inverse of the hyperplane bundle class L"},
                    {"q", "Novikov variable of the line class"}};
    return r;
}

/// Normal form of a polynomial in Linv (and q) in QK(P^{k-1}), returned in Linv.
inline MultiPoly qk_normal_form(const MultiPoly& p, const PresentationResult& qk) {
    const MultiPoly beta = var("beta");
    MultiPoly in_beta = p.substitute("Linv", MultiPoly(1) - beta);
    return qk.normal_form(in_beta).substitute("beta", MultiPoly(1) - var("Linv"));
}

/**
 * Batyrev-type relations, one per degree generator d:
 *   prod_{mu_j(d) > 0} beta_j^{mu_j(d)} = q^d prod_{mu_j(d) < 0} beta_j^{-mu_j(d)}.
 * A relation whose left side is 1 is oriented right to left so that it can
 * rewrite; this is recorded in the notes.
 */
inline PresentationResult batyrev_presentation(const LinearActionSpec& spec,
                                               const std::vector<std::vector<long>>& degree_generators) {
    spec.validate();
    PresentationResult r;
    const std::size_t k = spec.weights.size();
    TruncatedSeries names = TruncatedSeries::in_degree_vars(spec.rank, 0);
    for (std::size_t j = 0; j < k; ++j) r.presentation.generators.push_back("beta" + std::to_string(j + 1));
    for (const auto& q : names.degree_vars()) r.presentation.generators.push_back(q);
    for (const auto& dv : degree_generators) {
        if (dv.size() != spec.rank) throw InputError("degree generator length differs from rank");
        Degree d(dv.begin(), dv.end());
        for (int x : d)
            if (x < 0) throw InputError("degree generators must be effective (non-negative)");
        Monomial lhs, rhs;
        for (std::size_t a = 0; a < spec.rank; ++a)
            if (d[a] > 0) rhs[names.degree_vars()[a]] = static_cast<unsigned>(d[a]);
        for (std::size_t j = 0; j < k; ++j) {
            long m = spec.pairing(j, d);
            if (m > 0) lhs["beta" + std::to_string(j + 1)] = static_cast<unsigned>(m);
            if (m < 0) rhs["beta" + std::to_string(j + 1)] = static_cast<unsigned>(-m);
        }
        BinomialRelation rel{Term{Rational(1), lhs}, Term{Rational(1), rhs}};
        if (lhs.empty()) {
            std::swap(rel.lhs, rel.rhs);
            r.notes.push_back("degenerate relation " + relation_str(rel) + " (oriented right to left)");
            if (rel.lhs.mono.empty()) continue;
        }
        r.presentation.relations.push_back(rel);
    }
    for (std::size_t j = 0; j < k; ++j)
        r.dictionary.emplace_back("beta" + std::to_string(j + 1),
                                  "Euler class of the line bundle of weight mu_" + std::to_string(j + 1));
    for (const auto& q : names.degree_vars()) r.dictionary.emplace_back(q, "Novikov variable");
    return r;
}

/// Renames generators (e.g. all beta_j to beta); relations that become
/// duplicates are kept once.
inline PresentationResult identify_generators(const PresentationResult& in,
                                              const std::map<std::string, std::string>& rename) {
    auto map_mono = [&](const Monomial& m) {
        Monomial out;
        for (const auto& [v, e] : m) {
            auto it = rename.find(v);
            out[it == rename.end() ? v : it->second] += e;
        }
        return out;
    };
    PresentationResult out;
    for (const auto& g : in.presentation.generators) {
        auto it = rename.find(g);
        std::string n = it == rename.end() ? g : it->second;
        if (std::find(out.presentation.generators.begin(), out.presentation.generators.end(), n) ==
            out.presentation.generators.end())
            out.presentation.generators.push_back(n);
    }
    for (const auto& r : in.presentation.relations) {
        BinomialRelation nr{Term{r.lhs.coeff, map_mono(r.lhs.mono)}, Term{r.rhs.coeff, map_mono(r.rhs.mono)}};
        bool dup = false;
        for (const auto& e : out.presentation.relations)
            if (relation_str(e) == relation_str(nr)) dup = true;
        if (!dup) out.presentation.relations.push_back(nr);
    }
    out.notes = in.notes;
    return out;
}

// ------------------------------------------------------------------ framed sheaves

struct FramedSheafSpec {
    int k = 1;           ///< number of Chern roots theta_i
    int r = 1;           ///< framing rank
    int truncation = kDefaultTruncation;
    /// Values for theta1..thetak, xi1, xi2, zeta; empty means symbolic.
    std::optional<std::map<std::string, Rational>> point;

    void validate() const {
        if (k < 1) throw InputError("k must be at least 1");
        if (r < 1) throw InputError("r must be at least 1");
        if (truncation < 1) throw InputError("truncation must be at least 1");
        if (point) {
            for (const auto& n : variable_names())
                if (!point->count(n)) throw InputError("specialization is missing a value for " + n);
        }
    }

    [[nodiscard]] std::vector<std::string> variable_names() const {
        std::vector<std::string> v;
        for (int i = 1; i <= k; ++i) v.push_back("theta" + std::to_string(i));
        v.insert(v.end(), {"xi1", "xi2", "zeta"});
        return v;
    }

    /// theta_i = 1/p_i for the primes from 7 on, xi = (1/3, 1/5), zeta = 1.
    [[nodiscard]] std::map<std::string, Rational> default_point() const {
        static const long primes[] = {7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61};
        if (k > 15) throw DomainError("no default specialization for k > 15; supply one");
        std::map<std::string, Rational> p;
        for (int i = 1; i <= k; ++i) p["theta" + std::to_string(i)] = Rational(1, primes[i - 1]);
        p["xi1"] = Rational(1, 3);
        p["xi2"] = Rational(1, 5);
        p["zeta"] = Rational(1);
        return p;
    }
};

inline constexpr int kSymbolicFramedMaxK = 3;
inline constexpr int kSymbolicFramedMaxD = 3;

/// All compositions of d into k non-negative parts, lexicographically descending.
inline std::vector<std::vector<int>> compositions(int d, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int left, int slots) -> void {
        if (slots == 1) {
            cur.push_back(left);
            out.push_back(cur);
            cur.pop_back();
            return;
        }
        for (int x = left; x >= 0; --x) {
            cur.push_back(x);
            self(self, left - x, slots - 1);
            cur.pop_back();
        }
    };
    if (k >= 1) rec(rec, d, k);
    return out;
}

namespace detail {

/// Product of powers of linear forms, each stored normalized (first
/// coefficient 1 in variable order), times a rational constant.
struct FactoredTerm {
    Rational constant{1};
    std::map<std::string, std::pair<MultiPoly, long>> factors;

    void multiply(const MultiPoly& linear, long e) {
        if (e == 0) return;
        if (linear.is_constant()) {
            Rational c = linear.constant_value();
            if (c.is_zero()) {
                if (e < 0) throw DomainError("division by a vanishing constant factor");
                constant = Rational(0);
                return;
            }
            constant *= c.pow(e);
            return;
        }
        // Normalize by the coefficient of the grlex-largest non-constant term.
        Rational lead = linear.leading_term().coeff;
        MultiPoly norm = linear.scaled(lead.reciprocal());
        constant *= lead.pow(e);
        auto key = norm.str();
        auto it = factors.find(key);
        if (it == factors.end()) factors.emplace(key, std::make_pair(norm, e));
        else if ((it->second.second += e) == 0) factors.erase(it);
    }
};

/// Multiplies the factors of Delta_m(theta, w) raised to `power`.
inline void multiply_delta(FactoredTerm& t, long m, const MultiPoly& theta, const MultiPoly& w,
                           const MultiPoly& zeta, long power) {
    if (m >= 0)
        for (long l = 1; l <= m; ++l) t.multiply(theta + w + zeta.scaled(Rational(l)), power);
    else
        for (long l = m + 1; l <= 0; ++l) t.multiply(theta + w + zeta.scaled(Rational(l)), -power);
}

/// Sum of factored terms over the least common denominator.
inline RationalFunction sum_factored(const std::vector<FactoredTerm>& terms) {
    std::map<std::string, std::pair<MultiPoly, long>> lcd;
    for (const auto& t : terms)
        for (const auto& [key, fe] : t.factors)
            if (fe.second < 0) {
                auto& slot = lcd.try_emplace(key, fe.first, 0).first->second;
                slot.second = std::max(slot.second, -fe.second);
            }
    MultiPoly den(1);
    for (const auto& [_, fe] : lcd) den = den * fe.first.pow(static_cast<unsigned>(fe.second));
    MultiPoly num;
    for (const auto& t : terms) {
        if (t.constant.is_zero()) continue;
        MultiPoly p(t.constant);
        for (const auto& [key, fe] : t.factors)
            if (fe.second > 0) p = p * fe.first.pow(static_cast<unsigned>(fe.second));
        for (const auto& [key, fe] : lcd) {
            auto it = t.factors.find(key);
            long have = (it != t.factors.end() && it->second.second < 0) ? -it->second.second : 0;
            p = p * fe.first.pow(static_cast<unsigned>(fe.second - have));
        }
        num += p;
    }
    return RationalFunction(num, den);
}

inline RationalFunction framed_symbolic_coefficient(const FramedSheafSpec& s, int d) {
    const MultiPoly zeta = var("zeta"), xi1 = var("xi1"), xi2 = var("xi2"), zero(0);
    std::vector<MultiPoly> th;
    for (int i = 1; i <= s.k; ++i) th.push_back(var("theta" + std::to_string(i)));
    std::vector<FactoredTerm> terms;
    for (const auto& dd : compositions(d, s.k)) {
        FactoredTerm t;
        for (int i = 0; i < s.k; ++i)
            for (int j = 0; j < s.k; ++j) {
                if (i == j) continue;
                long m = dd[static_cast<std::size_t>(i)] - dd[static_cast<std::size_t>(j)];
                MultiPoly tij = th[static_cast<std::size_t>(i)] - th[static_cast<std::size_t>(j)];
                multiply_delta(t, m, tij, xi1 + xi2, zeta, 1);
                multiply_delta(t, m, tij, zero, zeta, 1);
                multiply_delta(t, m, tij, xi1, zeta, -1);
                multiply_delta(t, m, tij, xi2, zeta, -1);
            }
        for (int i = 0; i < s.k; ++i) {
            long di = dd[static_cast<std::size_t>(i)];
            multiply_delta(t, di, th[static_cast<std::size_t>(i)], zero, zeta, -s.r);
            multiply_delta(t, -di, -th[static_cast<std::size_t>(i)], xi1 + xi2, zeta, -s.r);
        }
        terms.push_back(std::move(t));
    }
    return sum_factored(terms);
}

/// Delta_m(theta, w) at a rational point. `label` names the factor for errors.
inline Rational delta_value(long m, const Rational& theta, const Rational& w, const Rational& zeta,
                            const std::string& label) {
    Rational p(1);
    long lo = m >= 0 ? 1 : m + 1, hi = m >= 0 ? m : 0;
    for (long l = lo; l <= hi; ++l) {
        Rational f = theta + w + Rational(l) * zeta;
        if (f.is_zero())
            throw DomainError("factor " + label + " + " + std::to_string(l) + "*zeta vanishes at the specialization point");
        p *= f;
    }
    return m >= 0 ? p : p.reciprocal();
}

inline Rational framed_specialized_coefficient(const FramedSheafSpec& s, int d) {
    const auto& pt = *s.point;
    const Rational zeta = pt.at("zeta"), xi1 = pt.at("xi1"), xi2 = pt.at("xi2"), zero(0);
    auto th = [&](int i) { return pt.at("theta" + std::to_string(i + 1)); };
    auto name = [](int i) { return "theta" + std::to_string(i + 1); };
    Rational total(0);
    for (const auto& dd : compositions(d, s.k)) {
        Rational t(1);
        for (int i = 0; i < s.k; ++i)
            for (int j = 0; j < s.k; ++j) {
                if (i == j) continue;
                long m = dd[static_cast<std::size_t>(i)] - dd[static_cast<std::size_t>(j)];
                Rational tij = th(i) - th(j);
                std::string lij = name(i) + " - " + name(j);
                t *= delta_value(m, tij, xi1 + xi2, zeta, lij + " + xi1 + xi2");
                t *= delta_value(m, tij, zero, zeta, lij);
                Rational a = delta_value(m, tij, xi1, zeta, lij + " + xi1");
                Rational b = delta_value(m, tij, xi2, zeta, lij + " + xi2");
                if (a.is_zero() || b.is_zero()) throw DomainError("a Delta factor in a denominator vanishes at " + lij);
                t /= a * b;
            }
        for (int i = 0; i < s.k; ++i) {
            long di = dd[static_cast<std::size_t>(i)];
            Rational a = delta_value(di, th(i), zero, zeta, name(i));
            Rational b = delta_value(-di, -th(i), xi1 + xi2, zeta, "-" + name(i) + " + xi1 + xi2");
            if (a.is_zero() || b.is_zero())
                throw DomainError("a Delta factor raised to -r vanishes at " + name(i));
            t *= (a * b).pow(-s.r);
        }
        total += t;
    }
    return total;
}

}  // namespace detail

/**
 * Truncation of the framed-sheaf fundamental solution,
 *   sum_{1 <= d <= D} q^d sum_{d_1+..+d_k = d}
 *     prod_{i != j} Delta(th_ij, xi1+xi2) Delta(th_ij, 0) / (Delta(th_ij, xi1) Delta(th_ij, xi2))
 *     prod_i Delta(th_i, 0)^{-r} Delta(-th_i, xi1+xi2)^{-r},
 * th_ij = theta_i - theta_j, with (theta_i - theta_j).d = d_i - d_j and
 * (-theta_i).d = -d_i. The product over i != j runs over ordered pairs.
 * No mirror-map correction is applied.
 *
 * Symbolic mode (no point) is limited to k <= 3 and D <= 3; specialized mode
 * evaluates each factor in Q and names the first one that vanishes.
 */
inline TruncatedSeries framed_sheaf_fundamental_solution(const FramedSheafSpec& spec) {
    spec.validate();
    TruncatedSeries out = TruncatedSeries::in_q(spec.truncation);
    if (!spec.point) {
        if (spec.k > kSymbolicFramedMaxK || spec.truncation > kSymbolicFramedMaxD)
            throw DomainError("symbolic framed-sheaf series is limited to k <= 3 and truncation <= 3; specialize instead");
        for (int d = 1; d <= spec.truncation; ++d) out.set(d, detail::framed_symbolic_coefficient(spec, d));
    } else {
        for (int d = 1; d <= spec.truncation; ++d)
            out.set(d, RationalFunction(detail::framed_specialized_coefficient(spec, d)));
    }
    return out;
}

/// Evaluates every coefficient of a series at a rational point.
inline TruncatedSeries evaluate_series(const TruncatedSeries& s, const std::map<std::string, Rational>& point) {
    return s.map_coefficients(
        [&](const Degree&, const RationalFunction& c) { return RationalFunction(c.evaluate(point)); });
}

// ------------------------------------------------------------------ age, crepancy

/// (1/r) sum s_j.
inline Rational age(long r, const std::vector<long>& exponents) {
    if (r < 1) throw DomainError("order r must be positive");
    Rational s(0);
    for (long e : exponents) {
        if (e < 0 || e >= r) throw DomainError("exponent " + std::to_string(e) + " outside 0.." + std::to_string(r - 1));
        s += Rational(e);
    }
    return s / Rational(r);
}

struct CrepancyVerdict {
    bool crepant = true;
    long sum = 0;

    [[nodiscard]] std::string str() const { return crepant ? "crepant" : "non_crepant(" + std::to_string(sum) + ")"; }
};

inline CrepancyVerdict crepancy_check(const std::vector<long>& weights) {
    long s = 0;
    for (long w : weights) s += w;
    return {s == 0, s};
}

}  // namespace ggw

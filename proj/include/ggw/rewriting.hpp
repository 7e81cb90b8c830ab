#pragma once

/**
 * @file rewriting.hpp
 * @brief Normal forms in quotients of polynomial rings by binomial relations.
 *
 * Each relation lhs = rhs is oriented lhs -> rhs. A term is rewritten while
 * some lhs monomial divides it; the first applicable relation (in the order
 * given) wins. Termination is not assumed: every term gets a fixed budget of
 * rewriting steps and running out of it is an error.
 */

#include <string>
#include <vector>

#include "ggw/errors.hpp"
#include "ggw/poly.hpp"

namespace ggw {

inline constexpr std::size_t kRewriteFuel = 10'000;

struct BinomialRelation {
    Term lhs;
    Term rhs;  ///< rhs.coeff may be zero: the relation then kills lhs.
};

struct BinomialPresentation {
    std::vector<std::string> generators;
    std::vector<BinomialRelation> relations;

    void check() const {
        for (const auto& r : relations) {
            if (r.lhs.coeff.is_zero()) throw DomainError("relation with zero left-hand side");
            if (r.lhs.mono.empty()) throw DomainError("relation rewrites the constant monomial");
        }
    }
};

class RewriteFuelExhausted : public DomainError {
public:
    explicit RewriteFuelExhausted(const std::string& what)
        : DomainError("rewriting fuel exhausted after " + std::to_string(kRewriteFuel) + " steps on " + what) {}
};

/// Normal form of a single term.
inline MultiPoly normal_form(const Term& t, const BinomialPresentation& p, std::size_t fuel = kRewriteFuel) {
    p.check();
    Term cur = t;
    for (std::size_t step = 0;; ++step) {
        if (cur.coeff.is_zero()) return {};
        const BinomialRelation* hit = nullptr;
        for (const auto& r : p.relations)
            if (divides(r.lhs.mono, cur.mono)) {
                hit = &r;
                break;
            }
        if (!hit) return MultiPoly::from_term(cur);
        if (step >= fuel) throw RewriteFuelExhausted(monomial_str(t.mono));
        for (const auto& [v, e] : hit->lhs.mono) {
            auto it = cur.mono.find(v);
            it->second -= e;
            if (it->second == 0) cur.mono.erase(it);
        }
        for (const auto& [v, e] : hit->rhs.mono) cur.mono[v] += e;
        cur.coeff = cur.coeff * hit->rhs.coeff / hit->lhs.coeff;
    }
}

/// Normal form of a polynomial, term by term.
inline MultiPoly normal_form(const MultiPoly& poly, const BinomialPresentation& p,
                             std::size_t fuel = kRewriteFuel) {
    MultiPoly out;
    for (const auto& t : poly.terms()) out += normal_form(t, p, fuel);
    return out;
}

inline std::string relation_str(const BinomialRelation& r) {
    auto side = [](const Term& t) { return MultiPoly::from_term(t).str(); };
    return side(r.lhs) + " = " + side(r.rhs);
}

}  // namespace ggw

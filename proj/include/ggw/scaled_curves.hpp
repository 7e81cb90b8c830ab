#pragma once

/**
 * @file scaled_curves.hpp
 * @brief Combinatorial types of stable scaled marked curves.
 *
 * A type is a rooted tree. Every vertex carries a scaling level (infinite,
 * transition = finite non-zero, zero); markings are semi-infinite edges.
 * In projective mode the root maps isomorphically onto the target curve C
 * and is either a finite root (finite scaling, which also covers delta = 0)
 * or an infinite root. In affine mode the root carries the extra marking
 * z0 and has level infinite or transition.
 *
 * Types print as bracketed terms:
 *   τ(...)      infinite projective root
 *   (τκ)(...)   finite projective root
 *   κ(...)      transition vertex
 *   (...)       infinite vertex above a transition, zero vertex below one
 *   zI          marking I
 * An affine type prints as the contents of its root: a single κ(...) for a
 * transition root, or the juxtaposed children of an infinite root, e.g.
 * "κ(z1) κ(z2)". Siblings are ordered by their smallest marking, which makes
 * the term a canonical form: two types are isomorphic iff their terms agree.
 */

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ggw/errors.hpp"
#include "ggw/rational.hpp"

namespace ggw {

enum class CurveMode { projective, affine };
enum class Level { infinite, transition, zero };
enum class RootKind { finite, infinite };

inline std::string to_string(CurveMode m) { return m == CurveMode::projective ? "projective" : "affine"; }

inline CurveMode parse_curve_mode(const std::string& s) {
    if (s == "projective") return CurveMode::projective;
    if (s == "affine") return CurveMode::affine;
    throw InputError("mode must be 'projective' or 'affine', got '" + s + "'");
}

inline std::string to_string(Level l) {
    switch (l) {
        case Level::infinite: return "infinite";
        case Level::transition: return "transition";
        case Level::zero: return "zero";
    }
    return "?";
}

struct ScaledVertex {
    Level level = Level::zero;
    int parent = -1;           ///< -1 only for the root (vertex 0)
    std::vector<int> markings; ///< includes 0 on the affine root
};

struct ScaledType {
    CurveMode mode = CurveMode::projective;
    RootKind root_kind = RootKind::finite;  ///< projective mode only
    int n = 0;                              ///< markings 1..n
    std::vector<ScaledVertex> vertices;     ///< vertex 0 is the root

    [[nodiscard]] std::vector<int> children(int v) const {
        std::vector<int> out;
        for (int w = 1; w < static_cast<int>(vertices.size()); ++w)
            if (vertices[static_cast<std::size_t>(w)].parent == v) out.push_back(w);
        return out;
    }
    [[nodiscard]] const ScaledVertex& at(int v) const { return vertices.at(static_cast<std::size_t>(v)); }
    [[nodiscard]] std::size_t edge_count() const { return vertices.empty() ? 0 : vertices.size() - 1; }

    /// Markings plus incident finite edges.
    [[nodiscard]] int special_points(int v) const {
        int s = static_cast<int>(at(v).markings.size()) + static_cast<int>(children(v).size());
        if (v != 0) ++s;
        return s;
    }
};

/// Per-edge smoothing parameters; gamma[v - 1] belongs to the edge from
/// vertex v to its parent.
struct EdgeParams {
    std::vector<Rational> gamma;
};

// ------------------------------------------------------------ validation

struct Violation {
    std::string clause;  ///< tree | markings | root | marking_property | finite_root | monotonicity | stability
    int vertex = -1;
    std::string message;

    [[nodiscard]] std::string str() const {
        return clause + " violated at vertex " + std::to_string(vertex) + ": " + message;
    }
};

namespace detail {

inline bool allowed_child(Level parent, Level child) {
    switch (parent) {
        case Level::infinite: return child == Level::infinite || child == Level::transition;
        case Level::transition:
        case Level::zero: return child == Level::zero;
    }
    return false;
}

}  // namespace detail

/**
 * Checks every structural invariant; returns the first failure.
 *
 * Monotonicity is enforced edge by edge: below an infinite vertex come
 * infinite or transition vertices, below a transition or zero vertex only
 * zero vertices. Along a root-to-leaf path this reads
 * infinite^a transition^b zero^c with b <= 1, and an infinite component is
 * never adjacent to a zero one (a transition component always separates
 * them). A finite projective root behaves like a transition vertex.
 */
inline std::optional<Violation> validate(const ScaledType& t) {
    const int nv = static_cast<int>(t.vertices.size());
    if (nv == 0) return Violation{"tree", -1, "no vertices"};
    if (t.n < 0) return Violation{"markings", -1, "negative marking count"};
    if (t.vertices[0].parent != -1) return Violation{"tree", 0, "vertex 0 must be the root"};
    for (int v = 1; v < nv; ++v) {
        int p = t.at(v).parent;
        if (p < 0 || p >= nv || p == v) return Violation{"tree", v, "bad parent link"};
        int steps = 0, cur = v;
        while (cur != 0 && steps <= nv) {
            cur = t.at(cur).parent;
            ++steps;
        }
        if (cur != 0) return Violation{"tree", v, "parent links contain a cycle"};
    }

    std::vector<int> seen(static_cast<std::size_t>(t.n + 1), 0);
    for (int v = 0; v < nv; ++v) {
        for (int m : t.at(v).markings) {
            if (m < 0 || m > t.n) return Violation{"markings", v, "marking z" + std::to_string(m) + " out of range"};
            if (m == 0 && t.mode == CurveMode::projective)
                return Violation{"markings", v, "z0 exists only in affine mode"};
            if (m == 0 && v != 0) return Violation{"marking_property", v, "z0 must sit on the root"};
            if (seen[static_cast<std::size_t>(m)]++) return Violation{"markings", v, "marking z" + std::to_string(m) + " repeated"};
        }
    }
    for (int m = (t.mode == CurveMode::affine ? 0 : 1); m <= t.n; ++m)
        if (!seen[static_cast<std::size_t>(m)]) return Violation{"markings", -1, "marking z" + std::to_string(m) + " missing"};

    const Level root = t.at(0).level;
    if (t.mode == CurveMode::projective) {
        Level expect = t.root_kind == RootKind::finite ? Level::transition : Level::infinite;
        if (root != expect) return Violation{"root", 0, "root level does not match the root kind"};
    } else if (root == Level::zero) {
        return Violation{"root", 0, "scaling must be infinite at z0, so the affine root cannot be zero"};
    }

    for (int v = 0; v < nv; ++v) {
        const auto& vx = t.at(v);
        bool has_finite_marking = std::any_of(vx.markings.begin(), vx.markings.end(), [](int m) { return m != 0; });
        if (has_finite_marking && vx.level == Level::infinite)
            return Violation{"marking_property", v, "markings need finite scaling"};
    }

    for (int v = 1; v < nv; ++v) {
        Level pl = t.at(t.at(v).parent).level, cl = t.at(v).level;
        if (t.mode == CurveMode::projective && t.root_kind == RootKind::finite && t.at(v).parent == 0 &&
            cl != Level::zero)
            return Violation{"finite_root", v, "a finite root admits only zero-scaled bubbles"};
        if (!detail::allowed_child(pl, cl))
            return Violation{"monotonicity", v, to_string(cl) + " component below a " + to_string(pl) + " component"};
    }

    for (int v = 0; v < nv; ++v) {
        if (v == 0 && t.mode == CurveMode::projective) continue;
        int need = t.at(v).level == Level::transition ? 2 : 3;
        int have = t.special_points(v);
        if (have < need) {
            std::string article = t.at(v).level == Level::infinite ? "an " : "a ";
            return Violation{"stability", v,
                             std::to_string(have) + " special point(s) on " + article + to_string(t.at(v).level) +
                                 " component (needs " + std::to_string(need) + ")"};
        }
    }
    return std::nullopt;
}

class InvalidScaledType : public DomainError {
public:
    explicit InvalidScaledType(Violation v) : DomainError("invalid scaled type: " + v.str()), violation(std::move(v)) {}
    Violation violation;
};

inline void require_valid(const ScaledType& t) {
    if (auto v = validate(t)) throw InvalidScaledType(*v);
}

// ------------------------------------------------------------ canonical terms

namespace detail {

struct Encoded {
    int min_marking;
    std::string text;
};

inline Encoded encode_vertex(const ScaledType& t, int v) {
    std::vector<Encoded> items;
    for (int m : t.at(v).markings)
        if (m != 0) items.push_back({m, "z" + std::to_string(m)});
    for (int c : t.children(v)) items.push_back(encode_vertex(t, c));
    std::sort(items.begin(), items.end(), [](const Encoded& a, const Encoded& b) {
        if (a.min_marking != b.min_marking) return a.min_marking < b.min_marking;
        return a.text < b.text;
    });
    std::string body;
    int lo = 1 << 30;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) body += " ";
        body += items[i].text;
        lo = std::min(lo, items[i].min_marking);
    }
    const Level l = t.at(v).level;
    std::string text;
    if (v == 0) {
        if (t.mode == CurveMode::projective)
            text = (t.root_kind == RootKind::finite ? "(τκ)(" : "τ(") + body + ")";
        else
            text = l == Level::transition ? "κ(" + body + ")" : body;
    } else {
        text = l == Level::transition ? "κ(" + body + ")" : "(" + body + ")";
    }
    return {lo, text};
}

}  // namespace detail

/// Canonical bracketed term.
inline std::string canonical_term(const ScaledType& t) { return detail::encode_vertex(t, 0).text; }

namespace detail {

class TermParser {
public:
    explicit TermParser(std::string_view s) : s_(s) {}

    ScaledType parse() {
        skip();
        ScaledType t;
        t.vertices.push_back({});
        if (eat("(τκ)") || eat("(tau kappa)") || eat("(taukappa)")) {
            t.mode = CurveMode::projective;
            t.root_kind = RootKind::finite;
            t.vertices[0].level = Level::transition;
            expect('(');
            items(t, 0, true);
            expect(')');
        } else if (eat("τ") || eat("tau")) {
            t.mode = CurveMode::projective;
            t.root_kind = RootKind::infinite;
            t.vertices[0].level = Level::infinite;
            expect('(');
            items(t, 0, false);
            expect(')');
        } else {
            t.mode = CurveMode::affine;
            t.vertices[0].level = Level::infinite;
            t.vertices[0].markings.push_back(0);
            items(t, 0, false);
            // A lone κ(...) at top level is a transition root.
            auto kids = t.children(0);
            if (kids.size() == 1 && t.vertices[0].markings.size() == 1 &&
                t.at(kids[0]).level == Level::transition)
                collapse_into_root(t, kids[0]);
        }
        skip();
        if (pos_ != s_.size()) fail("trailing input");
        int mx = 0;
        for (const auto& v : t.vertices)
            for (int m : v.markings) mx = std::max(mx, m);
        t.n = mx;
        return t;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw InputError("cannot parse scaled-curve term at offset " + std::to_string(pos_) + ": " + why);
    }
    void skip() {
        while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
    }
    bool eat(std::string_view tok) {
        skip();
        if (s_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }
    void expect(char c) {
        skip();
        if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    bool at_close() {
        skip();
        return pos_ >= s_.size() || s_[pos_] == ')';
    }

    // below: true when inside a transition component (brackets mean zero).
    void items(ScaledType& t, int parent, bool below) {
        while (!at_close()) {
            if (eat("z")) {
                std::size_t start = pos_;
                while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') ++pos_;
                if (start == pos_) fail("marking without a number");
                t.vertices[static_cast<std::size_t>(parent)].markings.push_back(
                    std::stoi(std::string(s_.substr(start, pos_ - start))));
            } else if (eat("κ") || eat("kappa")) {
                int v = add(t, parent, Level::transition);
                expect('(');
                items(t, v, true);
                expect(')');
            } else if (eat("(")) {
                int v = add(t, parent, below ? Level::zero : Level::infinite);
                items(t, v, below);
                expect(')');
            } else {
                fail("unexpected character");
            }
        }
    }

    static int add(ScaledType& t, int parent, Level l) {
        t.vertices.push_back({l, parent, {}});
        return static_cast<int>(t.vertices.size()) - 1;
    }

    static void collapse_into_root(ScaledType& t, int child) {
        auto& root = t.vertices[0];
        const auto& c = t.vertices[static_cast<std::size_t>(child)];
        root.level = Level::transition;
        root.markings.insert(root.markings.end(), c.markings.begin(), c.markings.end());
        std::vector<ScaledVertex> out{root};
        std::vector<int> remap(t.vertices.size(), -1);
        remap[0] = 0;
        remap[static_cast<std::size_t>(child)] = 0;
        for (std::size_t v = 1; v < t.vertices.size(); ++v) {
            if (static_cast<int>(v) == child) continue;
            remap[v] = static_cast<int>(out.size());
            out.push_back(t.vertices[v]);
        }
        for (std::size_t v = 1; v < out.size(); ++v) out[v].parent = remap[static_cast<std::size_t>(out[v].parent)];
        t.vertices = std::move(out);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a bracketed term (τ/κ or the ASCII spellings tau/kappa). Vertices
/// are numbered in the order they are written, root first; that order also
/// indexes EdgeParams. Structural validity is not checked here.
inline ScaledType parse_term(std::string_view text) { return detail::TermParser(text).parse(); }

// ------------------------------------------------------------ dimensions & images

/**
 * Dimension of the stratum of a valid type: the sum over vertices of
 *   projective finite root     n_v + 1   (points on C plus the scaling)
 *   projective infinite root   n_v
 *   zero / infinite vertex     n_v - 3
 *   transition vertex          n_v - 2
 * with n_v the number of special points (z0 included on the affine root).
 */
inline int stratum_dimension(const ScaledType& t) {
    require_valid(t);
    int dim = 0;
    for (int v = 0; v < static_cast<int>(t.vertices.size()); ++v) {
        int nv = t.special_points(v);
        if (v == 0 && t.mode == CurveMode::projective) {
            dim += t.root_kind == RootKind::finite ? nv + 1 : nv;
            continue;
        }
        dim += t.at(v).level == Level::transition ? nv - 2 : nv - 3;
    }
    return dim;
}

enum class RhoImage { zero, generic_finite, infinity, dominant };

inline std::string to_string(RhoImage r) {
    switch (r) {
        case RhoImage::zero: return "zero";
        case RhoImage::generic_finite: return "generic_finite";
        case RhoImage::infinity: return "infinity";
        case RhoImage::dominant: return "dominant";
    }
    return "?";
}

/// Image under the forgetful map to M_{0,1}(C) = P^1 (projective mode).
/// delta = 0 on a finite root is a point of the finite-root family rather
/// than a separate type, so finite-root types always dominate; `zero` and
/// `generic_finite` are never produced by this convention.
inline RhoImage rho_image(const ScaledType& t) {
    require_valid(t);
    if (t.mode != CurveMode::projective) throw DomainError("rho is defined for projective scaled curves only");
    return t.root_kind == RootKind::infinite ? RhoImage::infinity : RhoImage::dominant;
}

// ------------------------------------------------------------ balanced parameters

/// Product of gamma along the path root -> v.
inline Rational root_scale(const ScaledType& t, const EdgeParams& p, int v) {
    Rational s(1);
    while (v != 0) {
        s *= p.gamma.at(static_cast<std::size_t>(v - 1));
        v = t.at(v).parent;
    }
    return s;
}

/**
 * True when the signed product of gamma_e^{+-1} along the tree path between
 * any two transition vertices is 1 (+1 for edges walked towards the root,
 * -1 away from it). Equivalent to: all transition vertices sit at the same
 * scale root_scale(v).
 */
inline bool check_balanced(const ScaledType& t, const EdgeParams& p) {
    require_valid(t);
    if (p.gamma.size() != t.edge_count()) throw DomainError("need exactly one parameter per edge");
    for (const auto& g : p.gamma)
        if (g.is_zero()) throw DomainError("deformation parameters must be non-zero");
    std::optional<Rational> scale;
    for (int v = 0; v < static_cast<int>(t.vertices.size()); ++v) {
        if (t.at(v).level != Level::transition) continue;
        Rational s = root_scale(t, p, v);
        if (!scale) scale = s;
        else if (*scale != s) return false;
    }
    return true;
}

/// Coordinate delta * (z2 - z1) on M_{2,1}(A) = P^1.
inline Rational affine_two_marking_coordinate(const Rational& z1, const Rational& z2, const Rational& delta) {
    if (z1 == z2 && !delta.is_zero()) throw DomainError("z1 = z2 with non-zero scaling is not a point of the open stratum");
    return delta * (z2 - z1);
}

// ------------------------------------------------------------ enumeration

inline constexpr int kDefaultCurveBound = 6;

namespace detail {

struct GenNode {
    Level level;
    std::vector<int> marks;
    std::vector<GenNode> kids;
};

/// Set partitions of `mask` into non-empty blocks, blocks ordered by lowest bit.
inline void set_partitions(unsigned mask, std::vector<unsigned>& cur,
                           const std::function<void(const std::vector<unsigned>&)>& emit) {
    if (mask == 0) {
        emit(cur);
        return;
    }
    unsigned low = mask & (~mask + 1U);
    unsigned rest = mask & ~low;
    // Every subset of `rest` joins `low` in its block.
    for (unsigned sub = rest;; sub = (sub - 1) & rest) {
        cur.push_back(low | sub);
        set_partitions(rest & ~sub, cur, emit);
        cur.pop_back();
        if (sub == 0) break;
    }
}

inline std::vector<int> bits_to_marks(unsigned mask) {
    std::vector<int> out;
    for (int i = 0; i < 32; ++i)
        if (mask >> i & 1U) out.push_back(i + 1);
    return out;
}

/**
 * All subtrees whose vertex has level `level` and whose markings are exactly
 * `mask`. `extra` counts special points beyond markings and children (the
 * parent edge, or z0); `check` disables the stability bound for the
 * projective root; `takes_marks` says whether markings may sit on the vertex.
 */
inline std::vector<GenNode> generate(Level level, unsigned mask, int extra, bool check, bool takes_marks) {
    std::vector<GenNode> out;
    const int need = level == Level::transition ? 2 : 3;
    std::vector<Level> child_levels = level == Level::infinite ? std::vector<Level>{Level::infinite, Level::transition}
                                                               : std::vector<Level>{Level::zero};
    auto with_direct = [&](unsigned direct) {
        unsigned rest = mask & ~direct;
        std::vector<unsigned> cur;
        set_partitions(rest, cur, [&](const std::vector<unsigned>& blocks) {
            int special = __builtin_popcount(direct) + static_cast<int>(blocks.size()) + extra;
            if (check && special < need) return;
            // Cartesian product over blocks of (child level, child subtree).
            std::vector<std::vector<GenNode>> options;
            for (unsigned b : blocks) {
                std::vector<GenNode> opts;
                for (Level cl : child_levels) {
                    auto sub = generate(cl, b, 1, true, cl != Level::infinite);
                    opts.insert(opts.end(), sub.begin(), sub.end());
                }
                if (opts.empty()) return;
                options.push_back(std::move(opts));
            }
            std::vector<std::size_t> pick(options.size(), 0);
            while (true) {
                GenNode node{level, bits_to_marks(direct), {}};
                for (std::size_t i = 0; i < options.size(); ++i) node.kids.push_back(options[i][pick[i]]);
                out.push_back(std::move(node));
                std::size_t i = 0;
                while (i < pick.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
                if (i == pick.size()) break;
            }
        });
    };
    if (takes_marks) {
        for (unsigned direct = mask;; direct = (direct - 1) & mask) {
            with_direct(direct);
            if (direct == 0) break;
        }
    } else {
        with_direct(0);
    }
    return out;
}

inline void flatten(const GenNode& node, int parent, ScaledType& t) {
    int id = static_cast<int>(t.vertices.size());
    t.vertices.push_back({node.level, parent, node.marks});
    for (const auto& k : node.kids) flatten(k, id, t);
}

}  // namespace detail

/// All stable types with n markings, up to isomorphism, ordered by
/// decreasing dimension and then by canonical term.
inline std::vector<ScaledType> enumerate_types(int n, CurveMode mode, int bound = kDefaultCurveBound) {
    if (n < 0) throw DomainError("marking count must be non-negative");
    if (n > bound) throw DomainError("n = " + std::to_string(n) + " exceeds the enumeration bound " + std::to_string(bound));
    if (n > 20) throw DomainError("enumeration supports at most 20 markings");
    if (mode == CurveMode::affine && n == 0) throw DomainError("no stable affine scaled curve has zero markings");
    const unsigned all = n == 0 ? 0U : ((1U << n) - 1U);

    std::vector<ScaledType> out;
    auto emit = [&](const detail::GenNode& root, RootKind kind) {
        ScaledType t;
        t.mode = mode;
        t.root_kind = kind;
        t.n = n;
        detail::flatten(root, -1, t);
        if (mode == CurveMode::affine) t.vertices[0].markings.insert(t.vertices[0].markings.begin(), 0);
        if (!validate(t)) out.push_back(std::move(t));
    };
    if (mode == CurveMode::projective) {
        for (const auto& r : detail::generate(Level::transition, all, 0, false, true)) emit(r, RootKind::finite);
        for (const auto& r : detail::generate(Level::infinite, all, 0, false, false)) emit(r, RootKind::infinite);
    } else {
        for (const auto& r : detail::generate(Level::transition, all, 1, true, true)) emit(r, RootKind::finite);
        for (const auto& r : detail::generate(Level::infinite, all, 1, true, false)) emit(r, RootKind::finite);
    }

    std::map<std::string, ScaledType> unique;
    for (auto& t : out) unique.emplace(canonical_term(t), std::move(t));
    std::vector<std::pair<int, std::string>> keys;
    for (const auto& [term, t] : unique) keys.emplace_back(stratum_dimension(t), term);
    std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    std::vector<ScaledType> sorted;
    for (const auto& [_, term] : keys) sorted.push_back(unique.at(term));
    return sorted;
}

// ------------------------------------------------------------ divisor relations

struct DivisorPairing {
    std::string left_label;
    std::vector<std::string> left;
    std::string right_label;
    std::vector<std::string> right;
};

/**
 * The two linearly equivalent boundary divisors.
 *
 * Projective: rho^{-1}(0) against rho^{-1}(infinity). The zero fibre is the
 * delta = 0 slice of the open finite-root family, written "<term> [δ=0]";
 * the infinity side lists the codimension-one infinite-root types. This is
 * the relation (τκ)(a) ~ τ(κ(a)).
 *
 * Affine: among codimension-one types, those with a single transition
 * vertex (markings colliding under one κ) against those with several
 * transition vertices, the relation κ(a1 a2) ~ κ(a1) κ(a2).
 */
inline DivisorPairing divisor_pairs(int n, CurveMode mode, int bound = kDefaultCurveBound) {
    auto types = enumerate_types(n, mode, bound);
    DivisorPairing out;
    if (mode == CurveMode::projective) {
        const int top = n + 1;
        out.left_label = "rho^-1(0)";
        out.right_label = "rho^-1(infinity)";
        for (const auto& t : types) {
            int d = stratum_dimension(t);
            if (t.root_kind == RootKind::finite && d == top) out.left.push_back(canonical_term(t) + " [δ=0]");
            if (t.root_kind == RootKind::infinite && d == top - 1) out.right.push_back(canonical_term(t));
        }
    } else {
        const int codim1 = n - 2;
        out.left_label = "single transition";
        out.right_label = "multiple transitions";
        for (const auto& t : types) {
            if (stratum_dimension(t) != codim1) continue;
            int transitions = 0;
            for (const auto& v : t.vertices)
                if (v.level == Level::transition) ++transitions;
            (transitions == 1 ? out.left : out.right).push_back(canonical_term(t));
        }
    }
    return out;
}

}  // namespace ggw

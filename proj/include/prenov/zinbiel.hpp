#pragma once

// Free differential Zinbiel algebra. Basis: right-normed words
// [x1 x2 ... xn] = x1·(x2·(...·xn)); the product of basis words is
// [u1 u']·[v] = u1·(u' ш v) where ш is the shuffle of letter sequences.

#include "term.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace prenov {

struct ZWord {
    std::vector<DiffVar> letters;

    ZWord() = default;
    ZWord(std::vector<DiffVar> ls) : letters(std::move(ls)) // NOLINT(google-explicit-constructor)
    {
        if (letters.empty())
            throw std::invalid_argument("ZWord must be nonempty");
    }
    ZWord(std::initializer_list<DiffVar> ls) : ZWord(std::vector<DiffVar>(ls)) {}

    std::size_t length() const { return letters.size(); }

    int weight() const
    {
        int w = 0;
        for (const auto& l : letters)
            w += l.weight();
        return w;
    }

    std::string str() const
    {
        std::string s = "[";
        for (std::size_t i = 0; i < letters.size(); ++i)
            s += (i ? " " : "") + letters[i].str();
        return s + "]";
    }

    /// The right-normed term x1·(x2·(...)).
    Term to_term() const
    {
        Term t(letters.back());
        for (auto it = letters.rbegin() + 1; it != letters.rend(); ++it)
            t = mul(Term(*it), t);
        return t;
    }

    /// Length first, then lexicographic on letters.
    friend std::strong_ordering operator<=>(const ZWord& a, const ZWord& b)
    {
        if (auto c = a.letters.size() <=> b.letters.size(); c != 0)
            return c;
        return a.letters <=> b.letters;
    }
    friend bool operator==(const ZWord&, const ZWord&) = default;
};

using ZPoly = LinComb<ZWord>;

namespace zinbiel {

namespace detail {

inline void shuffle_into(const std::vector<DiffVar>& u, std::size_t i, const std::vector<DiffVar>& v, std::size_t j,
                         std::vector<DiffVar>& prefix, ZPoly& out)
{
    if (i == u.size() && j == v.size()) {
        out.add(ZWord(prefix), Scalar(1));
        return;
    }
    if (i < u.size()) {
        prefix.push_back(u[i]);
        shuffle_into(u, i + 1, v, j, prefix, out);
        prefix.pop_back();
    }
    if (j < v.size()) {
        prefix.push_back(v[j]);
        shuffle_into(u, i, v, j + 1, prefix, out);
        prefix.pop_back();
    }
}

} // namespace detail

/// [u]·[v] on basis words.
inline ZPoly mul_words(const ZWord& u, const ZWord& v)
{
    ZPoly out;
    std::vector<DiffVar> rest(u.letters.begin() + 1, u.letters.end());
    std::vector<DiffVar> prefix{u.letters.front()};
    detail::shuffle_into(rest, 0, v.letters, 0, prefix, out);
    return out;
}

inline ZPoly z_mul(const ZPoly& u, const ZPoly& v)
{
    ZPoly out;
    for (const auto& [a, ca] : u)
        for (const auto& [b, cb] : v)
            out.add(mul_words(a, b), ca * cb);
    return out;
}

/// Symmetrized product u★v = u·v + v·u (the shuffle product).
inline ZPoly z_star(const ZPoly& u, const ZPoly& v) { return z_mul(u, v) + z_mul(v, u); }

/// Leibniz extension of d(x^(n)) = x^(n+1).
inline ZPoly z_d(const ZPoly& p)
{
    ZPoly out;
    for (const auto& [w, c] : p)
        for (std::size_t i = 0; i < w.length(); ++i) {
            ZWord dw = w;
            dw.letters[i] = dw.letters[i].derived();
            out.add(dw, c);
        }
    return out;
}

/// Same as z_d for the second derivation ∂.
inline ZPoly z_dd(const ZPoly& p)
{
    ZPoly out;
    for (const auto& [w, c] : p)
        for (std::size_t i = 0; i < w.length(); ++i) {
            ZWord dw = w;
            dw.letters[i] = dw.letters[i].dderived();
            out.add(dw, c);
        }
    return out;
}

/// u ≺ v = u·d(v).
inline ZPoly z_prec(const ZPoly& u, const ZPoly& v) { return z_mul(u, z_d(v)); }
/// u ≻ v = d(u)·v.
inline ZPoly z_succ(const ZPoly& u, const ZPoly& v) { return z_mul(z_d(u), v); }

/// Common weight of the support; nullopt when inhomogeneous or zero.
inline std::optional<int> z_weight(const ZPoly& p)
{
    std::optional<int> w;
    for (const auto& [word, c] : p) {
        if (w && *w != word.weight())
            return std::nullopt;
        w = word.weight();
    }
    return w;
}

inline ZPoly letter(const DiffVar& v) { return ZPoly(ZWord{v}); }

/// Evaluates a term over {mul, prec, succ} through the shuffle formula.
inline ZPoly z_eval(const Term& t)
{
    if (t.is_leaf())
        return letter(t.var());
    ZPoly l = z_eval(t.left()), r = z_eval(t.right());
    switch (t.op()) {
    case Op::mul: return z_mul(l, r);
    case Op::prec: return z_prec(l, r);
    case Op::succ: return z_succ(l, r);
    default:
        throw std::invalid_argument("operation '" + std::string(op_name(t.op())) + "' has no Zinbiel meaning");
    }
}

inline ZPoly z_eval(const TermPoly& p)
{
    return p.map_linear([](const Term& t) { return z_eval(t); });
}

/// Image of a derived-operation term in the free differential Zinbiel
/// algebra. Leaves must be underived.
inline ZPoly z_eval_prenov(const Term& t)
{
    if (!t.uses_only(OpSignature::derived()))
        throw std::invalid_argument("z_eval_prenov: term must use only prec/succ");
    for (const auto& v : t.leaves())
        if (!v.underived())
            throw std::invalid_argument("z_eval_prenov: derived leaf " + v.str());
    return z_eval(t);
}

inline ZPoly z_eval_prenov(const TermPoly& p)
{
    return p.map_linear([](const Term& t) { return z_eval_prenov(t); });
}

// ---------------------------------------------------------------------------
// Rewriting normalizer, independent of the shuffle formula.
//
// Rule: (x·y)·z -> x·(y·z) + x·(z·y). A term is in normal form iff every
// left operand is a letter, i.e. it is right-normed.

enum class Strategy { leftmost_innermost, leftmost_outermost, rightmost_innermost, random };

namespace detail {

/// Redex positions as root-to-node paths (false = left, true = right),
/// collected in preorder.
inline void collect_redexes(const Term& t, std::vector<bool>& path, std::vector<std::vector<bool>>& out)
{
    if (t.is_leaf())
        return;
    if (!t.left().is_leaf())
        out.push_back(path);
    path.push_back(false);
    collect_redexes(t.left(), path, out);
    path.back() = true;
    collect_redexes(t.right(), path, out);
    path.pop_back();
}

inline bool is_prefix(const std::vector<bool>& a, const std::vector<bool>& b)
{
    return a.size() < b.size() && std::equal(a.begin(), a.end(), b.begin());
}

inline TermPoly rewrite_at(const Term& t, const std::vector<bool>& path, std::size_t depth = 0)
{
    if (depth == path.size()) {
        const Term& x = t.left().left();
        const Term& y = t.left().right();
        const Term& z = t.right();
        TermPoly out;
        out.add(mul(x, mul(y, z)), Scalar(1));
        out.add(mul(x, mul(z, y)), Scalar(1));
        return out;
    }
    TermPoly out;
    if (!path[depth]) {
        for (const auto& [l, c] : rewrite_at(t.left(), path, depth + 1))
            out.add(Term::node(t.op(), l, t.right()), c);
    } else {
        for (const auto& [r, c] : rewrite_at(t.right(), path, depth + 1))
            out.add(Term::node(t.op(), t.left(), r), c);
    }
    return out;
}

} // namespace detail

inline bool is_right_normed(const Term& t)
{
    return t.is_leaf() || (t.left().is_leaf() && is_right_normed(t.right()));
}

/// All redex positions of t in preorder.
inline std::vector<std::vector<bool>> redexes(const Term& t)
{
    std::vector<std::vector<bool>> out;
    std::vector<bool> path;
    detail::collect_redexes(t, path, out);
    return out;
}

/// One rewrite step at the given redex.
inline TermPoly rewrite_step(const Term& t, const std::vector<bool>& path) { return detail::rewrite_at(t, path); }

inline ZWord to_zword(const Term& t)
{
    std::vector<DiffVar> ls;
    const Term* cur = &t;
    while (!cur->is_leaf()) {
        if (cur->op() != Op::mul || !cur->left().is_leaf())
            throw std::logic_error("term is not right-normed: " + t.str());
        ls.push_back(cur->left().var());
        cur = &cur->right();
    }
    ls.push_back(cur->var());
    return ZWord(std::move(ls));
}

/// Normal form of a combination of {mul}-terms by rewriting to a fixed point.
inline ZPoly z_normalize(const TermPoly& p, Strategy strategy = Strategy::leftmost_innermost,
                         std::uint64_t seed = 0)
{
    for (const auto& [t, c] : p)
        if (!t.uses_only(OpSignature::multiplication()))
            throw std::invalid_argument("z_normalize: term must use only mul: " + t.str());
    std::mt19937_64 rng(seed);
    TermPoly work = p;
    ZPoly out;
    while (!work.is_zero()) {
        // Pick a term: the first in canonical order, or a random one.
        auto it = work.begin();
        if (strategy == Strategy::random) {
            std::uniform_int_distribution<std::size_t> pick(0, work.size() - 1);
            std::advance(it, static_cast<std::ptrdiff_t>(pick(rng)));
        }
        Term t = it->first;
        Scalar c = it->second;
        work.add(t, -c);
        auto rs = redexes(t);
        if (rs.empty()) {
            out.add(to_zword(t), c);
            continue;
        }
        std::vector<bool> chosen;
        auto innermost = [&](const std::vector<bool>& r) {
            for (const auto& s : rs)
                if (detail::is_prefix(r, s))
                    return false;
            return true;
        };
        switch (strategy) {
        case Strategy::leftmost_innermost:
            // Preorder lists a node before its subterms; the first innermost
            // redex in preorder is the leftmost one.
            for (const auto& r : rs)
                if (innermost(r)) {
                    chosen = r;
                    break;
                }
            break;
        case Strategy::leftmost_outermost:
            chosen = rs.front();
            break;
        case Strategy::rightmost_innermost:
            for (auto r = rs.rbegin(); r != rs.rend(); ++r)
                if (innermost(*r)) {
                    chosen = *r;
                    break;
                }
            break;
        case Strategy::random: {
            std::uniform_int_distribution<std::size_t> pick(0, rs.size() - 1);
            chosen = rs[pick(rng)];
            break;
        }
        }
        work.add(rewrite_step(t, chosen), c);
    }
    return out;
}

inline ZPoly z_normalize(const Term& t, Strategy strategy = Strategy::leftmost_innermost, std::uint64_t seed = 0)
{
    return z_normalize(TermPoly(t), strategy, seed);
}

} // namespace zinbiel
} // namespace prenov

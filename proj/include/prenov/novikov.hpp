#pragma once

// Free differential commutative algebra in letters x^(n,m), with the
// derivations d (first index) and ∂ (second index). Free Novikov algebras live
// inside it through the Gelfand product a∘b = a·d(b).

#include "term.hpp"

#include <algorithm>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace prenov {

/// Commutative monomial; letters kept sorted.
struct CMonomial {
    std::vector<DiffVar> letters;

    CMonomial() = default;
    CMonomial(std::vector<DiffVar> ls) : letters(std::move(ls)) { std::sort(letters.begin(), letters.end()); } // NOLINT
    CMonomial(std::initializer_list<DiffVar> ls) : CMonomial(std::vector<DiffVar>(ls)) {}

    std::size_t degree() const { return letters.size(); }

    int weight() const
    {
        int w = 0;
        for (const auto& l : letters)
            w += l.weight();
        return w;
    }

    int dd_weight() const
    {
        int w = 0;
        for (const auto& l : letters)
            w += l.dd_order - 1;
        return w;
    }

    std::string str() const
    {
        if (letters.empty())
            return "1";
        std::string s;
        for (std::size_t i = 0; i < letters.size(); ++i)
            s += (i ? " " : "") + letters[i].str();
        return s;
    }

    friend std::strong_ordering operator<=>(const CMonomial& a, const CMonomial& b)
    {
        if (auto c = a.letters.size() <=> b.letters.size(); c != 0)
            return c;
        return a.letters <=> b.letters;
    }
    friend bool operator==(const CMonomial&, const CMonomial&) = default;
};

using CPoly = LinComb<CMonomial>;

namespace novikov {

inline CPoly letter(const DiffVar& v) { return CPoly(CMonomial{v}); }

inline CPoly c_mul(const CPoly& u, const CPoly& v)
{
    CPoly out;
    for (const auto& [a, ca] : u)
        for (const auto& [b, cb] : v) {
            std::vector<DiffVar> ls = a.letters;
            ls.insert(ls.end(), b.letters.begin(), b.letters.end());
            out.add(CMonomial(std::move(ls)), ca * cb);
        }
    return out;
}

namespace detail {
template <class Bump>
CPoly leibniz(const CPoly& p, Bump bump)
{
    CPoly out;
    for (const auto& [m, c] : p)
        for (std::size_t i = 0; i < m.degree(); ++i) {
            std::vector<DiffVar> ls = m.letters;
            ls[i] = bump(ls[i]);
            out.add(CMonomial(std::move(ls)), c);
        }
    return out;
}
} // namespace detail

/// d: raises the first derivative index of one letter per summand.
inline CPoly c_d(const CPoly& p)
{
    return detail::leibniz(p, [](const DiffVar& v) { return v.derived(); });
}

/// ∂: raises the second derivative index.
inline CPoly c_dd(const CPoly& p)
{
    return detail::leibniz(p, [](const DiffVar& v) { return v.dderived(); });
}

inline CPoly c_d_pow(CPoly p, int k)
{
    for (int i = 0; i < k; ++i)
        p = c_d(p);
    return p;
}

inline CPoly c_dd_pow(CPoly p, int k)
{
    for (int i = 0; i < k; ++i)
        p = c_dd(p);
    return p;
}

/// Gelfand product u∘v = u·d(v).
inline CPoly nov_mul(const CPoly& u, const CPoly& v) { return c_mul(u, c_d(v)); }

/// Derived operations on the commutative algebra with d:
/// u ≺ v = u·d(v), u ≻ v = d(u)·v.
inline CPoly com_prec(const CPoly& u, const CPoly& v) { return c_mul(u, c_d(v)); }
inline CPoly com_succ(const CPoly& u, const CPoly& v) { return c_mul(c_d(u), v); }

struct DNovPair {
    CPoly succ; ///< u ≻ v = ∂(u)·d(v)
    CPoly prec; ///< u ≺ v = u·d∂(v)
};

/// Derived operations of a Novikov algebra with derivation ∂, realized
/// through the Gelfand product.
inline CPoly dnov_succ(const CPoly& u, const CPoly& v) { return nov_mul(c_dd(u), v); }
inline CPoly dnov_prec(const CPoly& u, const CPoly& v) { return nov_mul(u, c_dd(v)); }
inline DNovPair dnov_ops(const CPoly& u, const CPoly& v) { return {dnov_succ(u, v), dnov_prec(u, v)}; }

/// Common d-weight of the support; nullopt when inhomogeneous or zero.
inline std::optional<int> c_weight(const CPoly& p)
{
    std::optional<int> w;
    for (const auto& [m, c] : p) {
        if (w && *w != m.weight())
            return std::nullopt;
        w = m.weight();
    }
    return w;
}

inline std::optional<int> c_dd_weight(const CPoly& p)
{
    std::optional<int> w;
    for (const auto& [m, c] : p) {
        if (w && *w != m.dd_weight())
            return std::nullopt;
        w = m.dd_weight();
    }
    return w;
}

/// Multilinear monomials x1^(s1)...xn^(sn) with s1+...+sn = n-1, which
/// span the arity-n part of the free Novikov algebra. Listed in canonical
/// monomial order.
inline std::vector<CMonomial> nov_basis(int n)
{
    if (n < 1 || n > 8)
        throw std::invalid_argument("nov_basis: arity must be in 1..8");
    std::vector<CMonomial> out;
    std::vector<int> s(static_cast<std::size_t>(n), 0);
    auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == n - 1) {
            s[static_cast<std::size_t>(i)] = left;
            std::vector<DiffVar> ls;
            for (int j = 0; j < n; ++j)
                ls.push_back(std_var(j + 1).derived(s[static_cast<std::size_t>(j)]));
            out.emplace_back(std::move(ls));
            return;
        }
        for (int v = 0; v <= left; ++v) {
            s[static_cast<std::size_t>(i)] = v;
            self(self, i + 1, left - v);
        }
    };
    rec(rec, 0, n - 1);
    std::sort(out.begin(), out.end());
    return out;
}

/// Evaluates a term over {mul, prec, succ} in the commutative algebra with
/// one derivation, or over {nov} via the Gelfand product.
inline CPoly com_eval(const Term& t)
{
    if (t.is_leaf())
        return letter(t.var());
    CPoly l = com_eval(t.left()), r = com_eval(t.right());
    switch (t.op()) {
    case Op::mul: return c_mul(l, r);
    case Op::prec: return com_prec(l, r);
    case Op::succ: return com_succ(l, r);
    case Op::nov: return nov_mul(l, r);
    default:
        throw std::invalid_argument("operation '" + std::string(op_name(t.op())) + "' has no commutative meaning");
    }
}

/// Evaluates a term over {nov, prec, succ} in the bi-differential
/// realization: nov is the Gelfand product, prec/succ the ∂-derived ops.
inline CPoly dnov_eval(const Term& t)
{
    if (t.is_leaf())
        return letter(t.var());
    CPoly l = dnov_eval(t.left()), r = dnov_eval(t.right());
    switch (t.op()) {
    case Op::nov: return nov_mul(l, r);
    case Op::prec: return dnov_prec(l, r);
    case Op::succ: return dnov_succ(l, r);
    default:
        throw std::invalid_argument("operation '" + std::string(op_name(t.op())) + "' has no Novikov meaning");
    }
}

inline CPoly com_eval(const TermPoly& p)
{
    return p.map_linear([](const Term& t) { return com_eval(t); });
}

inline CPoly dnov_eval(const TermPoly& p)
{
    return p.map_linear([](const Term& t) { return dnov_eval(t); });
}

inline long binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

/// Checks a^(k)b = (a≻b)^(k-1) - Σ_{s≥1} C(k-1,s) a^(k-s) b^(s) in the
/// Novikov algebra with derivation ∂, where ^(j) is ∂^j and products are
/// Gelfand products.
inline bool verify_case1(int k)
{
    if (k < 1)
        throw std::invalid_argument("verify_case1: k must be >= 1");
    const CPoly a = letter(DiffVar("a")), b = letter(DiffVar("b"));
    CPoly lhs = nov_mul(c_dd_pow(a, k), b);
    CPoly rhs = c_dd_pow(dnov_succ(a, b), k - 1);
    for (int s = 1; s <= k - 1; ++s)
        rhs.add(nov_mul(c_dd_pow(a, k - s), c_dd_pow(b, s)), Scalar(-binomial(k - 1, s)));
    return lhs == rhs;
}

} // namespace novikov
} // namespace prenov

#pragma once

// Random generators and independent oracles shared by the unit tests and the
// acceptance runner.

#include "prenov/dendriform.hpp"
#include "prenov/novikov.hpp"
#include "prenov/operads.hpp"
#include "prenov/permutation.hpp"
#include "prenov/zinbiel.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace prenov::testing {

constexpr std::uint64_t kSeed = 20240228;

inline int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Scalar random_scalar(std::mt19937_64& rng, bool nonzero = false)
{
    int num = uniform(rng, -9, 9);
    if (nonzero && num == 0)
        num = 1;
    return Scalar(mpz_class(num), mpz_class(uniform(rng, 1, 6)));
}

inline DiffVar random_letter(std::mt19937_64& rng, int max_order = 2, int max_dd = 0)
{
    static const char* names[] = {"a", "b", "c", "x", "y"};
    return DiffVar(names[uniform(rng, 0, 4)], uniform(rng, 0, max_order), uniform(rng, 0, max_dd));
}

inline ZWord random_zword(std::mt19937_64& rng, int max_len = 3, int max_order = 2)
{
    std::vector<DiffVar> ls;
    int n = uniform(rng, 1, max_len);
    for (int i = 0; i < n; ++i)
        ls.push_back(random_letter(rng, max_order));
    return ZWord(std::move(ls));
}

inline ZPoly random_zpoly(std::mt19937_64& rng, int max_terms = 3, int max_len = 3, int max_order = 2)
{
    ZPoly p;
    int k = uniform(rng, 1, max_terms);
    for (int i = 0; i < k; ++i)
        p.add(random_zword(rng, max_len, max_order), random_scalar(rng, true));
    return p;
}

/// A random ZPoly homogeneous of the given letter count, for weight tests.
inline ZPoly random_homogeneous_zpoly(std::mt19937_64& rng, int len, int weight)
{
    ZPoly p;
    int k = uniform(rng, 1, 3);
    for (int i = 0; i < k; ++i) {
        // distribute weight + len derivative orders over len letters
        int orders = weight + len;
        std::vector<DiffVar> ls;
        for (int j = 0; j < len; ++j) {
            int o = j + 1 == len ? orders : uniform(rng, 0, orders);
            orders -= o;
            ls.push_back(DiffVar(std::string(1, static_cast<char>('a' + uniform(rng, 0, 2))), o));
        }
        p.add(ZWord(std::move(ls)), random_scalar(rng, true));
    }
    return p;
}

inline CMonomial random_cmonomial(std::mt19937_64& rng, int max_len = 3, int max_order = 3, int max_dd = 0)
{
    std::vector<DiffVar> ls;
    int n = uniform(rng, 1, max_len);
    for (int i = 0; i < n; ++i)
        ls.push_back(random_letter(rng, max_order, max_dd));
    return CMonomial(std::move(ls));
}

inline CPoly random_cpoly(std::mt19937_64& rng, int max_terms = 3, int max_len = 3, int max_order = 3, int max_dd = 0)
{
    CPoly p;
    int k = uniform(rng, 1, max_terms);
    for (int i = 0; i < k; ++i)
        p.add(random_cmonomial(rng, max_len, max_order, max_dd), random_scalar(rng, true));
    return p;
}

inline TermPoly as_terms(const ZPoly& p)
{
    TermPoly out;
    for (const auto& [w, c] : p)
        out.add(w.to_term(), c);
    return out;
}

/// Random mul-term with the given leaves in order and a random bracketing.
inline Term random_bracketing(std::mt19937_64& rng, const std::vector<Term>& leaves, std::size_t lo, std::size_t hi)
{
    if (hi - lo == 1)
        return leaves[lo];
    std::size_t mid = lo + 1 + static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(hi - lo) - 2));
    return mul(random_bracketing(rng, leaves, lo, mid), random_bracketing(rng, leaves, mid, hi));
}

inline Term random_mul_term(std::mt19937_64& rng, int degree, int max_order = 1)
{
    std::vector<Term> leaves;
    for (int i = 0; i < degree; ++i)
        leaves.emplace_back(random_letter(rng, max_order));
    return random_bracketing(rng, leaves, 0, leaves.size());
}

/// Random multilinear combination of mul-monomials of arity n.
inline TermPoly random_multilinear(std::mt19937_64& rng, int n, Op op = Op::mul)
{
    auto perms = Permutation::all(n);
    TermPoly p;
    int k = uniform(rng, 1, 4);
    for (int i = 0; i < k; ++i) {
        const auto& sigma = perms[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(perms.size()) - 1))];
        std::vector<Term> leaves;
        for (int j = 1; j <= n; ++j)
            leaves.emplace_back(std_var(sigma(j)));
        Term t = random_bracketing(rng, leaves, 0, leaves.size());
        if (op != Op::mul)
            t = relabel_ops(t, [&](Op) { return std::pair<Op, bool>{op, false}; });
        p.add(t, random_scalar(rng, true));
    }
    return p;
}

/// Plain Gaussian elimination over mpq_class, independent of the Bareiss code.
inline std::size_t oracle_rank(std::vector<std::vector<mpq_class>> m)
{
    std::size_t r = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0)
            ++p;
        if (p == m.size())
            continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0)
                continue;
            mpq_class f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j)
                m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

inline std::vector<std::vector<mpq_class>> to_mpq(const ExactMatrix& m)
{
    std::vector<std::vector<mpq_class>> out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::vector<mpq_class> row;
        for (const auto& s : m.row(i))
            row.push_back(s.value());
        out.push_back(std::move(row));
    }
    return out;
}

inline ExactMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int zero_bias = 1)
{
    ExactMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = uniform(rng, 0, zero_bias) == 0 ? random_scalar(rng) : Scalar(0);
    return m;
}

/// Independent shuffle enumeration: [u]·[v] as the sum over all ways of
/// placing the letters of v among u2..un (u1 stays first).
inline ZPoly oracle_zinbiel_product(const ZWord& u, const ZWord& v)
{
    const std::size_t n = u.length() - 1, m = v.length();
    ZPoly out;
    // choose which of the n+m tail positions hold letters of v
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n + m)); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcountll(mask)) != m)
            continue;
        std::vector<DiffVar> w{u.letters[0]};
        std::size_t iu = 1, iv = 0;
        for (std::size_t pos = 0; pos < n + m; ++pos)
            w.push_back((mask >> pos) & 1U ? v.letters[iv++] : u.letters[iu++]);
        out.add(ZWord(std::move(w)), Scalar(1));
    }
    return out;
}

inline ZPoly oracle_zinbiel_product(const ZPoly& u, const ZPoly& v)
{
    ZPoly out;
    for (const auto& [a, c] : u)
        for (const auto& [b, e] : v)
            out.add(oracle_zinbiel_product(a, b), c * e);
    return out;
}

/// Every normal form reachable from p by any order of rewrite steps.
inline std::set<std::string> all_rewrite_outcomes(const TermPoly& start)
{
    std::set<std::string> finals;
    std::set<std::string> visited;
    std::vector<TermPoly> stack{start};
    while (!stack.empty()) {
        TermPoly p = stack.back();
        stack.pop_back();
        std::string key = sexpr(p);
        if (!visited.insert(key).second)
            continue;
        bool normal = true;
        for (const auto& [t, c] : p)
            for (const auto& path : zinbiel::redexes(t)) {
                normal = false;
                TermPoly next = p;
                next.add(t, -c);
                next.add(zinbiel::rewrite_step(t, path), c);
                stack.push_back(std::move(next));
            }
        if (normal)
            finals.insert(key);
    }
    return finals;
}

/// (xy)z - x(yz) - (yx)z + y(xz) for the product m.
template <class P, class Mul>
P left_symmetry_value(const P& x, const P& y, const P& z, Mul m)
{
    return m(m(x, y), z) - m(x, m(y, z)) - m(m(y, x), z) + m(y, m(x, z));
}

/// (xy)z - (xz)y for the product m.
template <class P, class Mul>
P right_commutativity_value(const P& x, const P& y, const P& z, Mul m)
{
    return m(m(x, y), z) - m(m(x, z), y);
}

} // namespace prenov::testing

#pragma once

// Dendriform splitting of multilinear identities, the ⊢/⊣ <-> ≻/≺
// renaming, span comparison of identity systems, and the Perm-tensor test.

#include "matrix.hpp"
#include "permutation.hpp"
#include "zinbiel.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace prenov::dendriform {

namespace detail {

inline bool contains_var(const Term& t, const DiffVar& v)
{
    if (t.is_leaf())
        return t.var().base == v.base;
    return contains_var(t.left(), v) || contains_var(t.right(), v);
}

inline TermPoly split_monomial(const Term& u, const DiffVar& marked)
{
    if (u.is_leaf())
        return TermPoly(u);
    if (u.op() != Op::mul)
        throw std::invalid_argument("split: term must use only mul: " + u.str());
    TermPoly l = split_monomial(u.left(), marked);
    TermPoly r = split_monomial(u.right(), marked);
    if (contains_var(u.left(), marked))
        return apply_op(Op::rprod, l, r);
    if (contains_var(u.right(), marked))
        return apply_op(Op::lprod, l, r);
    return apply_op(Op::rprod, l, r) + apply_op(Op::lprod, l, r);
}

} // namespace detail

/// f^[k]: each product becomes ⊣ when x_k lies in its left factor, ⊢ when it
/// lies in the right factor, and ⊣ + ⊢ when x_k does not occur.
inline TermPoly split(const TermPoly& f, int k)
{
    auto n = multilinear_arity(f);
    if (!n)
        throw std::invalid_argument("split: identity is not multilinear in x1..xn");
    if (k < 1 || k > *n)
        throw std::invalid_argument("split: k = " + std::to_string(k) + " out of range 1.." + std::to_string(*n));
    const DiffVar marked = std_var(k);
    return f.map_linear([&](const Term& t) { return detail::split_monomial(t, marked); });
}

/// {f^[1], ..., f^[n]}.
inline std::vector<TermPoly> split_all(const TermPoly& f)
{
    auto n = multilinear_arity(f);
    if (!n)
        throw std::invalid_argument("split: identity is not multilinear in x1..xn");
    std::vector<TermPoly> out;
    for (int k = 1; k <= *n; ++k)
        out.push_back(split(f, k));
    return out;
}

/// x⊣y -> x≺y and x⊢y -> y≻x, node by node.
inline Term rename_to_prenov(const Term& t)
{
    return relabel_ops(t, [&](Op op) -> std::pair<Op, bool> {
        switch (op) {
        case Op::rprod: return {Op::prec, false};
        case Op::lprod: return {Op::succ, true};
        default: throw std::invalid_argument("rename_to_prenov: unexpected operation " + std::string(op_name(op)));
        }
    });
}

/// Inverse renaming: x≺y -> x⊣y, x≻y -> y⊢x.
inline Term rename_to_dendriform(const Term& t)
{
    return relabel_ops(t, [&](Op op) -> std::pair<Op, bool> {
        switch (op) {
        case Op::prec: return {Op::rprod, false};
        case Op::succ: return {Op::lprod, true};
        default: throw std::invalid_argument("rename_to_dendriform: unexpected operation " + std::string(op_name(op)));
        }
    });
}

inline TermPoly rename_to_prenov(const TermPoly& p)
{
    return p.map_linear([](const Term& t) { return TermPoly(rename_to_prenov(t)); });
}

inline TermPoly rename_to_dendriform(const TermPoly& p)
{
    return p.map_linear([](const Term& t) { return TermPoly(rename_to_dendriform(t)); });
}

/// The S_n-closure of a system of multilinear identities of arity n.
inline std::vector<TermPoly> symmetric_closure(const std::vector<TermPoly>& sys, int n)
{
    std::vector<TermPoly> out;
    for (const auto& f : sys) {
        if (f.is_zero())
            continue;
        auto m = multilinear_arity(f);
        if (!m || *m != n)
            throw std::invalid_argument("identity is not multilinear of arity " + std::to_string(n) + ": " +
                                        sexpr(f));
        for (const auto& sigma : Permutation::all(n))
            out.push_back(apply_permutation(f, sigma));
    }
    return out;
}

/// Rank of a set of combinations over the union of their supports.
inline std::size_t span_rank(const std::vector<TermPoly>& polys)
{
    std::map<Term, std::size_t> index;
    for (const auto& p : polys)
        for (const auto& [t, c] : p)
            index.emplace(t, 0);
    std::size_t j = 0;
    for (auto& [t, col] : index)
        col = j++;
    ExactMatrix m(0, index.size());
    for (const auto& p : polys) {
        std::vector<Scalar> row(index.size());
        for (const auto& [t, c] : p)
            row[index.at(t)] = c;
        m.add_row(std::move(row));
    }
    return rank(m);
}

/// True iff the S_n-closures of A and B span the same space.
inline bool span_equal(const std::vector<TermPoly>& a, const std::vector<TermPoly>& b, int n)
{
    auto ca = symmetric_closure(a, n);
    auto cb = symmetric_closure(b, n);
    auto both = ca;
    both.insert(both.end(), cb.begin(), cb.end());
    std::size_t ra = span_rank(ca), rb = span_rank(cb), rab = span_rank(both);
    return ra == rab && rb == rab;
}

/// Finite-dimensional Perm algebra (associative, x1x2x3 = x2x1x3) given by
/// structure constants e_i e_j = Σ_k c[i][j][k] e_k.
class PermAlgebra {
public:
    using Constants = std::vector<std::vector<std::vector<Scalar>>>;

    explicit PermAlgebra(Constants c) : c_(std::move(c))
    {
        const std::size_t n = c_.size();
        if (n == 0)
            throw std::invalid_argument("Perm algebra must have positive dimension");
        for (const auto& row : c_) {
            if (row.size() != n)
                throw std::invalid_argument("structure constants are not n x n x n");
            for (const auto& v : row)
                if (v.size() != n)
                    throw std::invalid_argument("structure constants are not n x n x n");
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    auto ij_k = mul(mul(unit(i), unit(j)), unit(k));
                    if (ij_k != mul(unit(i), mul(unit(j), unit(k))))
                        throw std::invalid_argument("structure constants are not associative");
                    if (ij_k != mul(mul(unit(j), unit(i)), unit(k)))
                        throw std::invalid_argument("structure constants are not left commutative");
                }
    }

    std::size_t dim() const { return c_.size(); }

    std::vector<Scalar> unit(std::size_t i) const
    {
        std::vector<Scalar> v(dim());
        v[i] = Scalar(1);
        return v;
    }

    std::vector<Scalar> mul(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const
    {
        std::vector<Scalar> out(dim());
        for (std::size_t i = 0; i < dim(); ++i) {
            if (x[i].is_zero())
                continue;
            for (std::size_t j = 0; j < dim(); ++j) {
                if (y[j].is_zero())
                    continue;
                Scalar s = x[i] * y[j];
                for (std::size_t k = 0; k < dim(); ++k)
                    if (!c_[i][j][k].is_zero())
                        out[k] += s * c_[i][j][k];
            }
        }
        return out;
    }

    /// e_i e_j as a coordinate vector.
    const std::vector<Scalar>& product(std::size_t i, std::size_t j) const { return c_[i][j]; }

    /// e·e = e.
    static PermAlgebra one_dimensional() { return PermAlgebra({{{Scalar(1)}}}); }

    /// e_i e_j = e_j.
    static PermAlgebra right_projection(std::size_t n = 2)
    {
        Constants c(n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                c[i][j][j] = Scalar(1);
        return PermAlgebra(std::move(c));
    }

private:
    Constants c_;
};

/// A pair of bilinear operations ⊢, ⊣ on the differential Zinbiel algebra.
struct DendriformOps {
    std::function<ZPoly(const ZPoly&, const ZPoly&)> lprod;
    std::function<ZPoly(const ZPoly&, const ZPoly&)> rprod;

    /// u⊣v = u≺v and u⊢v = v≻u.
    static DendriformOps from_derived_zinbiel()
    {
        return {[](const ZPoly& u, const ZPoly& v) { return zinbiel::z_succ(v, u); },
                [](const ZPoly& u, const ZPoly& v) { return zinbiel::z_prec(u, v); }};
    }
};

/// Element Σ_i e_i ⊗ v_i of P ⊗ V, stored by P-coordinate.
using TensorElement = std::vector<ZPoly>;

/// (p⊗u)(q⊗v) = pq⊗(u⊢v) + qp⊗(u⊣v), extended bilinearly.
inline TensorElement perm_tensor_product(const PermAlgebra& p, const TensorElement& x, const TensorElement& y,
                                         const DendriformOps& ops = DendriformOps::from_derived_zinbiel())
{
    if (x.size() != p.dim() || y.size() != p.dim())
        throw std::invalid_argument("perm_tensor_product: element dimension does not match the Perm algebra");
    TensorElement out(p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i) {
        if (x[i].is_zero())
            continue;
        for (std::size_t j = 0; j < p.dim(); ++j) {
            if (y[j].is_zero())
                continue;
            ZPoly l = ops.lprod(x[i], y[j]);
            ZPoly r = ops.rprod(x[i], y[j]);
            const auto& ij = p.product(i, j);
            const auto& ji = p.product(j, i);
            for (std::size_t k = 0; k < p.dim(); ++k) {
                if (!ij[k].is_zero())
                    out[k].add(l, ij[k]);
                if (!ji[k].is_zero())
                    out[k].add(r, ji[k]);
            }
        }
    }
    return out;
}

/// Small random element of the free differential Zinbiel algebra on a, b, c.
inline ZPoly random_component(std::mt19937_64& rng, int max_words = 2, int max_len = 2, int max_order = 1)
{
    std::uniform_int_distribution<int> nwords(1, max_words), len(1, max_len), order(0, max_order), sym(0, 2),
        coef(-3, 3);
    static const char* names[] = {"a", "b", "c"};
    ZPoly p;
    int k = nwords(rng);
    for (int i = 0; i < k; ++i) {
        std::vector<DiffVar> ls;
        int l = len(rng);
        for (int j = 0; j < l; ++j)
            ls.emplace_back(names[sym(rng)], order(rng));
        int c = coef(rng);
        p.add(ZWord(std::move(ls)), Scalar(c == 0 ? 1 : c));
    }
    return p;
}

inline TensorElement random_tensor(const PermAlgebra& p, std::mt19937_64& rng)
{
    TensorElement x(p.dim());
    for (auto& v : x)
        v = random_component(rng, 2, 1, 1);
    return x;
}

/// Checks left symmetry and right commutativity of the product on P⊗V on
/// `trials` random triples.
inline bool perm_tensor_novikov_check(const PermAlgebra& p, int trials, std::uint64_t seed = 20240228,
                                      const DendriformOps& ops = DendriformOps::from_derived_zinbiel())
{
    if (trials < 1)
        throw std::invalid_argument("perm_tensor_novikov_check: trials must be >= 1");
    std::mt19937_64 rng(seed);
    auto m = [&](const TensorElement& a, const TensorElement& b) { return perm_tensor_product(p, a, b, ops); };
    auto sub = [](TensorElement a, const TensorElement& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            a[i] -= b[i];
        return a;
    };
    auto zero = [](const TensorElement& a) {
        for (const auto& v : a)
            if (!v.is_zero())
                return false;
        return true;
    };
    for (int t = 0; t < trials; ++t) {
        auto x = random_tensor(p, rng), y = random_tensor(p, rng), z = random_tensor(p, rng);
        // (xy)z - x(yz) = (yx)z - y(xz)
        auto lsym = sub(sub(m(m(x, y), z), m(x, m(y, z))), sub(m(m(y, x), z), m(y, m(x, z))));
        if (!zero(lsym))
            return false;
        // (xy)z = (xz)y
        if (!zero(sub(m(m(x, y), z), m(m(x, z), y))))
            return false;
    }
    return true;
}

} // namespace prenov::dendriform

#pragma once

// Multilinear components of derived varieties at low arity. Every
// {prec, succ}-monomial in x1..xn is evaluated in the free differential
// Var-algebra; the span of the images is the arity-n component of the white
// product Nov∘Var and the left kernel is the space of its relations.

#include "matrix.hpp"
#include "novikov.hpp"
#include "permutation.hpp"
#include "zinbiel.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace prenov {

enum class Variety { Com, Zinb, Nov };

inline std::string_view variety_name(Variety v)
{
    switch (v) {
    case Variety::Com: return "com";
    case Variety::Zinb: return "zinb";
    case Variety::Nov: return "nov";
    }
    return "?";
}

inline std::optional<Variety> variety_from_name(std::string_view s)
{
    for (Variety v : {Variety::Com, Variety::Zinb, Variety::Nov})
        if (variety_name(v) == s)
            return v;
    return std::nullopt;
}

using BasisElement = std::variant<ZWord, CMonomial>;

inline std::string basis_str(const BasisElement& b)
{
    return std::visit([](const auto& x) { return x.str(); }, b);
}

inline int basis_weight(const BasisElement& b)
{
    return std::visit([](const auto& x) { return x.weight(); }, b);
}

namespace operads {

namespace detail {

/// Binary tree shapes with n leaves, all leaves "_".
inline std::vector<Term> shapes(int n)
{
    if (n == 1)
        return {Term("_")};
    std::vector<Term> out;
    for (int k = 1; k < n; ++k)
        for (const auto& l : shapes(k))
            for (const auto& r : shapes(n - k))
                out.push_back(mul(l, r));
    return out;
}

inline Term fill(const Term& shape, const std::vector<Op>& labels, std::size_t& li, const std::vector<int>& perm,
                 std::size_t& pi)
{
    if (shape.is_leaf())
        return Term(std_var(perm[pi++]));
    Op op = labels[li++];
    Term l = fill(shape.left(), labels, li, perm, pi);
    Term r = fill(shape.right(), labels, li, perm, pi);
    return Term::node(op, l, r);
}

} // namespace detail

/// All multilinear {prec, succ}-monomials of degree n in x1..xn, ordered by
/// tree shape, then labeling (preorder, prec before succ), then leaf
/// permutation.
inline std::vector<Term> enumerate_monomials(int n)
{
    if (n < 2 || n > 4)
        throw std::invalid_argument("enumerate_monomials: arity must be in 2..4");
    std::vector<Term> out;
    const int internal = n - 1;
    auto perms = Permutation::all(n);
    for (const auto& shape : detail::shapes(n))
        for (unsigned mask = 0; mask < (1U << internal); ++mask) {
            std::vector<Op> labels;
            for (int i = internal - 1; i >= 0; --i)
                labels.push_back((mask >> i) & 1U ? Op::succ : Op::prec);
            for (const auto& p : perms) {
                std::size_t li = 0, pi = 0;
                out.push_back(detail::fill(shape, labels, li, p.images(), pi));
            }
        }
    return out;
}

/// All multilinear monomials of degree n in x1..xn with every node labeled
/// `op`, ordered by tree shape and then leaf permutation.
inline std::vector<Term> single_op_monomials(int n, Op op)
{
    if (n < 1 || n > 6)
        throw std::invalid_argument("single_op_monomials: arity must be in 1..6");
    std::vector<Term> out;
    std::vector<Op> labels(static_cast<std::size_t>(n - 1), op);
    auto perms = Permutation::all(n);
    for (const auto& shape : detail::shapes(n))
        for (const auto& p : perms) {
            std::size_t li = 0, pi = 0;
            out.push_back(detail::fill(shape, labels, li, p.images(), pi));
        }
    return out;
}

using EvalVector = std::vector<std::pair<BasisElement, Scalar>>;

/// Image of a {prec, succ}-combination in the free differential
/// Var-algebra: Com uses one derivation, Zinb the shuffle realization, Nov
/// the bi-differential commutative realization.
inline EvalVector evaluate(Variety var, const TermPoly& p)
{
    EvalVector out;
    for (const auto& [t, c] : p)
        if (!t.uses_only(OpSignature::derived()))
            throw std::invalid_argument("evaluate: term must use only prec/succ: " + t.str());
    switch (var) {
    case Variety::Zinb:
        for (const auto& [w, c] : zinbiel::z_eval(p))
            out.emplace_back(w, c);
        break;
    case Variety::Com:
        for (const auto& [m, c] : novikov::com_eval(p))
            out.emplace_back(m, c);
        break;
    case Variety::Nov:
        for (const auto& [m, c] : novikov::dnov_eval(p))
            out.emplace_back(m, c);
        break;
    }
    return out;
}

struct EvalMatrix {
    ExactMatrix matrix;              ///< row i: coordinates of monomial i
    std::vector<BasisElement> basis; ///< column labels, canonical order
    std::vector<Term> monomials;
};

/// Evaluation matrix over the basis elements that actually occur.
inline EvalMatrix eval_matrix(Variety var, int n)
{
    EvalMatrix em;
    em.monomials = enumerate_monomials(n);
    std::vector<EvalVector> rows;
    rows.reserve(em.monomials.size());
    std::map<BasisElement, std::size_t> index;
    for (const auto& t : em.monomials) {
        rows.push_back(evaluate(var, TermPoly(t)));
        for (const auto& [b, c] : rows.back())
            index.emplace(b, 0);
    }
    std::size_t j = 0;
    for (auto& [b, col] : index) {
        col = j++;
        em.basis.push_back(b);
    }
    em.matrix = ExactMatrix(rows.size(), index.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [b, c] : rows[i])
            em.matrix(i, index.at(b)) = c;
    return em;
}

/// Identity check by evaluation in the free differential Var-algebra.
inline bool verify_identity(const TermPoly& id, Variety var) { return evaluate(var, id).empty(); }

/// Converts a row vector over the monomial list back into a combination.
inline TermPoly to_poly(const std::vector<Term>& monomials, const std::vector<Scalar>& coeffs)
{
    TermPoly p;
    for (std::size_t i = 0; i < monomials.size(); ++i)
        p.add(monomials[i], coeffs[i]);
    return p;
}

struct RelationReport {
    EvalMatrix eval;
    std::size_t rank = 0;
    ExactMatrix kernel;             ///< RREF rows over the monomial order
    std::vector<TermPoly> relations;
};

inline RelationReport relations(Variety var, int n)
{
    RelationReport rep;
    rep.eval = eval_matrix(var, n);
    rep.rank = rank(rep.eval.matrix);
    rep.kernel = left_kernel(rep.eval.matrix);
    for (std::size_t i = 0; i < rep.kernel.rows(); ++i)
        rep.relations.push_back(to_poly(rep.eval.monomials, rep.kernel.row(i)));
    return rep;
}

/// Basis of the degree-n multilinear identities of the derived variety.
inline std::vector<TermPoly> relation_kernel(Variety var, int n) { return relations(var, n).relations; }

/// Coordinates of a combination over a monomial list; nullopt if some term
/// is not in the list.
inline std::optional<std::vector<Scalar>> coordinates(const TermPoly& p, const std::map<Term, std::size_t>& index)
{
    std::vector<Scalar> v(index.size());
    for (const auto& [t, c] : p) {
        auto it = index.find(t);
        if (it == index.end())
            return std::nullopt;
        v[it->second] = c;
    }
    return v;
}

/// True iff p lies in the span of `basis` (all over the same monomials).
inline bool in_span(const std::vector<TermPoly>& basis, const TermPoly& p)
{
    std::map<Term, std::size_t> index;
    for (const auto& b : basis)
        for (const auto& [t, c] : b)
            index.emplace(t, 0);
    for (const auto& [t, c] : p)
        index.emplace(t, 0);
    std::size_t j = 0;
    for (auto& [t, col] : index)
        col = j++;
    ExactMatrix m(0, index.size());
    for (const auto& b : basis)
        m.add_row(*coordinates(b, index));
    return in_row_space(m, *coordinates(p, index));
}

/// True iff the span of `rels` is closed under the S_n action.
inline bool is_symmetric_submodule(const std::vector<TermPoly>& rels, int n)
{
    for (const auto& sigma : Permutation::all(n))
        for (const auto& r : rels)
            if (!in_span(rels, apply_permutation(r, sigma)))
                return false;
    return true;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
        throw std::overflow_error("dimension overflows 64 bits");
    return a * b;
}

inline std::uint64_t nov_dim(int n)
{
    if (n < 1)
        throw std::invalid_argument("arity must be >= 1");
    // C(2n-2, n-1), exact at every step.
    std::uint64_t r = 1;
    for (int i = 1; i <= n - 1; ++i)
        r = checked_mul(r, static_cast<std::uint64_t>(n - 1 + i)) / static_cast<std::uint64_t>(i);
    return r;
}

inline std::uint64_t zinb_dim(int n)
{
    if (n < 1)
        throw std::invalid_argument("arity must be >= 1");
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i)
        r = checked_mul(r, static_cast<std::uint64_t>(i));
    return r;
}

inline std::uint64_t variety_dim(Variety var, int n)
{
    switch (var) {
    case Variety::Com: return n >= 1 ? 1 : throw std::invalid_argument("arity must be >= 1");
    case Variety::Zinb: return zinb_dim(n);
    case Variety::Nov: return nov_dim(n);
    }
    return 0;
}

/// Dimension of the arity-n multilinear component of the free Var-algebra,
/// found by enumeration: Com and Zinb count the distinct normal forms reached
/// by all single-operation monomials; Nov takes the rank of their Gelfand
/// images in the differential commutative algebra.
inline std::size_t enumerated_dim(Variety var, int n)
{
    switch (var) {
    case Variety::Com: {
        std::set<CMonomial> seen;
        for (const auto& t : single_op_monomials(n, Op::mul))
            for (const auto& [m, c] : novikov::com_eval(t))
                seen.insert(m);
        return seen.size();
    }
    case Variety::Zinb: {
        std::set<ZWord> seen;
        for (const auto& t : single_op_monomials(n, Op::mul))
            for (const auto& [w, c] : zinbiel::z_eval(t))
                seen.insert(w);
        return seen.size();
    }
    case Variety::Nov: {
        std::set<std::vector<std::pair<CMonomial, Scalar>>> rows;
        std::map<CMonomial, std::size_t> index;
        for (const auto& t : single_op_monomials(n, Op::nov)) {
            std::vector<std::pair<CMonomial, Scalar>> row;
            for (const auto& [m, c] : novikov::com_eval(t)) {
                row.emplace_back(m, c);
                index.emplace(m, 0);
            }
            rows.insert(std::move(row));
        }
        std::size_t j = 0;
        for (auto& [m, col] : index)
            col = j++;
        ExactMatrix mat(0, index.size());
        for (const auto& row : rows) {
            std::vector<Scalar> v(index.size());
            for (const auto& [m, c] : row)
                v[index.at(m)] = c;
            mat.add_row(std::move(v));
        }
        return rank(mat);
    }
    }
    return 0;
}

/// dim (Nov ⊗ Var)(n).
inline std::uint64_t hadamard_dim(Variety var, int n) { return checked_mul(nov_dim(n), variety_dim(var, n)); }

struct WhiteVsHadamard {
    std::size_t white_dim = 0;
    std::uint64_t hadamard_dim = 0;
    bool equal = false;
};

inline WhiteVsHadamard white_vs_hadamard(Variety var, int n)
{
    WhiteVsHadamard r;
    r.white_dim = rank(eval_matrix(var, n).matrix);
    r.hadamard_dim = hadamard_dim(var, n);
    r.equal = r.white_dim == r.hadamard_dim;
    return r;
}

} // namespace operads
} // namespace prenov

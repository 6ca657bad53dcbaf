#pragma once

#include "diffvar.hpp"
#include "lincomb.hpp"

#include <algorithm>
#include <array>
#include <compare>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace prenov {

/// Binary operation labels. lprod is ⊢, rprod is ⊣, nov is the Gelfand
/// product a·d(b).
enum class Op { mul, prec, succ, lprod, rprod, nov };

inline std::string_view op_name(Op op)
{
    switch (op) {
    case Op::mul: return "mul";
    case Op::prec: return "prec";
    case Op::succ: return "succ";
    case Op::lprod: return "lprod";
    case Op::rprod: return "rprod";
    case Op::nov: return "nov";
    }
    return "?";
}

inline std::optional<Op> op_from_name(std::string_view s)
{
    for (Op op : {Op::mul, Op::prec, Op::succ, Op::lprod, Op::rprod, Op::nov})
        if (op_name(op) == s)
            return op;
    return std::nullopt;
}

/// Ops compare by name.
inline std::strong_ordering compare_ops(Op a, Op b)
{
    int c = op_name(a).compare(op_name(b));
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

class OpSignature {
public:
    OpSignature(std::initializer_list<Op> ops) : OpSignature(std::vector<Op>(ops)) {}
    explicit OpSignature(std::vector<Op> ops) : ops_(std::move(ops))
    {
        if (ops_.empty())
            throw std::invalid_argument("operation signature must be nonempty");
        std::set<Op> seen(ops_.begin(), ops_.end());
        if (seen.size() != ops_.size())
            throw std::invalid_argument("operation signature has duplicate names");
    }

    bool contains(Op op) const { return std::find(ops_.begin(), ops_.end(), op) != ops_.end(); }
    const std::vector<Op>& ops() const { return ops_; }

    static OpSignature multiplication() { return {Op::mul}; }
    static OpSignature derived() { return {Op::prec, Op::succ}; }
    static OpSignature dendriform() { return {Op::lprod, Op::rprod}; }

private:
    std::vector<Op> ops_;
};

struct TermNode;

/// Immutable operation-labeled binary tree over differential letters.
/// Copies share structure.
class Term {
public:
    Term(DiffVar v); // NOLINT(google-explicit-constructor)
    Term(std::string_view name) : Term(DiffVar(std::string(name))) {} // NOLINT
    Term(const char* name) : Term(std::string_view(name)) {}          // NOLINT

    static Term node(Op op, Term l, Term r);

    bool is_leaf() const;
    const DiffVar& var() const;
    Op op() const;
    const Term& left() const;
    const Term& right() const;
    int degree() const;

    int weight() const
    {
        if (is_leaf())
            return var().weight();
        return left().weight() + right().weight();
    }

    /// Leaves left to right.
    std::vector<DiffVar> leaves() const
    {
        std::vector<DiffVar> out;
        collect_leaves(out);
        return out;
    }

    bool uses_only(const OpSignature& sig) const
    {
        if (is_leaf())
            return true;
        return sig.contains(op()) && left().uses_only(sig) && right().uses_only(sig);
    }

    /// S-expression form, e.g. "(prec (succ x1 x2) x3)".
    std::string str() const
    {
        if (is_leaf())
            return var().str();
        return "(" + std::string(op_name(op())) + " " + left().str() + " " + right().str() + ")";
    }

    /// Infix form with ≺ ≻ ⊢ ⊣ symbols, for transcripts.
    std::string infix() const
    {
        if (is_leaf())
            return var().str();
        static constexpr std::array<std::string_view, 6> sym{"·", "≺", "≻", "⊢", "⊣", "∘"};
        auto side = [](const Term& t) { return t.is_leaf() ? t.infix() : "(" + t.infix() + ")"; };
        return side(left()) + " " + std::string(sym[static_cast<int>(op())]) + " " + side(right());
    }

    /// Canonical order: degree, then tree shape, then operation names in
    /// preorder, then leaves left to right.
    friend std::strong_ordering operator<=>(const Term& a, const Term& b)
    {
        if (a.node_ == b.node_)
            return std::strong_ordering::equal;
        if (auto c = a.degree() <=> b.degree(); c != 0)
            return c;
        if (auto c = compare_shape(a, b); c != 0)
            return c;
        if (auto c = compare_labels(a, b); c != 0)
            return c;
        return compare_leaves(a, b);
    }
    friend bool operator==(const Term& a, const Term& b) { return (a <=> b) == 0; }

private:
    explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}

    void collect_leaves(std::vector<DiffVar>& out) const
    {
        if (is_leaf()) {
            out.push_back(var());
            return;
        }
        left().collect_leaves(out);
        right().collect_leaves(out);
    }

    static std::strong_ordering compare_shape(const Term& a, const Term& b)
    {
        if (a.is_leaf() || b.is_leaf())
            return a.degree() <=> b.degree();
        if (auto c = a.left().degree() <=> b.left().degree(); c != 0)
            return c;
        if (auto c = compare_shape(a.left(), b.left()); c != 0)
            return c;
        return compare_shape(a.right(), b.right());
    }
    static std::strong_ordering compare_labels(const Term& a, const Term& b)
    {
        if (a.is_leaf())
            return std::strong_ordering::equal;
        if (auto c = compare_ops(a.op(), b.op()); c != 0)
            return c;
        if (auto c = compare_labels(a.left(), b.left()); c != 0)
            return c;
        return compare_labels(a.right(), b.right());
    }
    static std::strong_ordering compare_leaves(const Term& a, const Term& b)
    {
        if (a.is_leaf())
            return a.var() <=> b.var();
        if (auto c = compare_leaves(a.left(), b.left()); c != 0)
            return c;
        return compare_leaves(a.right(), b.right());
    }

    std::shared_ptr<const TermNode> node_;
};

struct TermNode {
    std::optional<DiffVar> leaf;
    Op op = Op::mul;
    std::optional<Term> left;
    std::optional<Term> right;
    int degree = 1;
};

inline Term::Term(DiffVar v) : node_(std::make_shared<const TermNode>(TermNode{std::move(v), Op::mul, {}, {}, 1})) {}

inline Term Term::node(Op op, Term l, Term r)
{
    int deg = l.degree() + r.degree();
    return Term(std::make_shared<const TermNode>(TermNode{std::nullopt, op, std::move(l), std::move(r), deg}));
}

inline bool Term::is_leaf() const { return node_->leaf.has_value(); }
inline const DiffVar& Term::var() const { return *node_->leaf; }
inline Op Term::op() const { return node_->op; }
inline const Term& Term::left() const { return *node_->left; }
inline const Term& Term::right() const { return *node_->right; }
inline int Term::degree() const { return node_->degree; }

using TermPoly = LinComb<Term>;

inline Term mul(Term a, Term b) { return Term::node(Op::mul, std::move(a), std::move(b)); }
inline Term prec(Term a, Term b) { return Term::node(Op::prec, std::move(a), std::move(b)); }
inline Term succ(Term a, Term b) { return Term::node(Op::succ, std::move(a), std::move(b)); }
inline Term lprod(Term a, Term b) { return Term::node(Op::lprod, std::move(a), std::move(b)); }
inline Term rprod(Term a, Term b) { return Term::node(Op::rprod, std::move(a), std::move(b)); }

/// Bilinear extension of a binary operation to term combinations.
inline TermPoly apply_op(Op op, const TermPoly& a, const TermPoly& b)
{
    TermPoly out;
    for (const auto& [ta, ca] : a)
        for (const auto& [tb, cb] : b)
            out.add(Term::node(op, ta, tb), ca * cb);
    return out;
}

/// The standard variable x_i.
inline DiffVar std_var(int i) { return DiffVar("x" + std::to_string(i)); }

/// If every leaf is an underived x_i with each of x_1..x_n exactly once,
/// returns n.
inline std::optional<int> multilinear_arity(const Term& t)
{
    auto leaves = t.leaves();
    int n = static_cast<int>(leaves.size());
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (const auto& v : leaves) {
        if (!v.underived() || v.base.size() < 2 || v.base[0] != 'x')
            return std::nullopt;
        int idx = 0;
        for (std::size_t i = 1; i < v.base.size(); ++i) {
            char ch = v.base[i];
            if (ch < '0' || ch > '9' || (i == 1 && ch == '0'))
                return std::nullopt;
            idx = idx * 10 + (ch - '0');
            if (idx > n)
                return std::nullopt;
        }
        if (idx < 1 || seen[static_cast<std::size_t>(idx)])
            return std::nullopt;
        seen[static_cast<std::size_t>(idx)] = true;
    }
    return n;
}

/// Arity of a multilinear combination; all monomials must share it.
/// The zero combination has no arity.
inline std::optional<int> multilinear_arity(const TermPoly& p)
{
    std::optional<int> n;
    for (const auto& [t, c] : p) {
        auto m = multilinear_arity(t);
        if (!m || (n && *n != *m))
            return std::nullopt;
        n = m;
    }
    return n;
}

/// Substitutes each leaf through `f`, keeping the tree.
template <class F>
Term relabel_leaves(const Term& t, F&& f)
{
    if (t.is_leaf())
        return Term(f(t.var()));
    return Term::node(t.op(), relabel_leaves(t.left(), f), relabel_leaves(t.right(), f));
}

/// Rewrites every node's label (and optionally swaps operands) through `f`,
/// which returns {new op, swap?}.
template <class F>
Term relabel_ops(const Term& t, F&& f)
{
    if (t.is_leaf())
        return t;
    auto [op, swap] = f(t.op());
    Term l = relabel_ops(t.left(), f);
    Term r = relabel_ops(t.right(), f);
    return swap ? Term::node(op, r, l) : Term::node(op, l, r);
}

/// Leibniz push-down of a formal derivation: sum over leaves of the term with
/// that leaf's d-order (or ∂-order) raised by one.
inline TermPoly derive_term(const Term& t, bool second = false)
{
    if (t.is_leaf())
        return TermPoly(Term(second ? t.var().dderived() : t.var().derived()));
    TermPoly out;
    for (const auto& [l, c] : derive_term(t.left(), second))
        out.add(Term::node(t.op(), l, t.right()), c);
    for (const auto& [r, c] : derive_term(t.right(), second))
        out.add(Term::node(t.op(), t.left(), r), c);
    return out;
}

inline TermPoly derive(const TermPoly& p, bool second = false)
{
    TermPoly out;
    for (const auto& [t, c] : p)
        out.add(derive_term(t, second), c);
    return out;
}

inline std::string sexpr(const TermPoly& p)
{
    if (p.is_zero())
        return "0";
    std::vector<std::string> parts;
    for (const auto& [t, c] : p)
        parts.push_back(c == Scalar(1) ? t.str() : "(* " + c.str() + " " + t.str() + ")");
    if (parts.size() == 1)
        return parts.front();
    std::string s = "(+";
    for (const auto& x : parts)
        s += " " + x;
    return s + ")";
}

} // namespace prenov

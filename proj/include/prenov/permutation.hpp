#pragma once

#include "term.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace prenov {

/// A bijection of {1..n}, stored as its images.
///
/// Acting on a multilinear polynomial, f^σ substitutes x_{σ(i)} for x_i.
/// This is a right action when products are read left to right:
/// (στ)(i) = τ(σ(i)) and (f^σ)^τ = f^{στ}.
class Permutation {
public:
    explicit Permutation(std::vector<int> images) : images_(std::move(images))
    {
        std::vector<bool> seen(images_.size() + 1, false);
        for (int v : images_) {
            if (v < 1 || v > size() || seen[static_cast<std::size_t>(v)])
                throw std::invalid_argument("not a permutation");
            seen[static_cast<std::size_t>(v)] = true;
        }
    }

    static Permutation identity(int n)
    {
        std::vector<int> im(static_cast<std::size_t>(n));
        std::iota(im.begin(), im.end(), 1);
        return Permutation(std::move(im));
    }

    /// The transposition (i j) on {1..n}.
    static Permutation transposition(int n, int i, int j)
    {
        auto p = identity(n);
        std::swap(p.images_[static_cast<std::size_t>(i - 1)], p.images_[static_cast<std::size_t>(j - 1)]);
        return p;
    }

    /// All of S_n in lexicographic order of image lists.
    static std::vector<Permutation> all(int n)
    {
        std::vector<Permutation> out;
        auto p = identity(n).images_;
        do {
            out.emplace_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
        return out;
    }

    int size() const { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_.at(static_cast<std::size_t>(i - 1)); }
    const std::vector<int>& images() const { return images_; }

    /// Left-to-right product: apply *this first, then `then`.
    Permutation then(const Permutation& next) const
    {
        if (next.size() != size())
            throw std::invalid_argument("permutation sizes differ");
        std::vector<int> im(images_.size());
        for (int i = 1; i <= size(); ++i)
            im[static_cast<std::size_t>(i - 1)] = next((*this)(i));
        return Permutation(std::move(im));
    }

    Permutation inverse() const
    {
        std::vector<int> im(images_.size());
        for (int i = 1; i <= size(); ++i)
            im[static_cast<std::size_t>((*this)(i) - 1)] = i;
        return Permutation(std::move(im));
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> images_;
};

inline Term apply_permutation(const Term& t, const Permutation& sigma)
{
    return relabel_leaves(t, [&](const DiffVar& v) {
        int i = std::stoi(v.base.substr(1));
        return DiffVar(std_var(sigma(i)).base, v.d_order, v.dd_order);
    });
}

/// f^σ for multilinear f in x_1..x_n; the zero polynomial maps to itself.
inline TermPoly apply_permutation(const TermPoly& f, const Permutation& sigma)
{
    if (f.is_zero())
        return f;
    auto n = multilinear_arity(f);
    if (!n)
        throw std::invalid_argument("apply_permutation: polynomial is not multilinear in x1..xn");
    if (*n != sigma.size())
        throw std::invalid_argument("apply_permutation: permutation size " + std::to_string(sigma.size()) +
                                    " does not match arity " + std::to_string(*n));
    return f.map_linear([&](const Term& t) { return TermPoly(apply_permutation(t, sigma)); });
}

} // namespace prenov

#pragma once

#include "scalar.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace prenov {

/// Dense rectangular matrix of exact rationals.
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, std::vector<Scalar>(cols)) {}
    explicit ExactMatrix(std::vector<std::vector<Scalar>> rows) : rows_(std::move(rows))
    {
        cols_ = rows_.empty() ? 0 : rows_.front().size();
        for (const auto& r : rows_)
            if (r.size() != cols_)
                throw std::invalid_argument("ragged matrix rows");
    }
    ExactMatrix(std::initializer_list<std::initializer_list<long>> rows)
    {
        for (const auto& r : rows) {
            std::vector<Scalar> row;
            for (long v : r)
                row.emplace_back(v);
            add_row(std::move(row));
        }
    }

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }
    Scalar& operator()(std::size_t i, std::size_t j) { return rows_[i][j]; }
    const std::vector<Scalar>& row(std::size_t i) const { return rows_[i]; }
    const std::vector<std::vector<Scalar>>& data() const { return rows_; }

    void add_row(std::vector<Scalar> r)
    {
        if (rows_.empty() && cols_ == 0)
            cols_ = r.size();
        if (r.size() != cols_)
            throw std::invalid_argument("row length " + std::to_string(r.size()) + " does not match " +
                                        std::to_string(cols_) + " columns");
        rows_.push_back(std::move(r));
    }

    ExactMatrix transpose() const
    {
        ExactMatrix t(cols_, rows());
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = rows_[i][j];
        return t;
    }

    friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

    /// One row per line, entries as "p/q" joined by commas.
    std::string csv() const
    {
        std::ostringstream os;
        for (const auto& r : rows_) {
            for (std::size_t j = 0; j < r.size(); ++j)
                os << (j ? "," : "") << r[j].str();
            os << "\n";
        }
        return os.str();
    }

private:
    std::size_t cols_ = 0;
    std::vector<std::vector<Scalar>> rows_;
};

namespace detail {

/// Rows scaled by the lcm of their denominators; rank is unchanged.
inline std::vector<std::vector<mpz_class>> integer_rows(const ExactMatrix& m)
{
    std::vector<std::vector<mpz_class>> out(m.rows(), std::vector<mpz_class>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        mpz_class l = 1;
        for (const auto& s : m.row(i))
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.value().get_den_mpz_t());
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const auto& q = m(i, j).value();
            out[i][j] = q.get_num() * (l / q.get_den());
        }
    }
    return out;
}

} // namespace detail

/// Rank over Q by fraction-free (Bareiss) elimination. Columns are scanned
/// left to right; the pivot is the first remaining row with a nonzero entry.
inline std::size_t rank(const ExactMatrix& m)
{
    auto a = detail::integer_rows(m);
    const std::size_t rows = a.size(), cols = m.cols();
    mpz_class prev = 1, t;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && sgn(a[p][c]) == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[r]);
        const mpz_class& piv = a[r][c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            auto& row = a[i];
            const bool has = sgn(row[c]) != 0;
            for (std::size_t j = c + 1; j < cols; ++j) {
                if (!has) {
                    if (sgn(row[j]) == 0)
                        continue;
                    row[j] *= piv;
                } else if (sgn(a[r][j]) == 0) {
                    if (sgn(row[j]) == 0)
                        continue;
                    row[j] *= piv;
                } else {
                    t = row[c] * a[r][j];
                    row[j] *= piv;
                    row[j] -= t;
                }
                if (prev != 1)
                    mpz_divexact(row[j].get_mpz_t(), row[j].get_mpz_t(), prev.get_mpz_t());
            }
            row[c] = 0;
        }
        prev = piv;
        ++r;
    }
    return r;
}

/// True iff v is a rational combination of the rows of m.
inline bool in_row_space(const ExactMatrix& m, std::span<const Scalar> v)
{
    if (v.size() != m.cols())
        throw std::invalid_argument("in_row_space: vector length " + std::to_string(v.size()) + " vs " +
                                    std::to_string(m.cols()) + " columns");
    ExactMatrix aug = m;
    aug.add_row(std::vector<Scalar>(v.begin(), v.end()));
    return rank(aug) == rank(m);
}

inline bool is_prime(std::uint64_t p)
{
    if (p < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

/// Rank of the reduction of m modulo a prime p.
inline std::size_t rank_mod_p(const ExactMatrix& m, std::uint64_t p)
{
    if (!is_prime(p))
        throw std::invalid_argument("rank_mod_p: " + std::to_string(p) + " is not prime");
    if (p > (1ULL << 31))
        throw std::invalid_argument("rank_mod_p: modulus too large");
    const mpz_class mp(static_cast<unsigned long>(p));
    std::vector<std::vector<std::uint64_t>> a(m.rows(), std::vector<std::uint64_t>(m.cols()));
    auto pow_mod = [p](std::uint64_t b, std::uint64_t e) {
        std::uint64_t r = 1;
        b %= p;
        while (e) {
            if (e & 1)
                r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    auto inv = [&](std::uint64_t x) { return pow_mod(x, p - 2); };
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const auto& q = m(i, j).value();
            mpz_class den = q.get_den() % mp;
            if (den == 0)
                throw std::invalid_argument("rank_mod_p: denominator divisible by " + std::to_string(p));
            mpz_class num = q.get_num() % mp;
            if (num < 0)
                num += mp;
            a[i][j] = num.get_ui() * inv(den.get_ui()) % p;
        }
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && a[piv][c] == 0)
            ++piv;
        if (piv == m.rows())
            continue;
        std::swap(a[piv], a[r]);
        std::uint64_t s = inv(a[r][c]);
        for (auto& x : a[r])
            x = x * s % p;
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            std::uint64_t f = a[i][c];
            if (f == 0)
                continue;
            for (std::size_t j = c; j < m.cols(); ++j)
                a[i][j] = (a[i][j] + (p - f) * a[r][j]) % p;
        }
        ++r;
    }
    return r;
}

/// Reduced row echelon form over Q with zero rows dropped.
inline ExactMatrix rref(const ExactMatrix& m)
{
    auto a = m.data();
    std::size_t r = 0;
    const std::size_t rows = a.size(), cols = m.cols();
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c].is_zero())
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[r]);
        Scalar s = Scalar(1) / a[r][c];
        for (auto& x : a[r])
            if (!x.is_zero())
                x *= s;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero())
                continue;
            Scalar f = a[i][c];
            for (std::size_t j = c; j < cols; ++j)
                if (!a[r][j].is_zero())
                    a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    a.resize(r);
    ExactMatrix out(std::move(a));
    if (r == 0)
        return ExactMatrix(0, cols);
    return out;
}

/// Basis of {y : y·m = 0}, returned in reduced row echelon form.
inline ExactMatrix left_kernel(const ExactMatrix& m)
{
    // Null space of the transpose, read off its RREF.
    ExactMatrix t = rref(m.transpose());
    const std::size_t n = m.rows();
    std::vector<std::size_t> pivot_of_row;
    std::vector<bool> is_pivot(n, false);
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!t(i, j).is_zero()) {
                pivot_of_row.push_back(j);
                is_pivot[j] = true;
                break;
            }
    ExactMatrix k(0, n);
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f])
            continue;
        std::vector<Scalar> v(n);
        v[f] = Scalar(1);
        for (std::size_t i = 0; i < pivot_of_row.size(); ++i)
            v[pivot_of_row[i]] = -t(i, f);
        k.add_row(std::move(v));
    }
    return k.rows() == 0 ? k : rref(k);
}

} // namespace prenov

#pragma once

#include "scalar.hpp"

#include <functional>
#include <initializer_list>
#include <map>
#include <sstream>
#include <string>
#include <utility>

namespace prenov {

/// Finite sparse linear combination Σ c_b·b with exact coefficients.
/// Zero coefficients are never stored; iteration follows B's canonical order.
template <class B>
class LinComb {
public:
    using map_type = std::map<B, Scalar>;
    using const_iterator = typename map_type::const_iterator;

    LinComb() = default;
    LinComb(const B& b, Scalar c = Scalar(1)) { add(b, std::move(c)); } // NOLINT(google-explicit-constructor)
    LinComb(std::initializer_list<std::pair<B, Scalar>> terms)
    {
        for (const auto& [b, c] : terms)
            add(b, c);
    }

    void add(const B& b, const Scalar& c)
    {
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(b, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    void add(const LinComb& o, const Scalar& c = Scalar(1))
    {
        if (c.is_zero())
            return;
        for (const auto& [b, v] : o.terms_)
            add(b, v * c);
    }

    Scalar coeff(const B& b) const
    {
        auto it = terms_.find(b);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const_iterator begin() const { return terms_.begin(); }
    const_iterator end() const { return terms_.end(); }
    const map_type& terms() const { return terms_; }

    /// Applies a linear map given on basis elements.
    template <class F>
    auto map_linear(F&& f) const
    {
        using R = std::invoke_result_t<F, const B&>;
        R out;
        for (const auto& [b, c] : terms_)
            out.add(f(b), c);
        return out;
    }

    LinComb& operator+=(const LinComb& o) { add(o); return *this; }
    LinComb& operator-=(const LinComb& o) { add(o, Scalar(-1)); return *this; }
    LinComb& operator*=(const Scalar& c)
    {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [b, v] : terms_)
            v *= c;
        return *this;
    }

    friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
    friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
    friend LinComb operator-(LinComb a) { return a *= Scalar(-1); }
    friend LinComb operator*(const Scalar& c, LinComb a) { return a *= c; }
    friend LinComb operator*(LinComb a, const Scalar& c) { return a *= c; }

    friend bool operator==(const LinComb& a, const LinComb& b) { return a.terms_ == b.terms_; }

    /// "c1 b1 + c2 b2 - ..." with unit coefficients elided; "0" when empty.
    template <class Print>
    std::string str(Print&& print) const
    {
        if (terms_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [b, c] : terms_) {
            Scalar mag = c.sign() < 0 ? -c : c;
            if (first)
                os << (c.sign() < 0 ? "-" : "");
            else
                os << (c.sign() < 0 ? " - " : " + ");
            if (mag != Scalar(1))
                os << mag.str() << " ";
            os << print(b);
            first = false;
        }
        return os.str();
    }

    std::string str() const
    {
        return str([](const B& b) { return b.str(); });
    }

private:
    map_type terms_;
};

} // namespace prenov

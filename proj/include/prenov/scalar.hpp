#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace prenov {

/// Exact rational number. Always kept in lowest terms with a positive
/// denominator; zero is 0/1.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : q_(v) {}                  // NOLINT(google-explicit-constructor)
    Scalar(int v) : q_(static_cast<long>(v)) {} // NOLINT(google-explicit-constructor)
    Scalar(const mpz_class& num, const mpz_class& den) : q_(num, den)
    {
        if (den == 0)
            throw std::domain_error("zero denominator");
        q_.canonicalize();
    }
    explicit Scalar(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    /// Parses "p", "-p" or "p/q".
    static Scalar parse(std::string_view s)
    {
        auto bad = [&] { return std::invalid_argument("malformed rational '" + std::string(s) + "'"); };
        if (s.empty())
            throw bad();
        auto slash = s.find('/');
        auto is_int = [](std::string_view t, bool allow_sign) {
            if (t.empty())
                return false;
            std::size_t i = 0;
            if (allow_sign && (t[0] == '-' || t[0] == '+'))
                i = 1;
            if (i == t.size())
                return false;
            for (; i < t.size(); ++i)
                if (t[i] < '0' || t[i] > '9')
                    return false;
            return true;
        };
        auto to_mpz = [](std::string_view t) {
            if (!t.empty() && t[0] == '+')
                t.remove_prefix(1);
            return mpz_class(std::string(t), 10);
        };
        if (slash == std::string_view::npos) {
            if (!is_int(s, true))
                throw bad();
            return Scalar(to_mpz(s), mpz_class(1));
        }
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!is_int(num, true) || !is_int(den, false))
            throw bad();
        mpz_class d = to_mpz(den);
        if (d == 0)
            throw std::domain_error("zero denominator in '" + std::string(s) + "'");
        return Scalar(to_mpz(num), d);
    }

    const mpq_class& value() const { return q_; }
    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    /// "p" when the denominator is 1, otherwise "p/q".
    std::string str() const
    {
        if (is_integer())
            return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    Scalar& operator+=(const Scalar& o) { q_ += o.q_; return *this; }
    Scalar& operator-=(const Scalar& o) { q_ -= o.q_; return *this; }
    Scalar& operator*=(const Scalar& o) { q_ *= o.q_; return *this; }
    Scalar& operator/=(const Scalar& o)
    {
        if (o.is_zero())
            throw std::domain_error("division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend Scalar operator-(const Scalar& a) { return Scalar(mpq_class(-a.q_)); }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b)
    {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

private:
    mpq_class q_{0};
};

} // namespace prenov

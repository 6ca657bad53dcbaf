#pragma once

#include <compare>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>

namespace prenov {

/// Natural order on symbol names: a trailing run of digits compares
/// numerically, so x2 < x10.
inline int compare_symbols(std::string_view a, std::string_view b)
{
    auto split = [](std::string_view s) {
        std::size_t k = s.size();
        while (k > 0 && s[k - 1] >= '0' && s[k - 1] <= '9')
            --k;
        return std::pair{s.substr(0, k), s.substr(k)};
    };
    auto [pa, da] = split(a);
    auto [pb, db] = split(b);
    if (int c = pa.compare(pb); c != 0)
        return c < 0 ? -1 : 1;
    auto strip = [](std::string_view d) {
        while (d.size() > 1 && d[0] == '0')
            d.remove_prefix(1);
        return d;
    };
    auto sa = strip(da), sb = strip(db);
    if (sa.size() != sb.size())
        return sa.size() < sb.size() ? -1 : 1;
    if (int c = sa.compare(sb); c != 0)
        return c < 0 ? -1 : 1;
    if (da.size() != db.size())
        return da.size() < db.size() ? -1 : 1;
    return 0;
}

/// A differential letter x^(n,m) = d^n ∂^m (x). The second index stays 0
/// outside the bi-differential setting.
struct DiffVar {
    std::string base;
    int d_order = 0;
    int dd_order = 0;

    DiffVar() = default;
    DiffVar(std::string b, int d = 0, int dd = 0) : base(std::move(b)), d_order(d), dd_order(dd) {} // NOLINT

    int weight() const { return d_order - 1; }
    bool underived() const { return d_order == 0 && dd_order == 0; }

    DiffVar derived(int times = 1) const { return {base, d_order + times, dd_order}; }
    DiffVar dderived(int times = 1) const { return {base, d_order, dd_order + times}; }

    /// Primes for d, "^(n,m)" once a second derivative is present.
    std::string str() const
    {
        if (dd_order != 0)
            return base + "^(" + std::to_string(d_order) + "," + std::to_string(dd_order) + ")";
        return base + std::string(static_cast<std::size_t>(d_order), '\'');
    }

    friend bool operator==(const DiffVar&, const DiffVar&) = default;
    friend std::strong_ordering operator<=>(const DiffVar& a, const DiffVar& b)
    {
        if (int c = compare_symbols(a.base, b.base); c != 0)
            return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        if (auto c = a.d_order <=> b.d_order; c != 0)
            return c;
        return a.dd_order <=> b.dd_order;
    }

    friend std::ostream& operator<<(std::ostream& os, const DiffVar& v) { return os << v.str(); }
};

} // namespace prenov

#pragma once

// Embedding of an arbitrary nonassociative algebra (V, ν) into the derived
// anticommutator ν(u, v) = d(u)v + v d(u) of a differential associative
// algebra, presented by generators B^(ω) and the rewriting rules
//
//   a^(n) b -> -Σ_{s≥1} C(n-1,s)(a^(n-s) b^(s) + b^(s) a^(n-s)) - b a^(n) + ν(a,b)^(n-1)
//
// for a, b in B and n ≥ 1. Leading words are a^(n)b with b underived, so the
// normal words are u_1...u_k v_1...v_m with the u_i underived and the v_j derived.

#include "lincomb.hpp"
#include "novikov.hpp"
#include "scalar.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace prenov::envelope {

/// Nonassociative algebra on a finite ordered basis. nu[a][b][c] is the
/// coefficient of e_c in ν(e_a, e_b).
struct StructureAlgebra {
    std::vector<std::string> basis;
    std::vector<std::vector<std::vector<Scalar>>> nu;

    std::size_t dim() const { return basis.size(); }

    explicit StructureAlgebra(std::vector<std::string> names) : basis(std::move(names))
    {
        if (basis.empty())
            throw std::invalid_argument("structure algebra: empty basis");
        for (std::size_t i = 0; i < basis.size(); ++i) {
            const auto& s = basis[i];
            if (s.empty() || s.find_first_of(",'^ \t\n") != std::string::npos)
                throw std::invalid_argument("structure algebra: bad basis name '" + s + "'");
            for (std::size_t j = 0; j < i; ++j)
                if (basis[j] == s)
                    throw std::invalid_argument("structure algebra: duplicate basis name '" + s + "'");
        }
        nu.assign(dim(), std::vector<std::vector<Scalar>>(dim(), std::vector<Scalar>(dim())));
    }

    std::size_t index_of(const std::string& name) const
    {
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i] == name)
                return i;
        throw std::invalid_argument("structure algebra: unknown basis element '" + name + "'");
    }

    /// ν on coordinate vectors.
    std::vector<Scalar> product(const std::vector<Scalar>& u, const std::vector<Scalar>& v) const
    {
        std::vector<Scalar> out(dim());
        for (std::size_t a = 0; a < dim(); ++a)
            for (std::size_t b = 0; b < dim(); ++b) {
                if (u[a].is_zero() || v[b].is_zero())
                    continue;
                Scalar s = u[a] * v[b];
                for (std::size_t c = 0; c < dim(); ++c)
                    out[c] += s * nu[a][b][c];
            }
        return out;
    }

    /// {"basis": [names], "nu": {"a,b": {"c": "p/q"}}}; absent pairs are zero.
    static StructureAlgebra from_json(const nlohmann::json& j)
    {
        if (!j.is_object() || !j.contains("basis") || !j.at("basis").is_array())
            throw std::invalid_argument("structure file: expected an object with a 'basis' array");
        std::vector<std::string> names;
        for (const auto& n : j.at("basis")) {
            if (!n.is_string())
                throw std::invalid_argument("structure file: basis names must be strings");
            names.push_back(n.get<std::string>());
        }
        StructureAlgebra alg(std::move(names));
        if (!j.contains("nu"))
            return alg;
        if (!j.at("nu").is_object())
            throw std::invalid_argument("structure file: 'nu' must be an object");
        for (const auto& [key, val] : j.at("nu").items()) {
            auto comma = key.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("structure file: key '" + key + "' is not of the form \"a,b\"");
            std::size_t a = alg.index_of(key.substr(0, comma));
            std::size_t b = alg.index_of(key.substr(comma + 1));
            if (!val.is_object())
                throw std::invalid_argument("structure file: value of '" + key + "' must be an object");
            for (const auto& [c, coeff] : val.items()) {
                Scalar s;
                if (coeff.is_string())
                    s = Scalar::parse(coeff.get<std::string>());
                else if (coeff.is_number_integer())
                    s = Scalar(coeff.get<long>());
                else
                    throw std::invalid_argument("structure file: coefficient of " + c + " in '" + key +
                                                "' must be a \"p/q\" string or an integer");
                alg.nu[a][b][alg.index_of(c)] = s;
            }
        }
        return alg;
    }

    static StructureAlgebra load(const std::string& path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot open " + path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::parse_error& e) {
            throw std::invalid_argument(path + ": " + e.what());
        }
        return from_json(j);
    }

    nlohmann::json to_json() const
    {
        nlohmann::json j;
        j["basis"] = basis;
        j["nu"] = nlohmann::json::object();
        for (std::size_t a = 0; a < dim(); ++a)
            for (std::size_t b = 0; b < dim(); ++b) {
                nlohmann::json row = nlohmann::json::object();
                for (std::size_t c = 0; c < dim(); ++c)
                    if (!nu[a][b][c].is_zero())
                        row[basis[c]] = nu[a][b][c].str();
                if (!row.empty())
                    j["nu"][basis[a] + "," + basis[b]] = row;
            }
        return j;
    }

    /// e·e = e.
    static StructureAlgebra one_dimensional()
    {
        StructureAlgebra alg({"e"});
        alg.nu[0][0][0] = Scalar(1);
        return alg;
    }

    /// Structure constants drawn uniformly from {-3..3} with a fixed seed.
    static StructureAlgebra random(std::size_t dim, std::uint64_t seed)
    {
        std::vector<std::string> names;
        for (std::size_t i = 1; i <= dim; ++i)
            names.push_back("e" + std::to_string(i));
        StructureAlgebra alg(std::move(names));
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> coeff(-3, 3);
        for (auto& plane : alg.nu)
            for (auto& row : plane)
                for (auto& c : row)
                    c = Scalar(coeff(rng));
        return alg;
    }
};

/// Generator e_index^(order) of the free associative algebra.
struct Letter {
    int order = 0;
    std::size_t index = 0;

    friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// Noncommutative word, ordered by length and then lexicographically.
struct AWord {
    std::vector<Letter> letters;

    friend std::strong_ordering operator<=>(const AWord& a, const AWord& b)
    {
        if (auto c = a.letters.size() <=> b.letters.size(); c != 0)
            return c;
        return a.letters <=> b.letters;
    }
    friend bool operator==(const AWord&, const AWord&) = default;

    AWord operator*(const AWord& o) const
    {
        AWord w = *this;
        w.letters.insert(w.letters.end(), o.letters.begin(), o.letters.end());
        return w;
    }
};

using APoly = LinComb<AWord>;

inline std::string letter_str(const StructureAlgebra& alg, const Letter& l)
{
    return DiffVar(alg.basis.at(l.index), l.order).str();
}

inline std::string word_str(const StructureAlgebra& alg, const AWord& w)
{
    if (w.letters.empty())
        return "1";
    std::string s;
    for (std::size_t i = 0; i < w.letters.size(); ++i)
        s += (i ? " " : "") + letter_str(alg, w.letters[i]);
    return s;
}

inline std::string poly_str(const StructureAlgebra& alg, const APoly& p)
{
    return p.str([&](const AWord& w) { return word_str(alg, w); });
}

inline AWord word(std::initializer_list<Letter> ls) { return AWord{std::vector<Letter>(ls)}; }

inline APoly a_mul(const APoly& u, const APoly& v)
{
    APoly out;
    for (const auto& [x, c] : u)
        for (const auto& [y, e] : v)
            out.add(x * y, c * e);
    return out;
}

/// Formal derivation raising the order of one letter at a time.
inline APoly a_d(const APoly& p)
{
    APoly out;
    for (const auto& [w, c] : p)
        for (std::size_t i = 0; i < w.letters.size(); ++i) {
            AWord v = w;
            ++v.letters[i].order;
            out.add(v, c);
        }
    return out;
}

/// Σ_c coords[c] e_c^(order).
inline APoly embed(const std::vector<Scalar>& coords, int order = 0)
{
    APoly out;
    for (std::size_t c = 0; c < coords.size(); ++c)
        out.add(word({{order, c}}), coords[c]);
    return out;
}

struct Rule {
    AWord lead;
    APoly tail; ///< lead = tail modulo the ideal
};

struct RuleSet {
    std::vector<Rule> rules;
    int max_order = 0;
    std::size_t dim = 0;

    /// The rule for e_a^(n) e_b, if n is within bounds.
    const Rule* find(const Letter& first, const Letter& second) const
    {
        if (second.order != 0 || first.order < 1 || first.order > max_order)
            return nullptr;
        return &rules[(static_cast<std::size_t>(first.order) - 1) * dim * dim + first.index * dim + second.index];
    }
};

class OrderOverflow : public std::runtime_error {
public:
    explicit OrderOverflow(int order, int max_order)
        : std::runtime_error("derivative order " + std::to_string(order) + " exceeds max_order " +
                             std::to_string(max_order) + "; rerun with a larger max_order")
    {
    }
};

inline RuleSet build_rules(const StructureAlgebra& alg, int max_order)
{
    if (max_order < 1)
        throw std::invalid_argument("build_rules: max_order must be >= 1");
    RuleSet rs;
    rs.max_order = max_order;
    rs.dim = alg.dim();
    for (int n = 1; n <= max_order; ++n)
        for (std::size_t a = 0; a < alg.dim(); ++a)
            for (std::size_t b = 0; b < alg.dim(); ++b) {
                APoly tail;
                for (int s = 1; s <= n - 1; ++s) {
                    Scalar c(novikov::binomial(n - 1, s));
                    tail.add(word({{n - s, a}, {s, b}}), -c);
                    tail.add(word({{s, b}, {n - s, a}}), -c);
                }
                tail.add(word({{0, b}, {n, a}}), Scalar(-1));
                tail.add(embed(alg.nu[a][b], n - 1), Scalar(1));
                rs.rules.push_back({word({{n, a}, {0, b}}), std::move(tail)});
            }
    return rs;
}

namespace detail {

/// Position of the first reducible pair in w, or nullopt if w is normal.
inline std::optional<std::size_t> first_redex(const AWord& w, const RuleSet& rs)
{
    for (std::size_t i = 0; i + 1 < w.letters.size(); ++i) {
        const auto& x = w.letters[i];
        const auto& y = w.letters[i + 1];
        if (x.order > 0 && y.order == 0) {
            if (x.order > rs.max_order)
                throw OrderOverflow(x.order, rs.max_order);
            return i;
        }
    }
    return std::nullopt;
}

} // namespace detail

inline bool is_normal(const AWord& w)
{
    for (std::size_t i = 0; i + 1 < w.letters.size(); ++i)
        if (w.letters[i].order > 0 && w.letters[i + 1].order == 0)
            return false;
    return true;
}

/// Rewrites the largest reducible word of the support at its leftmost redex
/// until no leading word occurs. Each step strictly lowers that word.
inline APoly a_normalize(APoly p, const RuleSet& rs, std::vector<std::string>* trace = nullptr,
                         const StructureAlgebra* alg = nullptr)
{
    for (;;) {
        const AWord* target = nullptr;
        std::size_t pos = 0;
        for (auto it = p.end(); it != p.begin();) {
            --it;
            if (auto r = detail::first_redex(it->first, rs)) {
                target = &it->first;
                pos = *r;
                break;
            }
        }
        if (!target)
            return p;
        AWord w = *target;
        Scalar c = p.coeff(w);
        const Rule* rule = rs.find(w.letters[pos], w.letters[pos + 1]);
        if (!rule)
            throw std::logic_error("a_normalize: no rule for a reducible pair");
        AWord left{std::vector<Letter>(w.letters.begin(), w.letters.begin() + static_cast<std::ptrdiff_t>(pos))};
        AWord right{std::vector<Letter>(w.letters.begin() + static_cast<std::ptrdiff_t>(pos) + 2, w.letters.end())};
        p.add(w, -c);
        for (const auto& [t, e] : rule->tail)
            p.add(left * t * right, c * e);
        if (trace && alg)
            trace->push_back(word_str(*alg, w) + " -> " + poly_str(*alg, p));
    }
}

struct Overlap {
    enum class Kind { inclusion, intersection };
    Kind kind;
    std::size_t first;  ///< rule index
    std::size_t second; ///< rule index
    std::size_t offset; ///< position of `second` relative to `first`
};

inline const char* kind_name(Overlap::Kind k) { return k == Overlap::Kind::inclusion ? "inclusion" : "intersection"; }

/// All compositions of inclusion (lead j occurs inside lead i, i != j) and of
/// intersection (a proper suffix of lead i is a proper prefix of lead j).
inline std::vector<Overlap> composition_check(const std::vector<Rule>& rules)
{
    std::vector<Overlap> out;
    for (std::size_t i = 0; i < rules.size(); ++i)
        for (std::size_t j = 0; j < rules.size(); ++j) {
            const auto& u = rules[i].lead.letters;
            const auto& v = rules[j].lead.letters;
            if (i != j && v.size() <= u.size())
                for (std::size_t k = 0; k + v.size() <= u.size(); ++k)
                    if (std::equal(v.begin(), v.end(), u.begin() + static_cast<std::ptrdiff_t>(k)))
                        out.push_back({Overlap::Kind::inclusion, i, j, k});
            for (std::size_t len = 1; len < u.size() && len < v.size(); ++len)
                if (std::equal(u.end() - static_cast<std::ptrdiff_t>(len), u.end(), v.begin()))
                    out.push_back({Overlap::Kind::intersection, i, j, u.size() - len});
        }
    return out;
}

inline std::vector<Overlap> composition_check(const RuleSet& rs) { return composition_check(rs.rules); }

/// Indices n (1-based order) of rules whose formal derivative does not reduce
/// to zero; only rules with n < max_order are checked.
inline std::vector<std::size_t> derivation_incompatible(const RuleSet& rs)
{
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < rs.rules.size(); ++i) {
        const auto& r = rs.rules[i];
        if (r.lead.letters.front().order >= rs.max_order)
            continue;
        APoly rel = APoly(r.lead) - r.tail;
        if (!a_normalize(a_d(rel), rs).is_zero())
            bad.push_back(i);
    }
    return bad;
}

struct EmbeddingReport {
    bool basis_normal = true;
    int trials = 0;
    int failures = 0;
    std::uint64_t seed = 0;
    bool ok() const { return basis_normal && failures == 0; }
};

/// Checks that each basis letter is its own normal form and that
/// d(u)v + v d(u) reduces to ν(u, v) for random u, v in the span of B.
inline EmbeddingReport verify_embedding(const StructureAlgebra& alg, int trials, std::uint64_t seed = 20240228,
                                        int max_order = 4)
{
    if (trials < 1)
        throw std::invalid_argument("verify_embedding: trials must be >= 1");
    RuleSet rs = build_rules(alg, max_order);
    EmbeddingReport rep;
    rep.trials = trials;
    rep.seed = seed;
    for (std::size_t a = 0; a < alg.dim(); ++a) {
        APoly e(word({{0, a}}));
        if (a_normalize(e, rs) != e)
            rep.basis_normal = false;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(-4, 4);
    auto random_vec = [&] {
        std::vector<Scalar> v(alg.dim());
        for (auto& c : v)
            c = Scalar(coeff(rng));
        return v;
    };
    for (int t = 0; t < trials; ++t) {
        auto u = random_vec(), v = random_vec();
        APoly du = embed(u, 1), pv = embed(v, 0);
        APoly lhs = a_normalize(a_mul(du, pv) + a_mul(pv, du), rs);
        if (lhs != embed(alg.product(u, v), 0))
            ++rep.failures;
    }
    return rep;
}

} // namespace prenov::envelope

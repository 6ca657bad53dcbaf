#pragma once

// JSON and CSV renderings of the computation results. Scalars are written as
// "p/q" strings, terms as s-expressions, words in bracket notation.

#include "dendriform.hpp"
#include "envelope.hpp"
#include "operads.hpp"
#include "speciality.hpp"

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace prenov::report {

using nlohmann::json;

inline json scalar_json(const Scalar& s) { return s.str(); }

/// [{"coeff": "p/q", "term": "(prec x1 x2)"}, ...]
inline json term_poly_json(const TermPoly& p)
{
    json out = json::array();
    for (const auto& [t, c] : p)
        out.push_back({{"coeff", c.str()}, {"term", t.str()}});
    return out;
}

/// [{"coeff": "p/q", "word": "[a b']"}, ...]
inline json zpoly_json(const ZPoly& p)
{
    json out = json::array();
    for (const auto& [w, c] : p)
        out.push_back({{"coeff", c.str()}, {"word", w.str()}});
    return out;
}

inline json matrix_json(const ExactMatrix& m)
{
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (const auto& s : m.row(i))
            row.push_back(s.str());
        out.push_back(std::move(row));
    }
    return out;
}

inline json identity_system_json(const std::vector<TermPoly>& sys)
{
    json out = json::array();
    for (const auto& p : sys)
        out.push_back(term_poly_json(p));
    return out;
}

inline json counterexample_json(const speciality::CounterexampleReport& r)
{
    json j;
    j["f"] = zpoly_json(r.f);
    j["h_forms"] = json::array();
    for (const auto& h : r.h_forms)
        j["h_forms"].push_back(zpoly_json(h));
    j["expansions"] = json::array();
    for (const auto& e : r.expansions)
        j["expansions"].push_back({{"label", e.label}, {"value", zpoly_json(e.value)}});
    j["columns"] = json::array();
    for (const auto& w : r.columns)
        j["columns"].push_back(w.str());
    j["matrix"] = matrix_json(r.matrix);
    j["rank"] = r.rank;
    j["augmented_rank"] = r.augmented_rank;
    j["special"] = r.special;
    j["rank_mod_p"] = json::array();
    for (const auto& m : r.modular)
        j["rank_mod_p"].push_back({{"prime", m.prime}, {"rank", m.rank}, {"augmented_rank", m.augmented_rank}});
    return j;
}

inline json relations_json(Variety var, int n, const operads::RelationReport& r)
{
    json j;
    j["variety"] = std::string(variety_name(var));
    j["arity"] = n;
    j["monomials"] = r.eval.monomials.size();
    j["basis_size"] = r.eval.basis.size();
    j["rank"] = r.rank;
    j["kernel_dim"] = r.kernel.rows();
    j["kernel"] = identity_system_json(r.relations);
    return j;
}

/// Monomials as header, one kernel vector per row.
inline std::string relations_csv(const operads::RelationReport& r)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < r.eval.monomials.size(); ++i)
        os << (i ? "," : "") << '"' << r.eval.monomials[i].str() << '"';
    os << "\n" << r.kernel.csv();
    return os.str();
}

} // namespace prenov::report

// Command-line front end. Exit codes: 0 all checks passed, 1 mathematical
// mismatch, 2 usage or parse error.

#include "prenov/dendriform.hpp"
#include "prenov/envelope.hpp"
#include "prenov/identities.hpp"
#include "prenov/operads.hpp"
#include "prenov/report.hpp"
#include "prenov/sexpr.hpp"
#include "prenov/speciality.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#ifndef PRENOV_DATA_DIR
#define PRENOV_DATA_DIR "data"
#endif

namespace {

using namespace prenov;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

constexpr std::uint64_t kDefaultSeed = 20240228;
constexpr std::size_t kExpectedRank = 10;
constexpr std::size_t kExpectedAugmentedRank = 11;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Variety parse_variety(const std::string& s)
{
    auto v = variety_from_name(s);
    if (!v)
        throw UsageError("unknown variety '" + s + "' (expected com, zinb or nov)");
    return *v;
}

std::string read_input(const std::string& path)
{
    if (path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int cmd_dims(const std::string& variety, int max_arity, const std::string& format)
{
    Variety var = parse_variety(variety);
    if (max_arity < 1 || max_arity > 6)
        throw UsageError("--max-arity must be in 1..6");
    bool ok = true;
    json rows = json::array();
    for (int n = 1; n <= max_arity; ++n) {
        auto closed = operads::variety_dim(var, n);
        auto enumerated = operads::enumerated_dim(var, n);
        json row{{"n", n}, {"closed_form", closed}, {"enumerated", enumerated}};
        bool match = closed == enumerated;
        if (var == Variety::Nov) {
            auto basis = novikov::nov_basis(n).size();
            row["nov_basis"] = basis;
            match = match && basis == closed;
        }
        row["match"] = match;
        ok = ok && match;
        rows.push_back(std::move(row));
    }
    if (format == "json") {
        std::cout << json{{"variety", variety}, {"dims", rows}, {"ok", ok}}.dump(2) << "\n";
    } else if (format == "csv") {
        std::cout << "n,closed_form,enumerated" << (var == Variety::Nov ? ",nov_basis" : "") << "\n";
        for (const auto& r : rows) {
            std::cout << r["n"] << "," << r["closed_form"] << "," << r["enumerated"];
            if (var == Variety::Nov)
                std::cout << "," << r["nov_basis"];
            std::cout << "\n";
        }
    } else {
        std::cout << "variety " << variety << "\n n  closed  enumerated\n";
        for (const auto& r : rows)
            std::cout << " " << r["n"].get<int>() << "  " << r["closed_form"].get<std::uint64_t>() << "  "
                      << r["enumerated"].get<std::uint64_t>() << (r["match"].get<bool>() ? "" : "  MISMATCH")
                      << "\n";
    }
    return ok ? kOk : kMismatch;
}

int cmd_relations(const std::string& variety, int arity, const std::string& format)
{
    Variety var = parse_variety(variety);
    if (arity < 2 || arity > 4)
        throw UsageError("--arity must be in 2..4");
    auto rep = operads::relations(var, arity);
    json checks = json::array();
    auto check = [&](const std::string& name, bool passed) { checks.push_back({{"check", name}, {"passed", passed}}); };
    if (var == Variety::Zinb && arity == 3) {
        bool all = true;
        for (const auto& id : identities::pre_novikov())
            all = all && operads::in_span(rep.relations, id);
        check("pre-Novikov identities lie in the kernel", all);
        check("kernel is S3-stable", operads::is_symmetric_submodule(rep.relations, 3));
    }
    if (var == Variety::Com && arity == 2)
        check("x1≺x2 - x2≻x1 lies in the kernel",
              operads::in_span(rep.relations, parse_term("(- (prec x1 x2) (succ x2 x1))", OpSignature::derived())));
    if (var == Variety::Nov)
        check("rank equals dim (Nov ⊗ Nov)(n)", rep.rank == operads::hadamard_dim(var, arity));
    bool ok = true;
    for (const auto& c : checks)
        ok = ok && c["passed"].get<bool>();

    if (format == "json") {
        json j = report::relations_json(var, arity, rep);
        j["checks"] = checks;
        std::cout << j.dump(2) << "\n";
    } else if (format == "csv") {
        std::cout << report::relations_csv(rep);
    } else {
        std::cout << "variety " << variety << ", arity " << arity << "\n"
                  << "monomials " << rep.eval.monomials.size() << "\n"
                  << "rank " << rep.rank << "\n"
                  << "kernel dimension " << rep.kernel.rows() << "\n";
        for (const auto& r : rep.relations)
            std::cout << "  " << r.str([](const Term& t) { return t.infix(); }) << "\n";
        for (const auto& c : checks)
            std::cout << (c["passed"].get<bool>() ? "ok: " : "FAILED: ") << c["check"].get<std::string>() << "\n";
    }
    return ok ? kOk : kMismatch;
}

int cmd_split(const std::string& input, const std::string& k, bool rename, const std::string& format)
{
    auto ids = parse_identities(read_input(input), OpSignature::multiplication());
    json out = json::array();
    for (std::size_t i = 0; i < ids.size(); ++i) {
        std::vector<std::pair<int, TermPoly>> parts;
        if (k == "all") {
            auto all = dendriform::split_all(ids[i]);
            for (std::size_t j = 0; j < all.size(); ++j)
                parts.emplace_back(static_cast<int>(j + 1), all[j]);
        } else {
            int kk = 0;
            try {
                kk = std::stoi(k);
            } catch (const std::exception&) {
                throw UsageError("--k must be an integer or 'all'");
            }
            parts.emplace_back(kk, dendriform::split(ids[i], kk));
        }
        for (auto& [kk, p] : parts) {
            if (rename)
                p = dendriform::rename_to_prenov(p);
            if (format == "json")
                out.push_back({{"identity", i + 1}, {"k", kk}, {"split", report::term_poly_json(p)}});
            else if (format == "pretty")
                std::cout << "f" << i + 1 << "^[" << kk << "] = " << p.str([](const Term& t) { return t.infix(); })
                          << "\n";
            else
                std::cout << sexpr(p) << "\n";
        }
    }
    if (format == "json")
        std::cout << out.dump(2) << "\n";
    return kOk;
}

int cmd_counterexample(const std::string& format, const std::vector<std::uint64_t>& primes,
                       const std::string& golden_path)
{
    for (auto p : primes)
        if (!is_prime(p))
            throw UsageError("--mod-primes: " + std::to_string(p) + " is not prime");
    auto r = speciality::run_counterexample(primes);
    ExactMatrix golden;
    try {
        golden = speciality::load_csv_matrix(golden_path);
    } catch (const std::exception& e) {
        throw UsageError(std::string("golden matrix: ") + e.what());
    }
    bool ok = true;
    if (golden.rows() != r.matrix.rows() || golden.cols() != r.matrix.cols()) {
        std::cerr << "matrix shape differs from " << golden_path << "\n";
        ok = false;
    } else if (auto d = speciality::diff_matrices(golden, r.matrix); !d.empty()) {
        std::cerr << "matrix differs from " << golden_path << ":\n" << speciality::format_diff(d);
        ok = false;
    }
    if (r.rank != kExpectedRank) {
        std::cerr << "rank " << r.rank << ", expected " << kExpectedRank << "\n";
        ok = false;
    }
    if (r.augmented_rank != kExpectedAugmentedRank) {
        std::cerr << "augmented rank " << r.augmented_rank << ", expected " << kExpectedAugmentedRank << "\n";
        ok = false;
    }
    if (format == "csv") {
        std::cout << r.matrix.csv();
    } else if (format == "json") {
        json j = report::counterexample_json(r);
        j["matches_golden"] = ok;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << speciality::transcript(r);
        std::cout << (ok ? "all expected values reproduced\n" : "MISMATCH against expected values\n");
    }
    return ok ? kOk : kMismatch;
}

int cmd_normalize(const std::string& variety, const std::string& input)
{
    Variety var = parse_variety(variety);
    std::string src = input == "-" ? read_input("-") : input;
    switch (var) {
    case Variety::Zinb: {
        auto p = parse_term(src, {Op::mul, Op::prec, Op::succ});
        std::cout << zinbiel::z_eval(p).str() << "\n";
        break;
    }
    case Variety::Com: {
        auto p = parse_term(src, {Op::mul, Op::prec, Op::succ, Op::nov});
        std::cout << novikov::com_eval(p).str() << "\n";
        break;
    }
    case Variety::Nov: {
        auto p = parse_term(src, {Op::nov, Op::prec, Op::succ});
        std::cout << novikov::dnov_eval(p).str() << "\n";
        break;
    }
    }
    return kOk;
}

int cmd_envelope(const std::string& path, int trials, int max_order, std::uint64_t seed, const std::string& format)
{
    if (trials < 1)
        throw UsageError("--trials must be >= 1");
    if (max_order < 1)
        throw UsageError("--max-order must be >= 1");
    envelope::StructureAlgebra alg = [&] {
        try {
            return envelope::StructureAlgebra::load(path);
        } catch (const std::exception& e) {
            throw UsageError(std::string("structure file: ") + e.what());
        }
    }();
    auto rules = envelope::build_rules(alg, max_order);
    auto overlaps = envelope::composition_check(rules);
    std::vector<std::size_t> incompatible;
    envelope::EmbeddingReport emb;
    try {
        incompatible = envelope::derivation_incompatible(rules);
        emb = envelope::verify_embedding(alg, trials, seed, max_order);
    } catch (const envelope::OrderOverflow& e) {
        throw UsageError(e.what());
    }
    bool ok = overlaps.empty() && incompatible.empty() && emb.ok();
    if (format == "json") {
        json j;
        j["structure"] = alg.to_json();
        j["seed"] = seed;
        j["max_order"] = max_order;
        j["rules"] = rules.rules.size();
        j["compositions"] = json::array();
        for (const auto& o : overlaps)
            j["compositions"].push_back({{"kind", envelope::kind_name(o.kind)},
                                         {"first", envelope::word_str(alg, rules.rules[o.first].lead)},
                                         {"second", envelope::word_str(alg, rules.rules[o.second].lead)},
                                         {"offset", o.offset}});
        j["derivation_compatible"] = incompatible.empty();
        j["embedding"] = {{"trials", emb.trials}, {"failures", emb.failures}, {"basis_normal", emb.basis_normal}};
        j["ok"] = ok;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "structure " << path << " (dimension " << alg.dim() << ")\n"
                  << "seed " << seed << "\n"
                  << "max order " << max_order << ", " << rules.rules.size() << " rules\n"
                  << "compositions: " << (overlaps.empty() ? "none" : std::to_string(overlaps.size())) << "\n";
        for (const auto& o : overlaps)
            std::cout << "  " << envelope::kind_name(o.kind) << ": "
                      << envelope::word_str(alg, rules.rules[o.first].lead) << " / "
                      << envelope::word_str(alg, rules.rules[o.second].lead) << "\n";
        std::cout << "derivation compatibility: " << (incompatible.empty() ? "ok" : "FAILED") << "\n"
                  << "embedding: " << (emb.ok() ? "verified" : "FAILED") << " (" << emb.trials << " trials, "
                  << emb.failures << " failures)\n";
    }
    return ok ? kOk : kMismatch;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Differential Zinbiel, Novikov and pre-Novikov algebra toolkit"};
    app.require_subcommand(1);
    std::uint64_t seed = kDefaultSeed;
    app.add_option("--seed", seed, "Seed for randomized checks")->capture_default_str();

    std::string variety, format = "pretty", input = "-", k = "all", structure;
    int max_arity = 4, arity = 3, trials = 100, max_order = 4;
    bool rename = false;
    std::vector<std::uint64_t> primes{2, 3, 5, 7};
    std::string golden = std::string(PRENOV_DATA_DIR) + "/counterexample_matrix.csv";
    const std::vector<std::string> formats{"pretty", "json", "csv"};

    auto* dims = app.add_subcommand("dims", "Closed-form and enumerated multilinear dimensions");
    dims->add_option("--variety", variety, "com, zinb or nov")->required();
    dims->add_option("--max-arity", max_arity, "Largest arity (at most 6)")->capture_default_str();
    dims->add_option("--format", format)->check(CLI::IsMember(formats))->capture_default_str();

    auto* rel = app.add_subcommand("relations", "Relations of the derived variety in arity n");
    rel->add_option("--variety", variety, "com, zinb or nov")->required();
    rel->add_option("--arity", arity, "Arity in 2..4")->capture_default_str();
    rel->add_option("--format", format)->check(CLI::IsMember(formats))->capture_default_str();

    auto* split = app.add_subcommand("split", "Dendriform splitting f^[k] of multilinear identities");
    split->add_option("--input", input, "File with identities over mul, or - for stdin")->capture_default_str();
    split->add_option("--k", k, "Marked variable index or 'all'")->capture_default_str();
    split->add_flag("--rename", rename, "Rename ⊣/⊢ to ≺/≻");
    std::string split_format = "sexpr";
    split->add_option("--format", split_format)
        ->check(CLI::IsMember({"sexpr", "pretty", "json"}))
        ->capture_default_str();

    auto* ce = app.add_subcommand("counterexample", "Non-speciality certificate: 16x16 matrix and ranks");
    ce->add_option("--format", format)->check(CLI::IsMember(formats))->capture_default_str();
    ce->add_option("--mod-primes", primes, "Primes for modular ranks")->delimiter(',')->capture_default_str();
    ce->add_option("--golden", golden, "Expected matrix (CSV)")->capture_default_str();

    auto* norm = app.add_subcommand("normalize", "Normal form in the free differential algebra");
    norm->add_option("--variety", variety, "com, zinb or nov")->required();
    norm->add_option("--input", input, "Term source, or - for stdin")->required();

    auto* env = app.add_subcommand("envelope", "Associative envelope rewriting system checks");
    env->add_option("--structure", structure, "Structure constants (JSON)")->required();
    env->add_option("--trials", trials)->capture_default_str();
    env->add_option("--max-order", max_order)->capture_default_str();
    std::string env_format = "pretty";
    env->add_option("--format", env_format)->check(CLI::IsMember({"pretty", "json"}))->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*dims)
            return cmd_dims(variety, max_arity, format);
        if (*rel)
            return cmd_relations(variety, arity, format);
        if (*split)
            return cmd_split(input, k, rename, split_format);
        if (*ce)
            return cmd_counterexample(format, primes, golden);
        if (*norm)
            return cmd_normalize(variety, input);
        if (*env)
            return cmd_envelope(structure, trials, max_order, seed, env_format);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMismatch;
    }
    return kUsage;
}

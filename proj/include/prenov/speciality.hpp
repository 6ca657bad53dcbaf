#pragma once

// The non-speciality certificate for the D-Zinbiel algebra
// DZinb<a, b | b≺b>: the element h = 2[a b' b' b'] is a consequence of the
// defining relation in every differential Zinbiel envelope, yet it is not in
// the ideal generated by f = b≺b. Membership reduces to a 16x16 row-space
// question over the products a∗f⋆b, a∗b⋆f with both bracketings.

#include "matrix.hpp"
#include "sexpr.hpp"
#include "zinbiel.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace prenov::speciality {

struct Expansion {
    std::string label;
    ZPoly value;
};

struct ModularRank {
    std::uint64_t prime;
    std::size_t rank;
    std::size_t augmented_rank;
};

struct CounterexampleReport {
    ZPoly f;
    std::vector<ZPoly> h_forms;
    std::vector<Expansion> expansions;
    std::vector<ZWord> columns;
    ExactMatrix matrix;
    std::size_t rank = 0;
    std::size_t augmented_rank = 0;
    bool special = true;
    std::vector<ModularRank> modular;
};

inline const DiffVar& var_a()
{
    static const DiffVar a("a");
    return a;
}

inline const DiffVar& var_b()
{
    static const DiffVar b("b");
    return b;
}

/// f = b≺b = b·b'.
inline ZPoly build_f()
{
    auto b = zinbiel::letter(var_b());
    return zinbiel::z_prec(b, b);
}

/// Four expressions for h, all equal:
///   a·(f'·b') - a·(f·b''),  a·((b'·b')·b'),  (1/3)((a≺b)≺b)≺b,  2[a b' b' b'].
inline std::vector<ZPoly> build_h()
{
    using namespace zinbiel;
    auto a = letter(var_a());
    auto b = letter(var_b());
    auto b1 = letter(var_b().derived(1));
    auto b2 = letter(var_b().derived(2));
    auto f = build_f();
    std::vector<ZPoly> out;
    out.push_back(z_mul(a, z_mul(z_d(f), b1)) - z_mul(a, z_mul(f, b2)));
    out.push_back(z_mul(a, z_mul(z_mul(b1, b1), b1)));
    out.push_back(z_prec(z_prec(z_prec(a, b), b), b) * Scalar::parse("1/3"));
    out.push_back(ZPoly(ZWord{var_a(), var_b().derived(1), var_b().derived(1), var_b().derived(1)}, Scalar(2)));
    return out;
}

/// The 16 products (a∗f)⋆b, a∗(f⋆b), (a∗b)⋆f, a∗(b⋆f) with ∗, ⋆ ∈ {≺, ≻}, in
/// that block order and with ≺ before ≻ inside each block.
inline std::vector<Expansion> expand_sixteen()
{
    using namespace zinbiel;
    struct Named {
        const char* sym;
        ZPoly (*op)(const ZPoly&, const ZPoly&);
    };
    const std::array<Named, 2> ops{{{"≺", &z_prec}, {"≻", &z_succ}}};
    const ZPoly a = letter(var_a());
    const ZPoly b = letter(var_b());
    const ZPoly f = build_f();
    std::vector<Expansion> out;
    auto block = [&](const ZPoly& x, const char* xn, const ZPoly& y, const char* yn, bool left_nested) {
        for (const auto& s : ops)
            for (const auto& t : ops) {
                std::string label;
                ZPoly value;
                if (left_nested) {
                    label = std::string("(a") + s.sym + xn + ")" + t.sym + yn;
                    value = t.op(s.op(a, x), y);
                } else {
                    label = std::string("a") + s.sym + "(" + xn + t.sym + yn + ")";
                    value = s.op(a, t.op(x, y));
                }
                out.push_back({std::move(label), std::move(value)});
            }
    };
    block(f, "f", b, "b", true);
    block(f, "f", b, "b", false);
    block(b, "b", f, "f", true);
    block(b, "b", f, "f", false);
    return out;
}

/// The 16 normal words spanning all expansions, in the fixed column order.
inline std::vector<ZWord> columns()
{
    static const char* words[] = {
        "[a b' b' b']", "[a b' b b'']", "[a b b' b'']", "[a b b'' b']", "[a b'' b b']", "[a b'' b' b]",
        "[a b' b'' b]", "[a b b b''']", "[a b b''' b]", "[a'' b b' b]", "[a'' b b b']", "[a' b b' b']",
        "[a' b' b b']", "[a' b' b' b]", "[a' b b b'']", "[a' b b'' b]",
    };
    std::vector<ZWord> out;
    for (const char* w : words)
        out.push_back(parse_zword(w));
    return out;
}

/// Coordinates of p over `cols`; throws if p has support outside them.
inline std::vector<Scalar> coordinates(const ZPoly& p, const std::vector<ZWord>& cols, const std::string& label = "")
{
    std::vector<Scalar> row(cols.size());
    for (const auto& [w, c] : p) {
        std::size_t j = 0;
        while (j < cols.size() && !(cols[j] == w))
            ++j;
        if (j == cols.size())
            throw std::logic_error("expansion " + label + " contains the word " + w.str() +
                                   " outside the 16 columns");
        row[j] = c;
    }
    return row;
}

inline ExactMatrix assemble_matrix(const std::vector<Expansion>& expansions, const std::vector<ZWord>& cols)
{
    ExactMatrix m(0, cols.size());
    for (const auto& e : expansions)
        m.add_row(coordinates(e.value, cols, e.label));
    return m;
}

inline ExactMatrix assemble_matrix() { return assemble_matrix(expand_sixteen(), columns()); }

/// The unit row e_1, i.e. [a b' b' b'].
inline std::vector<Scalar> target_row(std::size_t n = 16)
{
    std::vector<Scalar> e(n);
    e[0] = Scalar(1);
    return e;
}

inline ExactMatrix augmented(const ExactMatrix& m)
{
    ExactMatrix out = m;
    out.add_row(target_row(m.cols()));
    return out;
}

inline CounterexampleReport run_counterexample(const std::vector<std::uint64_t>& primes = {2, 3, 5, 7})
{
    CounterexampleReport r;
    r.f = build_f();
    r.h_forms = build_h();
    r.expansions = expand_sixteen();
    r.columns = columns();
    r.matrix = assemble_matrix(r.expansions, r.columns);
    r.rank = rank(r.matrix);
    ExactMatrix aug = augmented(r.matrix);
    r.augmented_rank = rank(aug);
    r.special = r.rank == r.augmented_rank;
    for (auto p : primes)
        r.modular.push_back({p, rank_mod_p(r.matrix, p), rank_mod_p(aug, p)});
    return r;
}

struct CellDiff {
    std::size_t row;
    std::size_t col;
    Scalar expected;
    Scalar actual;
};

/// Cell-level differences; a shape mismatch is reported as an exception.
inline std::vector<CellDiff> diff_matrices(const ExactMatrix& expected, const ExactMatrix& actual)
{
    if (expected.rows() != actual.rows() || expected.cols() != actual.cols())
        throw std::invalid_argument("matrix shape mismatch: expected " + std::to_string(expected.rows()) + "x" +
                                    std::to_string(expected.cols()) + ", got " + std::to_string(actual.rows()) +
                                    "x" + std::to_string(actual.cols()));
    std::vector<CellDiff> out;
    for (std::size_t i = 0; i < expected.rows(); ++i)
        for (std::size_t j = 0; j < expected.cols(); ++j)
            if (expected(i, j) != actual(i, j))
                out.push_back({i, j, expected(i, j), actual(i, j)});
    return out;
}

inline std::string format_diff(const std::vector<CellDiff>& diffs)
{
    std::ostringstream os;
    for (const auto& d : diffs)
        os << "cell (" << d.row + 1 << "," << d.col + 1 << "): expected " << d.expected.str() << ", got "
           << d.actual.str() << "\n";
    return os.str();
}

/// Reads a comma-separated matrix of rationals, one row per line.
inline ExactMatrix parse_csv_matrix(std::istream& in)
{
    ExactMatrix m;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<Scalar> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            row.push_back(Scalar::parse(cell));
        m.add_row(std::move(row));
    }
    return m;
}

inline ExactMatrix load_csv_matrix(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    return parse_csv_matrix(in);
}

/// Human-readable account of the computation.
inline std::string transcript(const CounterexampleReport& r)
{
    std::ostringstream os;
    os << "f = b≺b = " << r.f.str() << "\n";
    os << "h:\n";
    static const char* h_labels[] = {"a·(f'·b') - a·(f·b'')", "a·((b'·b')·b')", "(1/3)((a≺b)≺b)≺b", "literal"};
    for (std::size_t i = 0; i < r.h_forms.size(); ++i)
        os << "  " << h_labels[i] << " = " << r.h_forms[i].str() << "\n";
    os << "products:\n";
    for (const auto& e : r.expansions)
        os << "  " << e.label << " = " << e.value.str() << "\n";
    os << "columns:";
    for (const auto& w : r.columns)
        os << " " << w.str();
    os << "\nmatrix:\n";
    for (std::size_t i = 0; i < r.matrix.rows(); ++i) {
        os << " ";
        for (std::size_t j = 0; j < r.matrix.cols(); ++j)
            os << " " << r.matrix(i, j).str();
        os << "\n";
    }
    os << "rank = " << r.rank << "\n";
    os << "rank with e1 = " << r.augmented_rank << "\n";
    for (const auto& m : r.modular)
        os << "rank mod " << m.prime << " = " << m.rank << ", with e1 = " << m.augmented_rank << "\n";
    os << "[a b' b' b'] " << (r.special ? "lies" : "does not lie") << " in the ideal generated by f; the algebra is "
       << (r.special ? "not ruled out as special" : "not special") << "\n";
    return os.str();
}

} // namespace prenov::speciality

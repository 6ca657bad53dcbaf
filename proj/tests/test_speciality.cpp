#include "support.hpp"

#include "prenov/sexpr.hpp"
#include "prenov/speciality.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>

using namespace prenov;
using namespace prenov::testing;
using namespace prenov::speciality;

TEST(Speciality, F)
{
    ZPoly f = build_f();
    EXPECT_EQ(f, parse_zpoly("[b b']"));
    EXPECT_EQ(zinbiel::z_weight(f), -1);
    EXPECT_EQ(zinbiel::z_d(f), parse_zpoly("[b' b'] + [b b'']"));
}

TEST(Speciality, HChainIsConstant)
{
    auto h = build_h();
    ASSERT_EQ(h.size(), 4U);
    for (const auto& x : h)
        EXPECT_EQ(x, parse_zpoly("2 [a b' b' b']"));
}

TEST(Speciality, HChainAgreesWithRewriting)
{
    // the same expressions as terms, normalized by the rewrite system
    auto a = Term("a"), b = Term("b"), b1 = Term(DiffVar("b", 1)), b2 = Term(DiffVar("b", 2));
    Term f = mul(b, b1);
    TermPoly first = apply_op(Op::mul, TermPoly(a), apply_op(Op::mul, derive(TermPoly(f), false), TermPoly(b1))) -
                     TermPoly(mul(a, mul(f, b2)));
    EXPECT_EQ(zinbiel::z_normalize(first), parse_zpoly("2 [a b' b' b']"));
    EXPECT_EQ(zinbiel::z_normalize(mul(a, mul(mul(b1, b1), b1))), parse_zpoly("2 [a b' b' b']"));
    // the third form through a·d(b) = (a·b') by hand
    TermPoly third(mul(mul(mul(a, b1), b1), b1), Scalar::parse("1/3"));
    EXPECT_EQ(zinbiel::z_normalize(third), parse_zpoly("2 [a b' b' b']"));
}

TEST(Speciality, ExpansionSpotChecks)
{
    auto e = expand_sixteen();
    ASSERT_EQ(e.size(), 16U);
    EXPECT_EQ(e[0].label, "(a≺f)≺b");
    EXPECT_EQ(e[0].value, parse_zpoly("3 [a b' b' b'] + [a b' b b''] + [a b b' b''] + [a b b'' b']"));
    EXPECT_EQ(e[6].label, "a≻(f≺b)");
    EXPECT_EQ(e[6].value, parse_zpoly("2 [a' b b' b']"));
    EXPECT_EQ(e[15].label, "a≻(b≻f)");
    EXPECT_EQ(e[15].value, parse_zpoly("[a' b' b b']"));
}

TEST(Speciality, ExpansionsAgreeWithTermEvaluation)
{
    // recompute each product through the term evaluator
    const char* srcs[] = {
        "(prec (prec a f) b)", "(succ (prec a f) b)", "(prec (succ a f) b)", "(succ (succ a f) b)",
        "(prec a (prec f b))", "(prec a (succ f b))", "(succ a (prec f b))", "(succ a (succ f b))",
        "(prec (prec a b) f)", "(succ (prec a b) f)", "(prec (succ a b) f)", "(succ (succ a b) f)",
        "(prec a (prec b f))", "(prec a (succ b f))", "(succ a (prec b f))", "(succ a (succ b f))",
    };
    auto e = expand_sixteen();
    for (std::size_t i = 0; i < 16; ++i) {
        TermPoly t = parse_term(srcs[i], {Op::mul, Op::prec, Op::succ});
        // substitute f = b·b'
        TermPoly sub = t.map_linear([](const Term& s) {
            auto rec = [](auto&& self, const Term& u) -> Term {
                if (u.is_leaf())
                    return u.var().base == "f" ? mul("b", DiffVar("b", 1)) : u;
                return Term::node(u.op(), self(self, u.left()), self(self, u.right()));
            };
            return TermPoly(rec(rec, s));
        });
        EXPECT_EQ(zinbiel::z_eval(sub), e[i].value) << srcs[i];
    }
}

TEST(Speciality, ExpansionInvariants)
{
    for (const auto& e : expand_sixteen()) {
        EXPECT_EQ(zinbiel::z_weight(e.value), -1) << e.label;
        for (const auto& [w, c] : e.value) {
            ASSERT_EQ(w.length(), 4U);
            int as = 0, bs = 0, orders = 0;
            for (const auto& l : w.letters) {
                (l.base == "a" ? as : bs) += 1;
                orders += l.d_order;
            }
            EXPECT_EQ(as, 1);
            EXPECT_EQ(bs, 3);
            EXPECT_EQ(orders, 3);
            EXPECT_EQ(w.letters.front().base, "a");
        }
    }
}

TEST(Speciality, MatrixRows)
{
    auto m = assemble_matrix();
    ASSERT_EQ(m.rows(), 16U);
    ASSERT_EQ(m.cols(), 16U);
    std::vector<Scalar> row1{3, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
    EXPECT_EQ(m.row(0), row1);
    std::vector<Scalar> e13(16), e12(16);
    e13[12] = Scalar(1);
    e12[11] = Scalar(2);
    EXPECT_EQ(m.row(15), e13);
    EXPECT_EQ(m.row(6), e12);
}

TEST(Speciality, MatrixMatchesGoldenFile)
{
    auto golden = load_csv_matrix(std::string(PRENOV_DATA_DIR) + "/counterexample_matrix.csv");
    auto m = assemble_matrix();
    auto diff = diff_matrices(golden, m);
    EXPECT_TRUE(diff.empty()) << format_diff(diff);
    std::ifstream in(std::string(PRENOV_DATA_DIR) + "/counterexample_matrix.csv");
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EXPECT_EQ(m.csv(), bytes);
}

TEST(Speciality, DiffReportsCells)
{
    auto m = assemble_matrix();
    auto changed = m;
    changed(2, 5) = Scalar(7);
    auto d = diff_matrices(m, changed);
    ASSERT_EQ(d.size(), 1U);
    EXPECT_EQ(d[0].row, 2U);
    EXPECT_EQ(d[0].col, 5U);
    EXPECT_EQ(format_diff(d), "cell (3,6): expected 0, got 7\n");
    EXPECT_THROW(diff_matrices(m, ExactMatrix(2, 2)), std::invalid_argument);
}

TEST(Speciality, StrayWordIsAnError)
{
    auto e = expand_sixteen();
    e[3].value.add(parse_zword("[a b b b b']"), Scalar(1));
    EXPECT_THROW(assemble_matrix(e, columns()), std::logic_error);
}

TEST(Speciality, Ranks)
{
    auto r = run_counterexample({2, 3, 5, 7});
    EXPECT_EQ(r.rank, 10U);
    EXPECT_EQ(r.augmented_rank, 11U);
    EXPECT_FALSE(r.special);
    EXPECT_FALSE(in_row_space(r.matrix, target_row()));
    EXPECT_EQ(oracle_rank(to_mpq(r.matrix)), 10U);
    ASSERT_EQ(r.modular.size(), 4U);
    EXPECT_EQ(r.modular[0].prime, 2U);
    EXPECT_LT(r.modular[0].rank, 10U);
    for (std::size_t i = 1; i < 4; ++i) {
        EXPECT_EQ(r.modular[i].rank, 10U) << r.modular[i].prime;
        EXPECT_EQ(r.modular[i].augmented_rank, 11U) << r.modular[i].prime;
    }
}

TEST(Speciality, HIsTwiceFirstColumn)
{
    auto h = build_h().back();
    auto coords = coordinates(h, columns());
    std::vector<Scalar> expected(16);
    expected[0] = Scalar(2);
    EXPECT_EQ(coords, expected);
}

TEST(Speciality, VerdictStableUnderRowPermutations)
{
    auto m = assemble_matrix();
    std::vector<std::size_t> order(16);
    for (std::size_t i = 0; i < 16; ++i)
        order[i] = i;
    std::mt19937_64 rng(kSeed);
    for (int t = 0; t < 100; ++t) {
        std::shuffle(order.begin(), order.end(), rng);
        ExactMatrix p(0, 16);
        for (auto i : order)
            p.add_row(m.row(i));
        EXPECT_EQ(rank(p), 10U);
        EXPECT_EQ(rank(augmented(p)), 11U);
    }
}

TEST(Speciality, Transcript)
{
    auto text = transcript(run_counterexample());
    EXPECT_NE(text.find("rank = 10"), std::string::npos);
    EXPECT_NE(text.find("rank with e1 = 11"), std::string::npos);
    EXPECT_NE(text.find("not special"), std::string::npos);
}

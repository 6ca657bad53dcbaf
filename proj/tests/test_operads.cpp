#include "support.hpp"

#include "prenov/identities.hpp"
#include "prenov/operads.hpp"
#include "prenov/sexpr.hpp"

#include <gtest/gtest.h>

using namespace prenov;
using namespace prenov::testing;
using namespace prenov::operads;

TEST(Operads, MonomialCounts)
{
    auto m2 = enumerate_monomials(2);
    ASSERT_EQ(m2.size(), 4U);
    std::set<Term> expected{prec("x1", "x2"), succ("x1", "x2"), prec("x2", "x1"), succ("x2", "x1")};
    EXPECT_EQ(std::set<Term>(m2.begin(), m2.end()), expected);
    EXPECT_EQ(enumerate_monomials(3).size(), 48U);
    auto m4 = enumerate_monomials(4);
    EXPECT_EQ(m4.size(), 960U);
    EXPECT_EQ(std::set<Term>(m4.begin(), m4.end()).size(), 960U);
    EXPECT_THROW(enumerate_monomials(1), std::invalid_argument);
    EXPECT_THROW(enumerate_monomials(5), std::invalid_argument);
}

TEST(Operads, MonomialsAreMultilinearWithDerivedOps)
{
    for (int n = 2; n <= 4; ++n)
        for (const auto& t : enumerate_monomials(n)) {
            EXPECT_EQ(multilinear_arity(t), n);
            EXPECT_TRUE(t.uses_only(OpSignature::derived()));
        }
}

TEST(Operads, EvalBasisIsWeightMinusOneAndMultilinear)
{
    for (Variety v : {Variety::Com, Variety::Zinb, Variety::Nov})
        for (int n = 2; n <= 3; ++n) {
            auto em = eval_matrix(v, n);
            EXPECT_EQ(em.matrix.rows(), em.monomials.size());
            EXPECT_EQ(em.matrix.cols(), em.basis.size());
            if (v != Variety::Nov)
                for (const auto& b : em.basis)
                    EXPECT_EQ(basis_weight(b), -1) << basis_str(b);
        }
}

TEST(Operads, ArityTwoRanks)
{
    // Com: x1≺x2 = x2≻x1 leaves the two monomials x1 x2' and x1' x2
    EXPECT_EQ(relations(Variety::Com, 2).rank, 2U);
    EXPECT_EQ(relations(Variety::Zinb, 2).rank, 4U);
    EXPECT_EQ(relations(Variety::Nov, 2).rank, 4U);
}

TEST(Operads, ComArityThree)
{
    auto rep = relations(Variety::Com, 3);
    EXPECT_EQ(rep.rank, 6U);
    EXPECT_EQ(rep.kernel.rows(), 42U);
    auto com2 = relation_kernel(Variety::Com, 2);
    EXPECT_TRUE(in_span(com2, parse_term("(- (prec x1 x2) (succ x2 x1))", OpSignature::derived())));
}

TEST(Operads, ZinbArityThree)
{
    auto rep = relations(Variety::Zinb, 3);
    EXPECT_EQ(rep.eval.monomials.size(), 48U);
    for (const auto& id : identities::pre_novikov())
        EXPECT_TRUE(in_span(rep.relations, id)) << sexpr(id);
    EXPECT_TRUE(is_symmetric_submodule(rep.relations, 3));
    // the S3-orbits of the four identities exhaust the kernel
    EXPECT_EQ(dendriform::span_rank(dendriform::symmetric_closure(identities::pre_novikov(), 3)), rep.kernel.rows());
    EXPECT_EQ(rep.rank + rep.kernel.rows(), 48U);
}

TEST(Operads, NovArityThree)
{
    auto rep = relations(Variety::Nov, 3);
    EXPECT_EQ(rep.rank, 36U);
    EXPECT_EQ(hadamard_dim(Variety::Nov, 3), 36U);
    EXPECT_TRUE(is_symmetric_submodule(rep.relations, 3));
}

TEST(Operads, KernelRelationsVanish)
{
    for (Variety v : {Variety::Com, Variety::Zinb, Variety::Nov})
        for (const auto& r : relation_kernel(v, 3))
            EXPECT_TRUE(verify_identity(r, v));
}

TEST(Operads, ClosedFormDimensions)
{
    const std::uint64_t zinb[] = {1, 2, 6, 24, 120, 720};
    const std::uint64_t nov[] = {1, 2, 6, 20, 70, 252};
    for (int n = 1; n <= 6; ++n) {
        EXPECT_EQ(zinb_dim(n), zinb[n - 1]);
        EXPECT_EQ(nov_dim(n), nov[n - 1]);
        EXPECT_EQ(variety_dim(Variety::Com, n), 1U);
    }
    EXPECT_EQ(hadamard_dim(Variety::Zinb, 4), 480U);
    EXPECT_THROW(nov_dim(0), std::invalid_argument);
    EXPECT_THROW(checked_mul(std::uint64_t{1} << 40, std::uint64_t{1} << 40), std::overflow_error);
}

TEST(Operads, EnumeratedDimensions)
{
    for (int n = 1; n <= 5; ++n)
        for (Variety v : {Variety::Com, Variety::Zinb, Variety::Nov})
            EXPECT_EQ(enumerated_dim(v, n), variety_dim(v, n)) << variety_name(v) << " " << n;
}

TEST(Operads, ArityFour)
{
    auto nov = white_vs_hadamard(Variety::Nov, 4);
    EXPECT_EQ(nov.white_dim, 400U);
    EXPECT_EQ(nov.hadamard_dim, 400U);
    EXPECT_TRUE(nov.equal);
    // regression snapshot
    auto zinb = white_vs_hadamard(Variety::Zinb, 4);
    EXPECT_EQ(zinb.white_dim, 320U);
    EXPECT_EQ(zinb.hadamard_dim, 480U);
    EXPECT_FALSE(zinb.equal);
    EXPECT_EQ(white_vs_hadamard(Variety::Com, 4).white_dim, 20U);
}

TEST(Operads, ModularRankAgreesAtArityFour)
{
    auto em = eval_matrix(Variety::Zinb, 4);
    EXPECT_EQ(rank_mod_p(em.matrix, 1000003), rank(em.matrix));
}

TEST(Operads, SymmetricSubmoduleDetectsAsymmetry)
{
    std::vector<TermPoly> lone{TermPoly(prec("x1", "x2"))};
    EXPECT_FALSE(is_symmetric_submodule(lone, 2));
}

TEST(Operads, EvaluateRejectsForeignOps)
{
    EXPECT_THROW(evaluate(Variety::Zinb, TermPoly(mul("x1", "x2"))), std::invalid_argument);
}

TEST(Operads, VarietyNames)
{
    EXPECT_EQ(variety_from_name("zinb"), Variety::Zinb);
    EXPECT_EQ(variety_from_name("lie"), std::nullopt);
}

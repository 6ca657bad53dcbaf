#include "support.hpp"

#include "prenov/envelope.hpp"

#include <gtest/gtest.h>

using namespace prenov;
using namespace prenov::envelope;
using namespace prenov::testing;

namespace {

std::string data(const char* name) { return std::string(PRENOV_DATA_DIR) + "/" + name; }

APoly lw(std::initializer_list<Letter> ls, long c = 1) { return APoly(word(ls), Scalar(c)); }

} // namespace

TEST(Envelope, RuleShapes)
{
    auto alg = StructureAlgebra::random(2, 11);
    auto rs = build_rules(alg, 3);
    EXPECT_EQ(rs.rules.size(), 3U * 2 * 2);
    for (const auto& r : rs.rules) {
        ASSERT_EQ(r.lead.letters.size(), 2U);
        EXPECT_GE(r.lead.letters[0].order, 1);
        EXPECT_EQ(r.lead.letters[1].order, 0);
        for (const auto& [w, c] : r.tail)
            EXPECT_LT(w, r.lead);
    }
    EXPECT_THROW(build_rules(alg, 0), std::invalid_argument);
}

TEST(Envelope, FirstAndSecondOrderRules)
{
    StructureAlgebra alg({"a", "b"});
    alg.nu[0][1][0] = Scalar(2);
    alg.nu[0][1][1] = Scalar(-1);
    auto rs = build_rules(alg, 2);
    const Rule* r1 = rs.find({1, 0}, {0, 1});
    ASSERT_NE(r1, nullptr);
    // a'b -> -b a' + ν(a,b)
    EXPECT_EQ(r1->tail, lw({{0, 1}, {1, 0}}, -1) + lw({{0, 0}}, 2) + lw({{0, 1}}, -1));
    const Rule* r2 = rs.find({2, 0}, {0, 1});
    ASSERT_NE(r2, nullptr);
    // a''b -> -(a'b' + b'a') - b a'' + ν(a,b)'
    EXPECT_EQ(r2->tail, lw({{1, 0}, {1, 1}}, -1) + lw({{1, 1}, {1, 0}}, -1) + lw({{0, 1}, {2, 0}}, -1) +
                            lw({{1, 0}}, 2) + lw({{1, 1}}, -1));
}

TEST(Envelope, Normalize)
{
    auto alg = StructureAlgebra::one_dimensional();
    auto rs = build_rules(alg, 3);
    APoly p = lw({{1, 0}, {0, 0}}) + lw({{0, 0}, {1, 0}});
    EXPECT_EQ(a_normalize(p, rs), lw({{0, 0}}));
    EXPECT_EQ(a_normalize(lw({{0, 0}}), rs), lw({{0, 0}}));
    std::vector<std::string> trace;
    a_normalize(lw({{2, 0}, {0, 0}, {0, 0}}), rs, &trace, &alg);
    EXPECT_FALSE(trace.empty());
}

TEST(Envelope, NormalizeIdempotentAndNormal)
{
    auto alg = StructureAlgebra::random(3, 5);
    auto rs = build_rules(alg, 4);
    std::mt19937_64 rng(kSeed);
    for (int i = 0; i < 100; ++i) {
        APoly p;
        for (int k = uniform(rng, 1, 3); k > 0; --k) {
            AWord w;
            for (int j = uniform(rng, 1, 4); j > 0; --j)
                w.letters.push_back({uniform(rng, 0, 2), static_cast<std::size_t>(uniform(rng, 0, 2))});
            p.add(w, random_scalar(rng, true));
        }
        APoly n = a_normalize(p, rs);
        EXPECT_EQ(a_normalize(n, rs), n);
        for (const auto& [w, c] : n)
            EXPECT_TRUE(is_normal(w));
    }
}

TEST(Envelope, Overflow)
{
    auto rs = build_rules(StructureAlgebra::one_dimensional(), 2);
    EXPECT_THROW(a_normalize(lw({{3, 0}, {0, 0}}), rs), OrderOverflow);
    EXPECT_NO_THROW(a_normalize(lw({{0, 0}, {3, 0}}), rs));
}

TEST(Envelope, NoCompositions)
{
    for (const char* f : {"structure_1d.json", "structure_2d.json", "structure_3d.json"}) {
        auto alg = StructureAlgebra::load(data(f));
        for (int m = 1; m <= 5; ++m)
            EXPECT_TRUE(composition_check(build_rules(alg, m)).empty()) << f << " " << m;
    }
    std::vector<Rule> single{build_rules(StructureAlgebra::one_dimensional(), 1).rules.front()};
    EXPECT_TRUE(composition_check(single).empty());
}

TEST(Envelope, InjectedRuleCreatesCompositions)
{
    auto alg = StructureAlgebra::one_dimensional();
    auto rs = build_rules(alg, 2);
    // leading word e e' overlaps e' e on both sides
    rs.rules.push_back({word({{0, 0}, {1, 0}}), APoly()});
    auto overlaps = composition_check(rs);
    ASSERT_FALSE(overlaps.empty());
    for (const auto& o : overlaps)
        EXPECT_EQ(o.kind, Overlap::Kind::intersection);
    // a duplicate leading word is an inclusion
    std::vector<Rule> dup{rs.rules[0], rs.rules[0]};
    auto inc = composition_check(dup);
    ASSERT_FALSE(inc.empty());
    EXPECT_EQ(inc.front().kind, Overlap::Kind::inclusion);
}

TEST(Envelope, DerivationCompatibility)
{
    for (const char* f : {"structure_1d.json", "structure_2d.json", "structure_3d.json"})
        EXPECT_TRUE(derivation_incompatible(build_rules(StructureAlgebra::load(data(f)), 5)).empty()) << f;
}

TEST(Envelope, Embedding)
{
    EXPECT_TRUE(verify_embedding(StructureAlgebra::one_dimensional(), 20).ok());
    for (const char* f : {"structure_1d.json", "structure_2d.json", "structure_3d.json"})
        EXPECT_TRUE(verify_embedding(StructureAlgebra::load(data(f)), 100, kSeed).ok()) << f;
    EXPECT_THROW(verify_embedding(StructureAlgebra::one_dimensional(), 0), std::invalid_argument);
}

TEST(Envelope, AnticommutatorByHand)
{
    // d(u)v + v d(u) = ν(u,v) for basis elements directly
    auto alg = StructureAlgebra::load(data("structure_2d.json"));
    auto rs = build_rules(alg, 2);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
            APoly lhs = lw({{1, a}, {0, b}}) + lw({{0, b}, {1, a}});
            EXPECT_EQ(a_normalize(lhs, rs), embed(alg.nu[a][b]));
        }
}

TEST(Envelope, StructureJson)
{
    using nlohmann::json;
    auto alg = StructureAlgebra::from_json(json::parse(R"({"basis":["u","v"],"nu":{"u,v":{"v":"1/2","u":3}}})"));
    EXPECT_EQ(alg.dim(), 2U);
    EXPECT_EQ(alg.nu[0][1][1], Scalar::parse("1/2"));
    EXPECT_EQ(alg.nu[0][1][0], Scalar(3));
    EXPECT_TRUE(alg.nu[1][0][0].is_zero());
    EXPECT_EQ(StructureAlgebra::from_json(alg.to_json()).nu, alg.nu);
    EXPECT_THROW(StructureAlgebra::from_json(json::parse(R"({"nu":{}})")), std::invalid_argument);
    EXPECT_THROW(StructureAlgebra::from_json(json::parse(R"({"basis":["u","u"]})")), std::invalid_argument);
    EXPECT_THROW(StructureAlgebra::from_json(json::parse(R"({"basis":["u"],"nu":{"u":{"u":"1"}}})")),
                 std::invalid_argument);
    EXPECT_THROW(StructureAlgebra::from_json(json::parse(R"({"basis":["u"],"nu":{"u,w":{"u":"1"}}})")),
                 std::invalid_argument);
    EXPECT_THROW(StructureAlgebra::from_json(json::parse(R"({"basis":["u"],"nu":{"u,u":{"u":1.5}}})")),
                 std::invalid_argument);
    EXPECT_THROW(StructureAlgebra::from_json(json::parse(R"({"basis":[]})")), std::invalid_argument);
    EXPECT_THROW(StructureAlgebra::load(data("missing.json")), std::runtime_error);
}

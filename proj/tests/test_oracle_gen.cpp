#include <gtest/gtest.h>

#include "diagrams.hpp"
#include "snakelemma/generator.hpp"
#include "snakelemma/oracle.hpp"

using namespace snakelemma;
using namespace snakelemma::testkit;

namespace {

EnumMap times(const EnumGroup& g, std::size_t k) {
    EnumMap m;
    for (std::size_t x = 0; x < g.order(); ++x)
        m.table.push_back((x * k) % g.order());
    return m;
}

} // namespace

TEST(EnumCheckExact, Examples) {
    const EnumGroup z2(std::vector<std::int64_t>{2}), z4(std::vector<std::int64_t>{4}), o;
    EXPECT_TRUE(enum_check_exact({{o, z2, z2, o}, {EnumMap{{0}}, times(z2, 1), EnumMap{{0, 0}}}}));
    EXPECT_EQ(enum_exactness({{z4, z4, z4}, {times(z4, 2), times(z4, 2)}}), std::vector<bool>{true});
    EXPECT_EQ(enum_exactness({{z4, z4, z4}, {times(z4, 2), times(z4, 1)}}), std::vector<bool>{false});
}

TEST(EnumGroup, CapExceeded) {
    EXPECT_THROW(EnumGroup(std::vector<std::int64_t>{32, 32}), CapExceeded);
    EXPECT_NO_THROW(EnumGroup(std::vector<std::int64_t>{32, 16}));
    EXPECT_THROW(EnumPresentation(FpAbGroup::free(1)), CapExceeded);
    EXPECT_THROW(EnumPresentation(FpAbGroup::cyclic(600)), CapExceeded);
}

TEST(EnumPresentation, MatchesInvariantFactors) {
    const auto g = make_group(2, std::vector<Vector>{{2, 0}, {0, 3}});
    const EnumPresentation p(g);
    EXPECT_EQ(p.group().cyclic_orders(), (std::vector<std::int64_t>{6}));
    EXPECT_EQ(p.element({2, 3}), 0u);
    EXPECT_NE(p.element({1, 0}), 0u);
}

TEST(EnumMap, DetectsIllDefinedMatrix) {
    // Build a hom table from a matrix that does not respect relations.
    const EnumPresentation z2(FpAbGroup::cyclic(2)), z3(FpAbGroup::cyclic(3));
    const Hom ok = make_hom(FpAbGroup::cyclic(3), FpAbGroup::cyclic(3), IntMatrix{{2}});
    EXPECT_TRUE(enum_map(ok, z3, z3).has_value());
    EXPECT_FALSE(enum_map(ok, z2, z3).has_value()); // generator order 2 sent to order-3 element
}

TEST(EnumConnecting, InfiniteDiagramExceedsCap) {
    EXPECT_THROW(enum_connecting(validate(two_row_snake(2, 2, 0))), CapExceeded);
}

TEST(EnumConnecting, CyclicReductionMatchesLattice) {
    const auto v = validate(cyclic_snake(8, 2, 2, 0));
    const auto r = enum_connecting(v);
    EXPECT_TRUE(r.lift_independent);
    EXPECT_TRUE(r.matches_lattice);
    ASSERT_EQ(r.table.size(), 2u);
    EXPECT_NE(r.table.at(1), 0u); // delta(1) is the nonzero class
    EXPECT_GT(r.lifts_checked, 2u);
    EXPECT_TRUE(is_isomorphism(connecting_hom(v).delta));
}

TEST(EnumConnecting, TrivialDiagram) {
    const FpAbGroup o = FpAbGroup::trivial();
    const Hom z = zero_hom(o, o);
    const auto r = enum_connecting(validate(SnakeDiagram{z, z, z, z, z, z, z}));
    EXPECT_EQ(r.table.size(), 1u);
    EXPECT_TRUE(r.lift_independent && r.matches_lattice);
}

TEST(EnumConnecting, FourLemmaSubdiagramIsZero) {
    const FourDiagram d = mod4_four(1, 3, 1, 1);
    const auto v = validate(SnakeDiagram{d.g, d.h, d.g1, d.h1, d.beta, d.gamma, d.delta});
    const auto r = enum_connecting(v);
    EXPECT_TRUE(r.lift_independent && r.matches_lattice);
    for (const auto& [c, cls] : r.table)
        EXPECT_EQ(cls, 0u);
}

TEST(Generator, DeterministicPerSeed) {
    GenConfig cfg;
    cfg.seed = 1234;
    const auto a = gen_snake(cfg), b = gen_snake(cfg);
    EXPECT_EQ(a.alpha.matrix(), b.alpha.matrix());
    EXPECT_EQ(a.gamma.matrix(), b.gamma.matrix());
    EXPECT_EQ(a.c1(), b.c1());
    const auto f1 = gen_four(cfg), f2 = gen_four(cfg);
    EXPECT_EQ(f1.delta.matrix(), f2.delta.matrix());
    cfg.seed = 1235;
    const auto c = gen_snake(cfg);
    EXPECT_FALSE(a.beta.matrix() == c.beta.matrix() && a.b() == c.b());
}

TEST(Generator, ZeroGeneratorsGiveTrivialDiagram) {
    GenConfig cfg;
    cfg.max_gens = 0;
    const auto d = gen_snake(cfg);
    for (const auto* g : {&d.a(), &d.b(), &d.c(), &d.a1(), &d.b1(), &d.c1()})
        EXPECT_EQ(g->n_gens(), 0u);
    const auto f = gen_four(cfg);
    EXPECT_EQ(f.d1().n_gens(), 0u);
}

TEST(Generator, RejectsNonPositiveBounds) {
    GenConfig cfg;
    cfg.entry_bound = 0;
    EXPECT_THROW(gen_snake(cfg), ContractViolation);
}

TEST(Generator, DrawsValidateAndCoverBothGeneralizations) {
    GenConfig cfg;
    int non_injective_f1 = 0, non_surjective_g = 0;
    const int n = 300;
    for (int i = 0; i < n; ++i) {
        cfg.seed = 5000 + i;
        const SnakeDiagram d = gen_snake(cfg);
        ASSERT_NO_THROW(validate(d));
        non_injective_f1 += !is_injective(d.f1);
        non_surjective_g += !is_surjective(d.g);
    }
    EXPECT_GE(non_injective_f1 * 10, n * 3);
    EXPECT_GE(non_surjective_g * 10, n * 3);
}

TEST(Generator, FourDrawsMeetHypotheses) {
    GenConfig cfg;
    for (int i = 0; i < 100; ++i) {
        cfg.seed = 9000 + i;
        const FourDiagram d = gen_four(cfg);
        ASSERT_NO_THROW(validate_four(d));
        EXPECT_TRUE(is_surjective(d.alpha));
        EXPECT_TRUE(is_injective(d.delta));
    }
}

TEST(Generator, FiniteModeRespectsCap) {
    GenConfig cfg;
    cfg.finite = true;
    cfg.max_gens = 3;
    cfg.relation_bound = 4;
    for (int i = 0; i < 50; ++i) {
        cfg.seed = i;
        const SnakeDiagram d = gen_snake(cfg);
        for (const auto* g : {&d.a(), &d.b(), &d.c(), &d.a1(), &d.b1(), &d.c1()}) {
            ASSERT_TRUE(g->is_finite());
            EXPECT_LE(*g->order(), 512);
        }
    }
}

TEST(OracleAgreement, SnakeSequencesOnFiniteDiagrams) {
    GenConfig cfg;
    cfg.finite = true;
    cfg.max_gens = 3;
    cfg.relation_bound = 4;
    for (int i = 0; i < 40; ++i) {
        cfg.seed = 700 + i;
        const auto v = validate(gen_snake(cfg));
        const auto s = snake_sequence(v);
        EXPECT_EQ(enum_exactness(to_enum(s.sequence)), s.sequence.certificate());
        const auto r = enum_connecting(v);
        EXPECT_TRUE(r.lift_independent && r.matches_lattice) << "seed " << cfg.seed;
    }
}

TEST(OracleAgreement, DetectsNonExactPosition) {
    // 0 -> Z/4 -x2-> Z/4 -x1-> Z/4: the lattice certificate and the oracle
    // must both flag the middle.
    const FpAbGroup z4 = FpAbGroup::cyclic(4);
    const ExactSequence s({z4, z4, z4}, {scalar(z4, z4, 2), identity_hom(z4)});
    EXPECT_EQ(s.certificate(), std::vector<bool>{false});
    EXPECT_EQ(enum_exactness(to_enum(s)), s.certificate());
}

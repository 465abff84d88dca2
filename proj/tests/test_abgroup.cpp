#include <gtest/gtest.h>

#include "snakelemma/abgroup.hpp"
#include "test_support.hpp"

using namespace snakelemma;

namespace {

const FpAbGroup Z = FpAbGroup::free(1);
FpAbGroup cyc(long n) { return FpAbGroup::cyclic(n); }
Hom scalar(const FpAbGroup& s, const FpAbGroup& t, long k) { return make_hom(s, t, IntMatrix{{k}}); }
std::vector<Int> ints(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

/// Random finitely presented group with at most `max_gens` generators.
FpAbGroup random_group(Rng& rng, std::size_t max_gens, bool finite) {
    const std::size_t n = uniform_int(rng, 0, max_gens);
    IntMatrix rel = testkit::random_matrix(rng, n, finite ? n : uniform_int(rng, 0, n), 4);
    if (finite)
        for (std::size_t i = 0; i < n; ++i)
            rel(i, i) = static_cast<long>(uniform_int(rng, 1, 4)) * (rel(i, i) < 0 ? -1 : 1) + rel(i, i) * 3;
    return make_group(n, rel);
}

/// Random well-defined hom: shrink the source relations until it is.
Hom random_hom(Rng& rng, const FpAbGroup& src, const FpAbGroup& tgt) {
    const IntMatrix m = testkit::random_matrix(rng, tgt.n_gens(), src.n_gens(), 3);
    const FpAbGroup s(lattice_intersect(src.relations(), lattice_preimage(m, tgt.relations())));
    return make_hom(s, tgt, m);
}

} // namespace

TEST(MakeGroup, Examples) {
    EXPECT_EQ(make_group(1, std::vector<Vector>{}).invariant_factors(), ints({0}));
    EXPECT_EQ(make_group(1, std::vector<Vector>{{2}}).invariant_factors(), ints({2}));
    EXPECT_EQ(make_group(2, std::vector<Vector>{{2, 0}, {0, 3}}).invariant_factors(), ints({6}));
    EXPECT_THROW(make_group(2, std::vector<Vector>{{1}}), ContractViolation);
    EXPECT_TRUE(FpAbGroup::trivial().is_trivial());
    EXPECT_EQ(FpAbGroup::trivial().order(), Int(1));
    EXPECT_FALSE(Z.order().has_value());
}

TEST(MakeHom, Examples) {
    EXPECT_NO_THROW(scalar(Z, cyc(2), 1));
    EXPECT_THROW(scalar(cyc(2), Z, 1), IllDefined);
    EXPECT_NO_THROW(scalar(cyc(4), cyc(4), 2));
    EXPECT_THROW(make_hom(Z, Z, IntMatrix{{1, 2}}), ContractViolation);
}

TEST(Kernel, Examples) {
    EXPECT_TRUE(kernel(scalar(Z, Z, 2)).group.is_trivial());
    const auto k = kernel(scalar(cyc(4), cyc(4), 2));
    EXPECT_EQ(k.group.invariant_factors(), ints({2}));
    EXPECT_TRUE(k.subgroup.contains({2}));
    EXPECT_FALSE(k.subgroup.contains({1}));
    EXPECT_EQ(kernel(zero_hom(Z, Z)).group.invariant_factors(), ints({0}));
}

TEST(Cokernel, Examples) {
    EXPECT_EQ(cokernel(scalar(Z, Z, 2)).group.invariant_factors(), ints({2}));
    const auto g = make_group(2, std::vector<Vector>{{2, 0}});
    EXPECT_TRUE(cokernel(identity_hom(g)).group.is_trivial());
    EXPECT_EQ(cokernel(zero_hom(Z, cyc(6))).group.invariant_factors(), ints({6}));
}

TEST(Preimage, Examples) {
    const Hom two = scalar(Z, Z, 2);
    EXPECT_EQ(preimage(two, Subgroup::zero(Z)), kernel(two).subgroup);
    EXPECT_EQ(preimage(two, Subgroup(Z, Lattice::span(1, IntMatrix{{6}}))).lattice(),
              Lattice::span(1, IntMatrix{{3}}));
    EXPECT_TRUE(preimage(scalar(Z, cyc(2), 1), Subgroup::whole(cyc(2))).is_whole());
    EXPECT_THROW(preimage(two, Subgroup::whole(cyc(2))), ContractViolation);
}

TEST(SubgroupOps, Examples) {
    const auto s = sub_sum(image(scalar(Z, Z, 2)), kernel(scalar(Z, cyc(3), 1)).subgroup);
    EXPECT_TRUE(s.is_whole());
    const auto im2 = image(scalar(Z, Z, 2));
    EXPECT_EQ(sub_intersect(im2, Subgroup::whole(Z)), im2);
    EXPECT_EQ(sub_intersect(im2, image(scalar(Z, Z, 3))).lattice(), Lattice::span(1, IntMatrix{{6}}));
    EXPECT_THROW(sub_sum(im2, Subgroup::whole(cyc(2))), ContractViolation);
}

TEST(Quotient, Examples) {
    EXPECT_EQ(quotient(Z, image(scalar(Z, Z, 2))).group.invariant_factors(), ints({2}));
    const auto g = make_group(2, std::vector<Vector>{{3, 0}});
    EXPECT_TRUE(quotient(g, Subgroup::whole(g)).group.is_trivial());
    const auto z2 = FpAbGroup::free(2);
    const auto q = quotient(z2, Subgroup(z2, Lattice::span(2, IntMatrix{{2, 0}, {0, 3}})));
    EXPECT_EQ(q.group.invariant_factors(), ints({6}));
    EXPECT_TRUE(is_surjective(q.projection));
    EXPECT_THROW(quotient(Z, Subgroup::whole(cyc(2))), ContractViolation);
}

TEST(InducedHom, Examples) {
    // Identity presentations give back h.
    const Hom h = scalar(cyc(4), cyc(4), 3);
    EXPECT_EQ(induced_hom(h, whole_object(cyc(4)), whole_object(cyc(4))).matrix(), h.matrix());

    // f1 = x2 : Z -> Z induces Z/(2Z) -> coker(x2) = Z/2.
    const Hom f1 = scalar(Z, Z, 2);
    const auto src = quotient(Z, image(scalar(Z, Z, 2)));
    const auto tgt = cokernel(scalar(Z, Z, 2));
    EXPECT_NO_THROW(induced_hom(f1, src, tgt));

    // x3 on Z/4 descends to Z/4 / im(x2) = Z/2 as multiplication by 1.
    const auto q = cokernel(scalar(cyc(4), cyc(4), 2));
    const Hom k = induced_hom(h, q, q);
    EXPECT_EQ(k, identity_hom(q.group));

    // x1 : Z -> Z does not descend Z/2 -> Z/4.
    EXPECT_THROW(induced_hom(identity_hom(Z), cokernel(scalar(Z, Z, 2)), cokernel(scalar(Z, Z, 4))), NotInduced);
    // Z does not map into 2Z under the identity.
    EXPECT_THROW(induced_hom(identity_hom(Z), whole_object(Z), kernel(scalar(Z, cyc(2), 1))), NotInduced);
}

TEST(Predicates, Examples) {
    const auto g = make_group(2, std::vector<Vector>{{0, 5}});
    EXPECT_TRUE(is_injective(identity_hom(g)));
    EXPECT_TRUE(is_surjective(identity_hom(g)));
    const Hom proj = scalar(Z, cyc(2), 1);
    EXPECT_TRUE(is_surjective(proj));
    EXPECT_FALSE(is_injective(proj));
    EXPECT_EQ(compose(proj, scalar(Z, Z, 2)), zero_hom(Z, cyc(2)));
    EXPECT_THROW(compose(proj, proj), ContractViolation);
}

TEST(Properties, KernelImageCokernelTriangle) {
    Rng rng(21);
    for (int t = 0; t < 150; ++t) {
        const bool finite = t % 2 == 0;
        const Hom h = random_hom(rng, random_group(rng, 3, finite), random_group(rng, 3, finite));
        const auto k = kernel(h);
        const auto c = cokernel(h);
        EXPECT_TRUE(is_zero_hom(compose(h, k.inclusion)));
        EXPECT_TRUE(is_zero_hom(compose(c.projection, h)));
        EXPECT_TRUE(is_injective(k.inclusion));
        EXPECT_TRUE(is_surjective(c.projection));
        EXPECT_EQ(image(h), kernel(c.projection).subgroup);

        // First isomorphism theorem on invariant factors.
        const auto coim = quotient(h.source(), k.subgroup);
        const auto im = present(image(h));
        EXPECT_EQ(coim.group.invariant_factors(), im.group.invariant_factors());
        if (h.source().is_finite()) {
            EXPECT_EQ(*h.source().order(), *k.group.order() * *im.group.order());
        }
    }
}

TEST(Properties, InducedHomIsFunctorial) {
    Rng rng(22);
    for (int t = 0; t < 100; ++t) {
        const FpAbGroup a = random_group(rng, 3, t % 2 == 0);
        const FpAbGroup b = random_group(rng, 3, t % 2 == 0);
        const Hom h2 = random_hom(rng, b, random_group(rng, 3, t % 3 == 0));
        const Hom h1r = random_hom(rng, a, h2.source());

        // Identity on quotients and kernels.
        const auto ck = cokernel(h1r);
        EXPECT_EQ(induced_hom(identity_hom(ck.projection.source()), ck, ck), identity_hom(ck.group));
        const auto kk = kernel(h2);
        EXPECT_EQ(induced_hom(identity_hom(h2.source()), kk, kk), identity_hom(kk.group));

        // Composite on cokernels: coker(0 -> X) is X itself.
        const auto q0 = cokernel(zero_hom(FpAbGroup::trivial(), h1r.source()));
        const auto q1 = cokernel(zero_hom(FpAbGroup::trivial(), h1r.target()));
        const auto q2 = cokernel(zero_hom(FpAbGroup::trivial(), h2.target()));
        const Hom comp = compose(h2, h1r);
        EXPECT_EQ(induced_hom(comp, q0, q2), compose(induced_hom(h2, q1, q2), induced_hom(h1r, q0, q1)));
    }
}

TEST(Properties, ElementEquality) {
    const auto g = make_group(2, std::vector<Vector>{{2, 4}});
    EXPECT_TRUE(g.equal_elements({1, 1}, {3, 5}));
    EXPECT_FALSE(g.equal_elements({1, 1}, {2, 5}));
    EXPECT_TRUE(g.is_zero_element({-2, -4}));
}

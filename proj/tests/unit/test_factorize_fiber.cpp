#include <gtest/gtest.h>

#include "helpers.hpp"

namespace structo {
namespace {

using test::er;
using test::map;

TEST(FactorCi, DiagonalIntoPair) {
  const FinER D2 = er("a | b"), I2 = er("a b");
  const CiFactorization c = factor_ci(map(D2, I2, {{"a", "a"}, {"b", "b"}}));
  EXPECT_EQ(test::sizes(c.G), (std::vector<std::size_t>{2, 2}));
  EXPECT_TRUE(classify_hom(c.g).has(HomFlag::Embedding));
  EXPECT_TRUE(has_complete_section_image(c.g));
  EXPECT_TRUE(classify_hom(c.h).has(HomFlag::ClassBijective));
  EXPECT_EQ(compose(c.h, c.g), map(D2, I2, {{"a", "a"}, {"b", "b"}}));
}

TEST(FactorCi, ClassBijectiveInputGivesIsomorphicFirstStage) {
  const FinER E = er("a b | c"), F = er("x y | z");
  const CiFactorization c = factor_ci(map(E, F, {{"a", "y"}, {"b", "x"}, {"c", "z"}}));
  EXPECT_TRUE(is_isomorphism(c.g));
}

TEST(FactorCi, RejectsNonClassInjective) {
  const FinER I2 = er("a b"), D1 = er("x");
  EXPECT_THROW(factor_ci(map(I2, D1, {{"a", "x"}, {"b", "x"}})), input_error);
}

TEST(FactorSmooth, StagesHaveTheirKinds) {
  const FinER E = er("a b | c d"), F = er("x | y");
  const PointMap f = map(E, F, {{"a", "x"}, {"b", "x"}, {"c", "y"}, {"d", "y"}});
  const SmoothFactorization s = factor_smooth(f);
  EXPECT_TRUE(classify_hom(s.g).has(HomFlag::Reduction));
  EXPECT_TRUE(is_surjective(s.g));
  EXPECT_TRUE(classify_hom(s.h).has(HomFlag::Embedding));
  EXPECT_TRUE(has_complete_section_image(s.h));
  EXPECT_TRUE(classify_hom(s.k).has(HomFlag::ClassBijective));
  EXPECT_EQ(compose(s.k, compose(s.h, s.g)), f);
}

TEST(FactorCs, Examples) {
  const FinER I2 = er("a b"), D1 = er("x");
  const CsFactorization c = factor_cs_smooth(map(I2, D1, {{"a", "x"}, {"b", "x"}}));
  EXPECT_TRUE(is_isomorphism(c.k) || classify_hom(c.k).has(HomFlag::ClassBijective));
  EXPECT_EQ(c.G.size(), 1u);
  const FinER I4 = er("a b c d"), J2 = er("x y");
  const CsFactorization half = factor_cs_smooth(map(I4, J2, {{"a", "x"}, {"b", "y"}, {"c", "x"}, {"d", "y"}}));
  EXPECT_EQ(half.G.size(), 2u);
  EXPECT_TRUE(is_isomorphism(half.k));
}

TEST(FiberSpace, TautologicalOverPair) {
  const FiberSpace S = tautological(er("a b"));
  EXPECT_EQ(S.total.size(), 4u);
  EXPECT_EQ(test::sizes(S.total), (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(tautological(er("a")).total.size(), 1u);
  const std::vector<std::size_t> t = fiber_transport(S, 0, 1);
  // Transport over a class of the tautological space keeps the second coordinate.
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(S.total.point(S.fiber(0)[0]), "(a,a)");
  EXPECT_EQ(S.total.point(t[0]), "(b,a)");
  EXPECT_EQ(S.total.point(t[1]), "(b,b)");
}

TEST(FiberSpace, CocycleRoundTrip) {
  Cocycle swap = Cocycle::trivial(er("a b"), 2);
  swap.alpha[{0, 1}] = {1, 0};
  swap.alpha[{1, 0}] = {1, 0};
  const FiberSpace S = fiberspace_of(swap);
  const Cocycle back = cocycle_of(S);
  EXPECT_TRUE(cohomologous(swap, back).has_value());
  EXPECT_TRUE(cohomologous(cocycle_of(tautological(er("a b"))), Cocycle::trivial(er("a b"), 2)).has_value());
}

TEST(FiberSpace, PullbackAlongIdentity) {
  const FiberSpace S = tautological(er("a b | c"));
  const FiberPullback P = pullback_fiber(S, identity_map(S.base));
  EXPECT_TRUE(fiberwise_isomorphism(P.space, S).has_value());
}

TEST(FiberSpace, PullbackOfTautological) {
  const FinER E = er("a b"), F = er("p | q");
  const PointMap f = map(F, E, {{"p", "a"}, {"q", "a"}});
  const FiberPullback P = pullback_fiber(tautological(E), f);
  // {(y, x') : f(y) E x'} has 2 * 2 points, fiber size preserved.
  EXPECT_EQ(P.space.total.size(), 4u);
  EXPECT_EQ(P.space.fiber_size(0), 2u);
}

TEST(HomCorrespondence, RoundTripsEveryHom) {
  for (const FinER& E : relations_upto(3))
    for (const FinER& F : relations_upto(3))
      for (const PointMap& f : enumerate_homs(E, F, HomClass{HomFlag::Hom})) {
        const FiberMap m = hom_correspondence(f);
        EXPECT_NO_THROW(m.validate());
        EXPECT_EQ(decode_fiber_map(m), f);
      }
}

TEST(FiberFactorize, FiberBijectiveInput) {
  const FiberSpace S = tautological(er("a b"));
  const FiberMap id{S, S, identity_map(S.base), identity_map(S.total)};
  const FiberFactorization z = fiber_factorize(id);
  EXPECT_TRUE(is_isomorphism(z.surjection.total_map));
  EXPECT_TRUE(is_isomorphism(z.injection.total_map));
  EXPECT_TRUE(z.bijection.fiber_bijective());
}

TEST(FiberFactorize, ClassInjectiveHatHasInterestingInjection) {
  const FinER D2 = er("a | b"), I2 = er("a b");
  const FiberMap m = hom_correspondence(map(D2, I2, {{"a", "a"}, {"b", "b"}}));
  const FiberFactorization z = fiber_factorize(m);
  EXPECT_TRUE(z.surjection.fiber_bijective());
  EXPECT_TRUE(z.injection.fiber_injective());
  EXPECT_FALSE(z.injection.fiber_surjective());
  EXPECT_TRUE(z.bijection.fiber_bijective());
}

TEST(FiberLtimes, TrivialTwoFiberOverPoint) {
  const Cocycle c = Cocycle::trivial(er("o"), 2);
  const FiberLtimes L = fiber_ltimes(fiberspace_of(c), test::linear_order());
  EXPECT_EQ(L.base.size(), 2u);
  EXPECT_EQ(L.space.fiber_size(0), 2u);
  EXPECT_TRUE(fiber_structure_compatible(L.space, L.structure));
  EXPECT_TRUE(fiberwise_satisfies(L.space, L.structure, test::linear_order()));
}

TEST(FiberLtimes, OnePointFibersReduceToLtimes) {
  const FinER E = er("a b | c");
  const FiberLtimes L = fiber_ltimes(fiberspace_of(Cocycle::trivial(E, 1)), test::truth("P/1"));
  // One model per point and label, so the base is two copies of E.
  EXPECT_TRUE(find_isomorphism(L.base, cross_product(E, FinER::delta(2)).product).has_value());
}

}  // namespace
}  // namespace structo

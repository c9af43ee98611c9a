#include <gtest/gtest.h>

#include "helpers.hpp"

namespace structo {
namespace {

using test::er;

const HomClass kCb{HomFlag::ClassBijective};

TEST(Coding, DecompositionExamples) {
  const CodedER one = code_er(er("a"));
  EXPECT_EQ(one.bits, 1u);
  ASSERT_EQ(one.g.size(), 1u);
  EXPECT_EQ(one.g[0], (std::vector<std::size_t>{0}));
  const CodedER two = code_er(er("a b"));
  EXPECT_EQ(two.bits, 1u);
  EXPECT_EQ(two.g[1], (std::vector<std::size_t>{1, 0}));
  const CodedER three = code_er(er("a b c"));
  ASSERT_EQ(three.g.size(), 3u);
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(three.g[i][x], (x + i) % 3);
}

TEST(ScottSentence, ModelCounts) {
  const ScottTheory one = scott_theory(code_er(er("a")));
  EXPECT_EQ(count_models(one.theory(), 1), 1u);
  EXPECT_EQ(count_models(one.theory(), 2), 0u);
  EXPECT_EQ(count_models(scott_theory(code_er(er("a b"))).theory(), 2), 2u);
}

TEST(ScottSentence, CanonicalSelfStructureSatisfiesSigma) {
  for (const FinER& E : relations_upto(4)) {
    const CodedER C = code_er(E);
    const StructuredER H = cb_to_structure(identity_map(E), C);
    EXPECT_TRUE(classwise_satisfies(H, scott_theory(C).theory()));
    EXPECT_EQ(structures_to_cb(H, C), identity_map(E));
  }
}

TEST(ScottSentence, StructuresMatchClassBijectiveHoms) {
  const ScottTheory S = scott_theory(code_er(er("x")));
  EXPECT_EQ(count_structures(er("a | b"), S.theory()), 1u);
  EXPECT_EQ(count_homs(er("a | b"), er("x"), kCb), 1u);
  EXPECT_EQ(count_structures(er("a b"), S.theory()), 0u);
}

TEST(ScottSentence, ClassInjectiveVariant) {
  EXPECT_EQ(count_structures(er("a | b"), scott_theory(code_er(er("x"))).cih()), 1u);
  EXPECT_EQ(count_structures(er("a b"), scott_theory(code_er(er("x y"))).cih()), 2u);
}

// Property: |Str(F, σ_E)| = #cb homs F -> E, for every pair up to 3 points.
TEST(ScottSentence, CountsAgreeUpToThreePoints) {
  const auto rels = relations_upto(3);
  for (const FinER& E : rels) {
    const Theory sigma = scott_theory(code_er(E)).theory();
    for (const FinER& F : rels) EXPECT_EQ(count_structures(F, sigma), count_homs(F, E, kCb));
  }
}

TEST(ScottSentence, NamedVariants) {
  const ScottTheory S = scott_theory(code_er(er("a b")), 2);
  EXPECT_EQ(S.bits, 2u);
  for (const char* name : {"sigma", "sigma-h", "sigma-ci", "sigma-cs", "sigma-sm", "sigma-cih", "sigma-smh"})
    EXPECT_NO_THROW(S.by_name(name)) << name;
  EXPECT_THROW(S.by_name("sigma-bogus"), input_error);
}

TEST(Ltimes, Examples) {
  const LtimesResult pair = ltimes(er("a b"), test::linear_order());
  EXPECT_EQ(test::sizes(pair.space), (std::vector<std::size_t>{2, 2}));
  const LtimesResult triple = ltimes(er("a b c"), test::linear_order());
  EXPECT_EQ(triple.space.num_classes(), 6u);
  EXPECT_EQ(triple.space.size(), 18u);
  EXPECT_TRUE(find_isomorphism(ltimes(er("a"), test::truth("P/1")).space, er("a | b")).has_value());
  const LtimesResult none = ltimes(er("a b c"), test::exactly_two());
  EXPECT_FALSE(none.surjective());
}

TEST(Ltimes, UniversalMapOnItselfIsIdentity) {
  const LtimesResult L = ltimes(er("a b | c"), test::linear_order());
  const PointMap f = ltimes_universal_map(L, L.projection, L.structure);
  EXPECT_EQ(f, identity_map(L.space));
}

TEST(Ltimes, UniversalMapPicksMatchingClass) {
  const FinER E = er("a b");
  const LtimesResult L = ltimes(E, test::linear_order());
  const FinER F = er("p q");
  FinStructure A(parse_language("R/2"), {"p", "q"});
  A.add("R", {"q", "p"});
  const PointMap f = test::map(F, E, {{"p", "a"}, {"q", "b"}});
  const PointMap lift = ltimes_universal_map(L, f, StructuredER(F, A));
  EXPECT_EQ(compose(L.projection, lift), f);
  EXPECT_EQ(classwise_pullback(L.structure.structure, lift).structure, A);
}

TEST(Tensor, Examples) {
  EXPECT_TRUE(find_isomorphism(tensor(er("a | b"), er("x | y | z")).product, FinER::delta(6)).has_value());
  EXPECT_EQ(test::sizes(tensor(er("a b"), er("x y")).product), (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(test::sizes(tensor(er("a | b c"), er("x y")).product), (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(tensor_class_count(er("a b c"), er("x y z")), 6u);
}

TEST(Tensor, CrossComparison) {
  const TensorCrossReport d = tensor_vs_cross(er("a | b"), er("x | y"));
  EXPECT_TRUE(d.isomorphism);
  const TensorCrossReport mixed = tensor_vs_cross(er("a | b c"), er("x y"));
  EXPECT_FALSE(mixed.surjective);
  // With 2-point classes a pair (x,y) fixes the bijection, so the map is a
  // bijection of points that is still not a reduction.
  const TensorCrossReport pairs = tensor_vs_cross(er("a b"), er("x y"));
  EXPECT_TRUE(pairs.surjective);
  EXPECT_TRUE(pairs.injective);
  EXPECT_FALSE(pairs.isomorphism);
  EXPECT_TRUE(pairs.classification.has(HomFlag::ClassInjective));
  const TensorCrossReport triples = tensor_vs_cross(er("a b c"), er("x y z"));
  EXPECT_TRUE(triples.surjective);
  EXPECT_FALSE(triples.injective);
}

TEST(Tensor, PairingIsMediating) {
  const FinER E = er("a b"), F = er("x y"), G = er("p q");
  const TensorResult T = tensor(E, F);
  const PointMap f = test::map(G, E, {{"p", "a"}, {"q", "b"}});
  const PointMap g = test::map(G, F, {{"p", "y"}, {"q", "x"}});
  const PointMap h = pairing(T, f, g);
  EXPECT_EQ(compose(T.pi1, h), f);
  EXPECT_EQ(compose(T.pi2, h), g);
  EXPECT_TRUE(classify_hom(h).has(HomFlag::ClassBijective));
}

TEST(Skew, Examples) {
  const FinER I2 = er("a b");
  const SkewResult trivial = skew_product(Cocycle::trivial(I2, 2));
  EXPECT_EQ(test::sizes(trivial.space), (std::vector<std::size_t>{2, 2}));
  Cocycle swap = Cocycle::trivial(I2, 2);
  swap.alpha[{0, 1}] = {1, 0};
  swap.alpha[{1, 0}] = {1, 0};
  swap.validate();
  const SkewResult s = skew_product(swap);
  EXPECT_EQ(s.space.named_classes(),
            (std::vector<std::vector<Point>>{{"(a,0)", "(b,1)"}, {"(a,1)", "(b,0)"}}));
}

TEST(Skew, EnumerationCocycleSatisfiesLaws) {
  for (const FinER& E : relations_upto(4)) EXPECT_NO_THROW(cocycle_from_enumeration(E, cyclic_enumeration(E)).validate());
}

TEST(Skew, BrokenCocycleRejected) {
  Cocycle c = Cocycle::trivial(er("a b c"), 2);
  c.alpha[{0, 1}] = {1, 0};
  EXPECT_THROW(c.validate(), input_error);
}

}  // namespace
}  // namespace structo

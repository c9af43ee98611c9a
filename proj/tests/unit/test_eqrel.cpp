#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"

namespace structo {
namespace {

using test::er;
using test::map;

TEST(FinER, KeepsPointsSortedAndClassesByLeastPoint) {
  const FinER E = er("c a | b");
  EXPECT_EQ(E.points(), (std::vector<Point>{"a", "b", "c"}));
  ASSERT_EQ(E.num_classes(), 2u);
  EXPECT_TRUE(E.related(E.index("a"), E.index("c")));
  EXPECT_FALSE(E.related(E.index("a"), E.index("b")));
  EXPECT_EQ(E.named_classes()[0], (std::vector<Point>{"a", "c"}));
}

TEST(FinER, RejectsOverlappingOrMissingBlocks) {
  EXPECT_THROW(FinER({"a", "b"}, {{"a"}, {"a", "b"}}), input_error);
  EXPECT_THROW(FinER({"a", "b"}, {{"a"}}), input_error);
}

TEST(Classify, IdentityHasEveryFlag) {
  const FinER E = er("a b | c");
  EXPECT_EQ(classify_hom(identity_map(E)).bits(), 0xFFu);
}

TEST(Classify, DiagonalIntoPair) {
  const FinER D2 = er("a | b"), I2 = er("a b");
  const HomClass c = classify_hom(map(D2, I2, {{"a", "a"}, {"b", "b"}}));
  EXPECT_EQ(c, (HomClass{HomFlag::Hom, HomFlag::ClassInjective, HomFlag::Smooth}));
}

TEST(Classify, ConstantPairToPoint) {
  const FinER I2 = er("a b"), D1 = er("x");
  const HomClass c = classify_hom(map(I2, D1, {{"a", "x"}, {"b", "x"}}));
  EXPECT_EQ(c, (HomClass{HomFlag::Hom, HomFlag::Reduction, HomFlag::ClassSurjective, HomFlag::Smooth}));
}

TEST(Classify, NonHomHasNoFlags) {
  const FinER I2 = er("a b"), D2 = er("x | y");
  EXPECT_TRUE(classify_hom(map(I2, D2, {{"a", "x"}, {"b", "y"}})).empty());
}

TEST(HomClassNames, ParseAliasesAndPrint) {
  EXPECT_EQ(HomClass::parse("cb,ci"), (HomClass{HomFlag::ClassBijective, HomFlag::ClassInjective}));
  EXPECT_EQ(HomClass::parse("hom").to_string(), "hom");
  EXPECT_THROW(HomClass::parse("bogus"), input_error);
}

TEST(EnumerateHoms, ClassBijectiveExamples) {
  const HomClass cb{HomFlag::ClassBijective};
  EXPECT_EQ(enumerate_homs(er("x"), er("x"), cb).size(), 1u);
  EXPECT_EQ(enumerate_homs(er("a | b"), er("x"), cb).size(), 1u);
  EXPECT_TRUE(enumerate_homs(er("a b"), er("x"), cb).empty());
  // Bijections between two 3-classes.
  EXPECT_EQ(count_homs(er("a b c"), er("x y z"), cb), 6u);
}

// Independent oracle: brute force over all |F|^|E| maps, filtering by classify_hom.
TEST(EnumerateHoms, AgreesWithBruteForce) {
  const auto rels = relations_upto(3);
  for (const FinER& E : rels)
    for (const FinER& F : rels)
      for (unsigned bits = 1; bits < 256; bits <<= 1) {
        const HomClass kind(bits);
        std::size_t brute = 0;
        std::vector<std::size_t> img(E.size(), 0);
        const std::size_t total = ipow(F.size(), E.size());
        for (std::size_t code = 0; code < total; ++code) {
          std::size_t c = code;
          for (auto& v : img) {
            v = c % F.size();
            c /= F.size();
          }
          if (classify_hom(PointMap(E, F, img)).contains(kind)) ++brute;
        }
        EXPECT_EQ(count_homs(E, F, kind), brute) << kind.to_string();
      }
}

TEST(Sum, Examples) {
  EXPECT_EQ(test::sizes(disjoint_sum({er("a"), er("a")}).sum), (std::vector<std::size_t>{1, 1}));
  const SumResult s = disjoint_sum({er("a b"), er("a b c")});
  EXPECT_EQ(test::sizes(s.sum), (std::vector<std::size_t>{2, 3}));
  for (const auto& inj : s.injections) EXPECT_TRUE(classify_hom(inj).has(HomFlag::InvariantEmbedding));
  EXPECT_TRUE(disjoint_sum({}).sum.empty());
}

TEST(Cross, Examples) {
  EXPECT_EQ(cross_product(er("a | b"), er("x | y | z")).product.num_classes(), 6u);
  EXPECT_EQ(test::sizes(cross_product(er("a b"), er("x y")).product), (std::vector<std::size_t>{4}));
  const FinER E = er("a b | c");
  EXPECT_TRUE(find_isomorphism(cross_product(E, er("x")).product, E).has_value());
}

TEST(FiberProduct, ConstantMapsGiveAllPairs) {
  const FinER D1 = er("o"), D2 = er("a | b"), D3 = er("x | y | z");
  const ProductResult p =
      fiber_product(map(D2, D1, {{"a", "o"}, {"b", "o"}}), map(D3, D1, {{"x", "o"}, {"y", "o"}, {"z", "o"}}));
  EXPECT_EQ(p.product.size(), 6u);
  EXPECT_EQ(p.product.num_classes(), 6u);
}

TEST(FiberProduct, IdentityGivesDiagonal) {
  const FinER E = er("a b | c");
  const ProductResult p = fiber_product(identity_map(E), identity_map(E));
  EXPECT_TRUE(is_isomorphism(p.pi1));
}

TEST(FiberProduct, ClassBijectiveLegPullsBack) {
  const FinER E = er("a b | c"), F = er("u v | w"), G = er("p | q r");
  // g : F -> E class-bijective; f : G -> E any hom.
  const PointMap g = map(F, E, {{"u", "b"}, {"v", "a"}, {"w", "c"}});
  const PointMap f = map(G, E, {{"p", "c"}, {"q", "a"}, {"r", "b"}});
  ASSERT_TRUE(classify_hom(g).has(HomFlag::ClassBijective));
  const ProductResult p = fiber_product(f, g);
  EXPECT_TRUE(classify_hom(p.pi1).has(HomFlag::ClassBijective));
}

TEST(Independent, Examples) {
  const FinER E1 = er("a b | c"), E2 = er("a | b c");
  const JoinResult j = independent_join({E1, E2});
  EXPECT_TRUE(j.independent);
  EXPECT_EQ(j.join.num_classes(), 1u);
  EXPECT_FALSE(independent({er("a b"), er("a b")}));
  const FinER D = er("a | b | c");
  EXPECT_TRUE(independent({D, D}));
  EXPECT_EQ(join({D, D}), D);
}

TEST(Quotient, Examples) {
  const FinER E = er("a b | c");
  const QuotientResult byDelta = quotient_by_subrelation(E, er("a | b | c"));
  EXPECT_TRUE(find_isomorphism(byDelta.quotient, E).has_value());
  const QuotientResult byE = quotient_by_subrelation(E, E);
  EXPECT_EQ(byE.quotient.num_classes(), 2u);
  EXPECT_EQ(byE.quotient.size(), 2u);
  const QuotientResult pairs = quotient_by_subrelation(er("a b c d"), er("a b | c d"));
  EXPECT_EQ(test::sizes(pairs.quotient), (std::vector<std::size_t>{2}));
  EXPECT_THROW(quotient_by_subrelation(er("a | b"), er("a b")), input_error);
}

// Property: composition of homomorphisms keeps every flag both maps share.
TEST(Classify, FlagsClosedUnderComposition) {
  std::mt19937_64 rng(11);
  const auto rels = relations_upto(3);
  for (int trial = 0; trial < 400; ++trial) {
    const FinER& A = rels[rng() % rels.size()];
    const FinER& B = rels[rng() % rels.size()];
    const FinER& C = rels[rng() % rels.size()];
    const auto fs = enumerate_homs(A, B, HomClass{HomFlag::Hom});
    const auto gs = enumerate_homs(B, C, HomClass{HomFlag::Hom});
    if (fs.empty() || gs.empty()) continue;
    const PointMap& f = fs[rng() % fs.size()];
    const PointMap& g = gs[rng() % gs.size()];
    const unsigned shared = classify_hom(f).bits() & classify_hom(g).bits();
    for (HomFlag flag : {HomFlag::Hom, HomFlag::Reduction, HomFlag::ClassInjective, HomFlag::ClassSurjective,
                         HomFlag::ClassBijective, HomFlag::Embedding, HomFlag::InvariantEmbedding}) {
      if (shared & static_cast<unsigned>(flag)) EXPECT_TRUE(classify_hom(compose(g, f)).has(flag)) << flag_name(flag);
    }
  }
}

}  // namespace
}  // namespace structo

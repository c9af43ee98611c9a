#include <gtest/gtest.h>

#include "helpers.hpp"

namespace structo {
namespace {

FinStructure edge(const std::vector<Point>& universe, const std::vector<std::pair<Point, Point>>& pairs) {
  FinStructure A(parse_language("R/2"), universe);
  for (const auto& [a, b] : pairs) A.add("R", {a, b});
  return A;
}

TEST(Structures, PushforwardSwap) {
  const FinStructure A = edge({"a", "b"}, {{"a", "b"}});
  const FinStructure B = pushforward(A, std::map<Point, Point>{{"a", "b"}, {"b", "a"}});
  EXPECT_TRUE(B.holds(0, {1, 0}));
  EXPECT_FALSE(B.holds(0, {0, 1}));
  EXPECT_EQ(pushforward(B, std::map<Point, Point>{{"a", "b"}, {"b", "a"}}), A);
}

TEST(Structures, ClasswisePullbackDropsCrossClassTuples) {
  const FinER D2 = test::er("a | b");
  const FinStructure A = edge({"a", "b"}, {{"a", "b"}, {"a", "a"}});
  const StructuredER P = classwise_pullback(A, identity_map(D2));
  EXPECT_TRUE(P.structure.holds(0, {0, 0}));
  EXPECT_FALSE(P.structure.holds(0, {0, 1}));
}

TEST(Structures, ClasswisePullbackIsFunctorial) {
  const FinER E = test::er("a b c"), F = test::er("p q r"), G = test::er("x y z");
  const PointMap f = test::map(E, F, {{"a", "q"}, {"b", "r"}, {"c", "p"}});
  const PointMap g = test::map(F, G, {{"p", "z"}, {"q", "x"}, {"r", "y"}});
  const FinStructure A = edge({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}});
  const StructuredER direct = classwise_pullback(A, compose(g, f));
  const StructuredER twice = classwise_pullback(classwise_pullback(A, g).structure, f);
  EXPECT_EQ(direct.structure, twice.structure);
}

TEST(Structures, StabilizerOrbits) {
  FinStructure empty(parse_language("R/2"), {"a", "b", "c"});
  EXPECT_EQ(stabilizer_orbits(empty, {}).size(), 1u);
  const FinStructure cyc = edge({"a", "b"}, {{"a", "b"}, {"b", "a"}});
  EXPECT_EQ(stabilizer_orbits(cyc, {"a"}).size(), 2u);
  EXPECT_TRUE(isomorphic(edge({"a", "b"}, {{"a", "b"}}), edge({"a", "b"}, {{"a", "b"}})).has_value());
}

TEST(Structures, Wdp) {
  FinStructure empty(parse_language("R/2"), {"a", "b", "c", "d"});
  EXPECT_TRUE(wdp_check(empty, empty.language(), {"a"}).has_value());
  const FinStructure loop = edge({"a", "b"}, {{"a", "a"}});
  EXPECT_FALSE(wdp_check(loop, loop.language(), {"a"}).has_value());
  EXPECT_FALSE(wdp_check(empty, empty.language(), {"a", "b", "c", "d"}).has_value());
}

TEST(Structures, Age) {
  FinStructure empty(parse_language("R/2"), {"a", "b", "c"});
  EXPECT_EQ(age(empty, 2).size(), 1u);
  EXPECT_EQ(age(edge({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}), 2).size(), 2u);
  EXPECT_TRUE(age(empty, 4).empty());
}

TEST(Formula, ParseExamples) {
  const Formula f = parse_formula("(forall x (exists y (rel R x y)))");
  EXPECT_EQ(f->op, Op::Forall);
  EXPECT_EQ(f->kids[0]->op, Op::Exists);
  EXPECT_EQ(parse_formula("(and)")->op, Op::True);
  EXPECT_TRUE(eval(FinStructure(), parse_formula("(and)")));
  EXPECT_THROW(parse_formula("(rel R x"), parse_error);
}

TEST(Formula, PrintParseRoundTrip) {
  const std::string text = "(forall x (or (not (rel R x x)) (exists y (and (eq x y) (rel P y)))))";
  const Formula f = parse_formula(text);
  EXPECT_TRUE(formula_equal(parse_formula(print(f)), f));
  EXPECT_EQ(quantifier_depth(f), 2u);
  EXPECT_EQ(symbols_used(f), (std::set<std::string>{"P", "R"}));
}

TEST(Formula, ParseErrorsCarryPositions) {
  try {
    parse_formula("(and\n  (rel R x) (bogus))");
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Eval, Examples) {
  const FinStructure A = edge({"a", "b"}, {{"a", "b"}});
  EXPECT_TRUE(eval(A, f_true()));
  EXPECT_TRUE(eval(A, parse_formula("(exists x (exists y (rel R x y)))")));
  EXPECT_FALSE(eval(A, parse_formula("(forall x (rel R x x))")));
}

TEST(Eval, CompiledAgreesWithTreeWalker) {
  const Theory T = test::linear_order();
  const CompiledFormula C(T.sentence, T.language);
  std::size_t agree = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    FinStructure A(T.language, canonical_points(n));
    const std::size_t tuples = A.tuple_count(0);
    for (std::size_t mask = 0; mask < (std::size_t{1} << tuples); ++mask) {
      for (std::size_t c = 0; c < tuples; ++c) A.set_code(0, c, (mask >> c) & 1u);
      EXPECT_EQ(C.eval(A), eval(A, T.sentence));
      ++agree;
    }
  }
  EXPECT_EQ(agree, 2u + 16u + 512u);
}

TEST(Models, Counts) {
  EXPECT_EQ(count_models(test::linear_order(), 2), 2u);
  EXPECT_EQ(count_models(test::linear_order(), 3), 6u);
  EXPECT_EQ(count_models(test::linear_order(), 4), 24u);
  EXPECT_EQ(count_models(test::truth("P/1"), 1), 2u);
  EXPECT_EQ(count_models(test::theory("R/2", "(false)"), 2), 0u);
  // Fixed-point-free involutions on 4 points: 3 perfect matchings.
  EXPECT_EQ(count_models(test::theory("R/2",
                                      "(and (forall x (not (rel R x x)))"
                                      " (forall x (forall y (iff (rel R x y) (rel R y x))))"
                                      " (forall x (exists y (and (rel R x y)"
                                      " (forall z (implies (rel R x z) (eq z y)))))))"),
                         4),
            3u);
}

TEST(StructureSearch, Examples) {
  const FinER I3 = test::er("a b c");
  const SearchResult ok = structure_search(I3, test::linear_order());
  ASSERT_TRUE(ok.witness);
  EXPECT_TRUE(classwise_satisfies(*ok.witness, test::linear_order()));
  const SearchResult no = structure_search(I3, test::exactly_two());
  EXPECT_FALSE(no.witness);
  EXPECT_EQ(no.failed_class, std::optional<std::size_t>(0));
  EXPECT_TRUE(structure_search(test::er("a b | c"), test::truth()).witness);
}

TEST(ImpliesStar, Examples) {
  EXPECT_TRUE(implies_star_n(test::linear_order(), test::linear_order(), 3).pass);
  EXPECT_TRUE(implies_star_n(test::linear_order(), test::truth(), 3).pass);
  const ImpliesResult r = implies_star_n(test::truth(), test::exactly_two(), 3);
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.counterexample);
  EXPECT_EQ(r.counterexample->size(), 1u);
}

}  // namespace
}  // namespace structo

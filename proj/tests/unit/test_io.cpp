#include <gtest/gtest.h>

#include "helpers.hpp"

namespace structo {
namespace {

TEST(Io, RelationRoundTrip) {
  for (const FinER& E : relations_upto(4)) EXPECT_EQ(parse_er(format_er(E)), E);
  EXPECT_EQ(parse_er(er_to_json(test::er("a b | c"))), test::er("a b | c"));
}

TEST(Io, CommentsAndBlankLinesIgnored) {
  const FinER E = parse_er("; header\n\npoints: a b c\n  ; inner\nclass: a c\nclass: b\n");
  EXPECT_EQ(E, test::er("a c | b"));
}

TEST(Io, ErrorsCarryLineNumbers) {
  try {
    parse_er("points: a b\nclazz: a b\n");
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_er("points: a b\nclass: a z\n"), input_error);
}

TEST(Io, MapRoundTrip) {
  const FinER E = test::er("a b | c"), F = test::er("x | y");
  const PointMap f = test::map(E, F, {{"a", "x"}, {"b", "x"}, {"c", "y"}});
  EXPECT_EQ(parse_map(format_map(f), E, F), f);
  EXPECT_EQ(parse_map(map_to_json(f), E, F), f);
  EXPECT_THROW(parse_map("a -> x\n", E, F), input_error);
}

TEST(Io, StructureAndTheoryRoundTrip) {
  FinStructure A(parse_language("R/2 P/1"), {"a", "b"});
  A.add("R", {"a", "b"});
  A.add("P", {"b"});
  EXPECT_EQ(parse_structure(format_structure(A)), A);
  EXPECT_EQ(parse_structure(structure_to_json(A)), A);
  const Theory T = test::linear_order();
  const Theory back = parse_theory(format_theory(T));
  EXPECT_EQ(back.language, T.language);
  EXPECT_TRUE(formula_equal(back.sentence, T.sentence));
}

TEST(Io, TheoryRejectsFreeVariables) {
  EXPECT_THROW(parse_theory("language: R/2\nsentence: (rel R x x)\n"), input_error);
  EXPECT_THROW(parse_theory("language: R/2\nsentence: (forall x (rel S x))\n"), input_error);
}

TEST(Io, CocycleFileFillsMissingPairs) {
  const Cocycle c = parse_cocycle("points: a b\nclass: a b\nfiber: 2\nalpha a b : [1;0]\n");
  EXPECT_EQ(c(1, 0), (Perm{1, 0}));
  EXPECT_EQ(parse_cocycle(format_cocycle(c)).alpha, c.alpha);
}

TEST(Io, FiberSpaceRoundTrip) {
  const FiberSpace S = tautological(test::er("a b"));
  const FiberSpace back = parse_fiber_space(format_fiber_space(S));
  EXPECT_EQ(back.total, S.total);
  EXPECT_EQ(back.p, S.p);
}

TEST(Io, PosetFamilyGraphingRoundTrip) {
  const FinPoset P = FinLattice::powerset(2).order();
  const FinPoset Q = parse_poset(format_poset(P));
  EXPECT_EQ(Q.elements(), P.elements());
  EXPECT_EQ(Q.matrix(), P.matrix());
  const SetFamily F = parse_family("set: 1 2\nset: 1 3\n");
  EXPECT_EQ(parse_family(format_family(F)), F);
  EXPECT_EQ(parse_family(family_to_json(F)), F);
  const Graphing G = Graphing::from_graph(3, {{0, 1}, {1, 2}});
  const Graphing H = parse_graphing(format_graphing(G));
  EXPECT_EQ(H.er(), G.er());
  EXPECT_EQ(H.edges(), G.edges());
}

TEST(Io, InterpretationRoundTrip) {
  const std::string text =
      "[source]\nlanguage: P/1\n[target]\nlanguage: R/2\nsentence: (true)\n[assign]\nP := (rel R x1 x1)\n";
  const Interpretation a = parse_interpretation(text);
  EXPECT_TRUE(formula_equal(a["P"], parse_formula("(rel R x1 x1)")));
  const Interpretation b = parse_interpretation(format_interpretation(a));
  EXPECT_TRUE(formula_equal(b["P"], a["P"]));
}

TEST(Io, ContentHash) {
  EXPECT_EQ(hex64(fnv1a("")), "cbf29ce484222325");
  EXPECT_EQ(hex64(fnv1a("a")), "af63dc4c8601ec8c");
}

}  // namespace
}  // namespace structo

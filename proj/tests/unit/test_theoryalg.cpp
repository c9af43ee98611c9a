#include <gtest/gtest.h>

#include "helpers.hpp"

namespace structo {
namespace {

using test::er;
using test::theory;

Interpretation unary(const std::string& formula) {
  return Interpretation(parse_language("P/1"), test::truth("R/2"), {{"P", parse_formula(formula)}});
}

TEST(Interpretation, EqualityAssignmentGivesDiagonal) {
  const Interpretation a(parse_language("S/2"), test::truth("R/2"), {{"S", parse_formula("(eq x1 x2)")}});
  FinStructure A(parse_language("R/2"), {"a", "b"});
  const FinStructure B = alpha_reduct(a, A);
  EXPECT_TRUE(B.holds(0, {0, 0}));
  EXPECT_TRUE(B.holds(0, {1, 1}));
  EXPECT_FALSE(B.holds(0, {0, 1}));
}

TEST(Interpretation, IdentityReductIsForgetful) {
  const Theory T = test::linear_order();
  FinStructure A(T.language, {"a", "b"});
  A.add("R", {"a", "b"});
  EXPECT_EQ(alpha_reduct(Interpretation::identity(T), A), A);
}

TEST(Interpretation, SubstitutionAvoidsCapture) {
  // S(x1,x2) := exists x2 R(x1,x2); substituted under a binder named x2.
  const Interpretation a(parse_language("S/2"), test::truth("R/2"),
                         {{"S", parse_formula("(exists x2 (rel R x1 x2))")}});
  const Formula phi = parse_formula("(forall x2 (rel S x2 x2))");
  const Formula psi = interp_apply(a, phi);
  for (std::size_t mask = 0; mask < 16; ++mask) {
    FinStructure A(parse_language("R/2"), {"0", "1"});
    for (std::size_t c = 0; c < 4; ++c) A.set_code(0, c, (mask >> c) & 1u);
    EXPECT_EQ(eval(A, psi), eval(alpha_reduct(a, A), phi)) << mask;
  }
}

TEST(Interpretation, ComposeWithIdentity) {
  const Interpretation a = unary("(exists y (rel R x1 y))");
  const Interpretation id = Interpretation::identity(a.target);
  EXPECT_TRUE(interp_equivalent_upto(compose(id, a), a, 3));
}

TEST(Interpretation, ReductOfReductIsReductOfComposite) {
  const Interpretation inner = unary("(rel R x1 x1)");
  const Interpretation outer(parse_language("Q/1"), Theory(parse_language("P/1"), f_true()),
                             {{"Q", parse_formula("(not (rel P x1))")}});
  // Q is interpreted over P, P over R; the composite interprets Q over R.
  const Interpretation both = compose(inner, outer);
  for (std::size_t mask = 0; mask < 16; ++mask) {
    FinStructure A(parse_language("R/2"), {"0", "1"});
    for (std::size_t c = 0; c < 4; ++c) A.set_code(0, c, (mask >> c) & 1u);
    EXPECT_EQ(alpha_reduct(outer, alpha_reduct(inner, A)), alpha_reduct(both, A));
  }
}

TEST(TheoryTensor, StructurabilityIsConjunction) {
  const std::vector<Theory> Ts = {test::linear_order(), test::exactly_two()};
  const Theory T = theory_tensor(Ts).theory;
  for (const FinER& E : relations_upto(4)) {
    const bool both = structure_search(E, Ts[0]).witness && structure_search(E, Ts[1]).witness;
    EXPECT_EQ(structure_search(E, T).witness.has_value(), both);
  }
}

TEST(TheoryTensor, SingletonIsItself) {
  const Theory T = theory_tensor({test::linear_order()}).theory;
  for (std::size_t n = 1; n <= 3; ++n) EXPECT_EQ(count_models(T, n), count_models(test::linear_order(), n));
}

TEST(TheoryOplus, StructurabilitySplitsIntoParts) {
  const std::vector<Theory> Ts = {test::exactly_one(), test::exactly_two()};
  const Theory T = theory_oplus(Ts).theory;
  for (const FinER& E : relations_upto(4)) {
    bool every_class = true;
    for (std::size_t s : E.class_sizes()) every_class = every_class && (s == 1 || s == 2);
    EXPECT_EQ(structure_search(E, T).witness.has_value(), every_class);
  }
}

TEST(TheoryCross, Examples) {
  // Only 1-point models; R is free on each side, so 2 * 2 of them.
  EXPECT_EQ(cross_model_count(test::exactly_one(), test::exactly_one(), 1), 4u);
  EXPECT_EQ(count_models(theory_cross(test::exactly_one(), test::exactly_one()), 1), 4u);
  EXPECT_EQ(count_models(theory_cross(test::exactly_one(), test::exactly_one()), 2), 0u);
  // Brute force over the expanded language agrees with the closed count.
  const Theory C = theory_cross(test::linear_order(), test::exactly_two());
  for (std::size_t n = 1; n <= 3; ++n)
    EXPECT_EQ(count_models(C, n), cross_model_count(test::linear_order(), test::exactly_two(), n)) << n;
  // Grids on 4 points: 6 transverse pairs of 2+2 partitions, 2 orders, 16 free R on the other side.
  EXPECT_EQ(cross_model_count(test::linear_order(), test::exactly_two(), 4), 192u);
}

TEST(Morleyize, Shapes) {
  const Morleyized top = morleyize(test::truth());
  EXPECT_TRUE(has_forall_exists_shape(top.theory.sentence));
  const Theory serial = theory("R/2", "(forall x (exists y (rel R x y)))");
  const Morleyized m = morleyize(serial);
  EXPECT_TRUE(has_forall_exists_shape(m.theory.sentence));
  const Theory nested = theory("R/2", "(not (exists x (forall y (not (exists z (rel R y z))))))");
  EXPECT_TRUE(has_forall_exists_shape(morleyize(nested).theory.sentence));
}

// Property: reducts of the expansion's models are exactly the models, each with one expansion.
TEST(Morleyize, ExpansionsAreUnique) {
  for (const Theory& T : {theory("R/2", "(forall x (exists y (rel R x y)))"), test::linear_order(),
                          theory("R/2", "(exists x (forall y (rel R x y)))")}) {
    const Morleyized m = morleyize(T);
    for (std::size_t n = 1; n <= 2; ++n) EXPECT_EQ(count_models(m.theory, n), count_models(T, n));
  }
}

TEST(Coequalizer, Examples) {
  const Interpretation a = unary("(rel R x1 x1)");
  EXPECT_EQ(count_models(coequalizer(a, a), 2), count_models(test::truth("R/2"), 2));
  const Interpretation b = unary("(true)");
  // Agreement forces R reflexive: 2^(n^2 - n) models.
  EXPECT_EQ(count_models(coequalizer(a, b), 2), 4u);
  const Interpretation never = unary("(false)");
  for (std::size_t n = 1; n <= 3; ++n) EXPECT_EQ(count_models(coequalizer(b, never), n), 0u);
}

}  // namespace
}  // namespace structo

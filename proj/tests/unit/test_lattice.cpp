#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"

namespace structo {
namespace {

TEST(Poset, ClosureAndCycles) {
  const FinPoset P({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  EXPECT_TRUE(P.leq(P.index("a"), P.index("c")));
  EXPECT_THROW(FinPoset({"a", "b"}, {{"a", "b"}, {"b", "a"}}), input_error);
  // A 3-chain has 4 upsets.
  EXPECT_EQ(P.upsets().size(), 4u);
}

TEST(Lattice, RejectsNonLattice) {
  EXPECT_THROW(FinLattice(FinPoset({"a", "b"}, {})), input_error);
}

TEST(Lattice, Distributivity) {
  EXPECT_TRUE(FinLattice::chain(4).distributive());
  EXPECT_TRUE(FinLattice::powerset(3).distributive());
  EXPECT_FALSE(FinLattice::n5().distributive());
  EXPECT_FALSE(FinLattice::m3().distributive());
}

TEST(Projection, Examples) {
  const FinLattice C = FinLattice::chain(3);
  std::vector<std::size_t> id(C.size());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
  EXPECT_EQ(retract_iso(C.order(), id).classes.size(), 3u);
  const std::vector<std::size_t> top(C.size(), C.top());
  const ProjectionReport r = check_projection(C.order(), top);
  EXPECT_TRUE(r.projection());
  EXPECT_TRUE(r.closure);
  EXPECT_EQ(retract_iso(C.order(), top).classes.size(), 1u);
  const FinLattice B = FinLattice::powerset(2);
  const std::size_t a = B.order().index("1");
  std::vector<std::size_t> meet_a(B.size());
  for (std::size_t x = 0; x < B.size(); ++x) meet_a[x] = B.meet(x, a);
  EXPECT_TRUE(check_projection(B.order(), meet_a).projection());
  const RetractIso iso = retract_iso(B.order(), meet_a);
  EXPECT_TRUE(iso.verified);
  EXPECT_EQ(iso.classes.size(), 2u);
}

TEST(Priestley, Examples) {
  const PriestleyReport two = priestley(FinLattice::chain(2));
  EXPECT_EQ(two.filters.size(), 1u);
  EXPECT_EQ(two.upset_count, 2u);
  EXPECT_TRUE(two.iso());
  const PriestleyReport square = priestley(FinLattice::powerset(2));
  EXPECT_EQ(square.filters.size(), 2u);
  EXPECT_FALSE(square.spectrum.leq(0, 1) || square.spectrum.leq(1, 0));
  EXPECT_EQ(square.upset_count, 4u);
  EXPECT_TRUE(square.iso());
  EXPECT_THROW(priestley(FinLattice::n5()), input_error);
}

// Property: prime filters of a finite distributive lattice are the principal
// filters of its join-irreducibles; the upset lattice has |L| elements.
TEST(Priestley, RandomSublatticesOfPowersets) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const FinLattice L = random_distributive_lattice(rng, 4, 16);
    const PriestleyReport r = priestley(L);
    EXPECT_TRUE(r.iso());
    EXPECT_EQ(r.upset_count, L.size());
    std::size_t join_irreducible = 0;
    for (std::size_t x = 0; x < L.size(); ++x) {
      if (x == L.bottom()) continue;
      std::size_t lower_covers = 0;
      for (const auto& [lo, hi] : L.order().covers()) lower_covers += hi == x;
      join_irreducible += lower_covers == 1;
    }
    EXPECT_EQ(r.filters.size(), join_irreducible);
  }
}

TEST(Equations, Examples) {
  const Term absorb = parse_term("(join x (meet x y))");
  EXPECT_TRUE(check_equation(absorb, t_var("x"), FinLattice::chain(2)).holds);
  const Term lhs = parse_term("(meet x (join y z))");
  const Term rhs = parse_term("(join (meet x y) (meet x z))");
  const EquationResult n5 = check_equation(lhs, rhs, FinLattice::n5());
  EXPECT_FALSE(n5.holds);
  EXPECT_EQ(n5.counterexample.size(), 3u);
  EXPECT_TRUE(check_equation(lhs, rhs, FinLattice::powerset(3)).holds);
}

// Property: an identity valid in 2 holds in every sampled distributive lattice.
TEST(Equations, TransferFromTwo) {
  std::mt19937_64 rng(3);
  const std::vector<std::string> vars = {"x", "y", "z"};
  std::vector<FinLattice> samples;
  for (int i = 0; i < 20; ++i) samples.push_back(random_distributive_lattice(rng, 4, 16));
  int valid = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Term s = random_term(rng, vars, 4);
    const Term t = monotone_dnf(s, vars);
    if (!check_equation(s, t, FinLattice::chain(2)).holds) continue;
    ++valid;
    for (const auto& L : samples) EXPECT_TRUE(check_equation(s, t, L).holds) << print(s);
  }
  EXPECT_EQ(valid, 200);
}

TEST(Catalog, Examples) {
  const FinER D1 = test::er("a"), D2 = test::er("a | b"), I2 = test::er("a b");
  const CatalogReport c = catalog_poset({D1, D2, I2});
  EXPECT_TRUE(c.cb[1][0]);
  EXPECT_FALSE(c.cb[2][0]);
  EXPECT_TRUE(c.is_preorder);
  EXPECT_TRUE(c.tensor_projections_cb);
  EXPECT_TRUE(c.sum_injections_invariant);
  EXPECT_TRUE(c.tensor_mediates);
}

}  // namespace
}  // namespace structo

#include <gtest/gtest.h>

#include "helpers.hpp"

namespace structo {
namespace {

SetFamily fam(const std::vector<std::vector<Point>>& sets) {
  std::set<Point> ground;
  for (const auto& s : sets) ground.insert(s.begin(), s.end());
  return SetFamily::from_names({ground.begin(), ground.end()}, sets);
}

TEST(Intersecting, Examples) {
  EXPECT_TRUE(intersecting_check(fam({{"1", "2"}})));
  EXPECT_TRUE(intersecting_check(fam({{"1", "2"}, {"1", "3"}, {"2", "3"}})));
  EXPECT_FALSE(intersecting_check(fam({{"1", "2"}, {"3", "4"}})));
}

TEST(Reduce, StarCollapsesToCentre) {
  std::vector<std::vector<Point>> sets;
  for (int i = 2; i <= 9; ++i) sets.push_back({"1", std::to_string(i)});
  const SetFamily F = fam(sets);
  const ReduceTrace tr = family_reduce(F, 4);
  ASSERT_TRUE(tr.sound());
  EXPECT_EQ(tr.chain(), (std::vector<std::size_t>{1}));
  EXPECT_EQ(tr.terminal().size(), 1u);
  EXPECT_EQ(finite_core(F, 4), (std::vector<Point>{"1"}));
}

TEST(Reduce, SmallFamilyIsTerminal) {
  const SetFamily F = fam({{"1", "2"}, {"1", "3"}, {"2", "3"}});
  const ReduceTrace tr = family_reduce(F, 4);
  EXPECT_EQ(tr.stages.size(), 1u);
  EXPECT_EQ(finite_core(F, 4), (std::vector<Point>{"1", "2", "3"}));
  EXPECT_EQ(finite_core(fam({{"7"}}), 2), (std::vector<Point>{"7"}));
}

TEST(Reduce, Preconditions) {
  EXPECT_THROW(family_reduce(fam({{"1", "2"}, {"3", "4"}}), 4), input_error);
  EXPECT_THROW(family_reduce(fam({{"1", "2"}}), 1), input_error);
}

TEST(Reduce, ArtifactsAreReportedAsData) {
  // Triangle of triples, threshold 2: every pair is in one set, every point in
  // two, so F^(1) has three points and is not intersecting.
  const SetFamily F = fam({{"1", "2", "3"}, {"1", "4", "5"}, {"2", "4", "6"}, {"3", "5", "6"}});
  ASSERT_TRUE(intersecting_check(F));
  const ReduceTrace tr = family_reduce(F, 2);
  ASSERT_TRUE(tr.artifact);
  EXPECT_EQ(tr.artifact->kind, ArtifactKind::NotIntersecting);
  EXPECT_FALSE(finite_core(F, 2).has_value());
}

TEST(FamilyCounts, FrozenValues) {
  EXPECT_EQ(intersecting_family_count(5, 2), 75u);
  EXPECT_EQ(intersecting_family_count(6, 4), 32767u);
  EXPECT_EQ(intersecting_family_count(7, 4), (std::uint64_t{1} << 35) - 1);
  std::uint64_t three35 = 1;
  for (int i = 0; i < 35; ++i) three35 *= 3;
  EXPECT_EQ(intersecting_family_count(8, 4), three35 - 1);
}

// Oracle: the enumerator and the closed count agree where both are cheap.
TEST(FamilyCounts, EnumeratorMatchesCount) {
  for (std::size_t p = 2; p <= 6; ++p)
    for (std::size_t n = 1; n <= 3 && n <= p; ++n) {
      std::uint64_t seen = 0;
      for_each_intersecting_family(p, n, [&](const std::vector<std::uint64_t>&) {
        ++seen;
        return true;
      });
      EXPECT_EQ(seen, intersecting_family_count(p, n)) << p << "," << n;
    }
}

TEST(FamilyCounts, ExhaustiveReduceSmall) {
  const ExhaustiveReduceReport r = reduce_all_intersecting(6, 4, 4);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.total, 32767u);
  EXPECT_EQ(r.visited, r.total);
}

TEST(Wdp, LoopFiresSingletonFamily) {
  FinStructure A(parse_language("R/2"), {"a", "b"});
  A.add("R", {"a", "a"});
  const WdpBattery B = wdp_formulas(A.language(), 1, 64);
  const WdpHarnessResult r = wdp_harness(B, A, 1);
  EXPECT_FALSE(r.wdp_holds);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.firing_n, std::optional<std::size_t>(1));
  EXPECT_EQ(r.family.size(), 1u);
}

TEST(Wdp, EdgelessFiresNothing) {
  FinStructure A(parse_language("R/2"), {"a", "b", "c", "d"});
  const WdpHarnessResult r = wdp_harness(wdp_formulas(A.language(), 2, 256), A, 2);
  EXPECT_TRUE(r.wdp_holds);
  EXPECT_TRUE(r.ok);
  EXPECT_FALSE(r.firing_n.has_value());
}

TEST(Graphs, CountsUpToIsomorphism) {
  const std::vector<std::size_t> expected = {1, 1, 2, 4, 11, 34, 156, 1044, 12346};
  for (std::size_t n = 0; n < expected.size(); ++n) EXPECT_EQ(graphs_up_to_iso(n).size(), expected[n]) << n;
}

TEST(Bipartite, Examples) {
  EXPECT_EQ(bipartite_graphing(test::er("a b")).edges().size(), 1u);
  EXPECT_EQ(bipartite_graphing(test::er("a b c")).edges().size(), 2u);
  const Graphing k22 = bipartite_graphing(test::er("a b c d"));
  EXPECT_EQ(k22.edges().size(), 4u);
  EXPECT_TRUE(two_coloring(k22).has_value());
  EXPECT_THROW(bipartite_graphing(test::er("a | b c")), input_error);
}

TEST(Subdivide, Examples) {
  const Graphing triangle = Graphing::from_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  const Subdivision s = k_subdivide(triangle, 2);
  EXPECT_EQ(s.graphing.er().size(), 6u);
  const CycleReport c = enumerate_cycles(s.graphing, 2);
  EXPECT_EQ(c.cycles, 1u);
  const Graphing square = Graphing::from_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  EXPECT_EQ(k_subdivide(square, 3).graphing.er().size(), 12u);
  const Graphing path = Graphing::from_graph(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(enumerate_cycles(k_subdivide(path, 3).graphing, 3).cycles, 0u);
  EXPECT_TRUE(potential_labeling(k_subdivide(path, 3).graphing, 3).has_value());
}

// Frozen counterexample: on a graph that is not a subdivision the labeling
// and the divisibility conditions differ. Around the hexagon the signed step
// sum is 5 - 1 = 4, so a Z_4 labeling exists although the cycle has length 6.
TEST(Subdivide, LabelingIsNotDivisibilityOnRawGraphs) {
  const Graphing hexagon = Graphing::from_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
  EXPECT_TRUE(potential_labeling(hexagon, 4).has_value());
  EXPECT_FALSE(enumerate_cycles(hexagon, 4).all_divisible());
  // After subdivision both conditions hold.
  const Subdivision s = k_subdivide(hexagon, 4);
  EXPECT_TRUE(potential_labeling(s.graphing, 4).has_value());
  EXPECT_TRUE(enumerate_cycles(s.graphing, 4).all_divisible());
}

}  // namespace
}  // namespace structo

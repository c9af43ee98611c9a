#include <gtest/gtest.h>

#include "helpers.hpp"

namespace structo {
namespace {

TEST(Relations, OnePerIsomorphismType) {
  // Partitions of 1..4 summed: 1 + 2 + 3 + 5.
  EXPECT_EQ(relations_upto(4).size(), 11u);
  EXPECT_EQ(relations_upto(3, 3).size(), 3u);
}

TEST(Suites, SmallBoundsPass) {
  for (const SuiteReport& r : run_suites({"all"}, 2, 7)) {
    for (const CheckResult& c : r.checks) EXPECT_TRUE(c.pass) << r.suite << "/" << c.name << " " << c.detail;
  }
}

TEST(Suites, ReportsAreDeterministic) {
  const auto a = format_reports(run_suites({"scott", "lattice"}, 2, 1), false);
  const auto b = format_reports(run_suites({"scott", "lattice"}, 2, 1, false), false);
  EXPECT_EQ(a, b);
  EXPECT_EQ(reports_to_json(run_suites({"scott"}, 2, 1), false), reports_to_json(run_suites({"scott"}, 2, 1), false));
}

TEST(Suites, UnknownNameRejected) {
  EXPECT_THROW(run_suite("bogus", 2, 0), input_error);
  EXPECT_THROW(run_suites({"scott", "bogus"}, 2, 0), input_error);
}

TEST(Suites, FamilyReduceReportsIncompleteSweep) {
  // A zero-length budget cannot finish p = 7, so the check must fail with a projection.
  const CheckResult r = check_family_reduce(7, 4, 4, 1e-9);
  EXPECT_FALSE(r.pass);
  EXPECT_NE(r.detail.find("incomplete"), std::string::npos);
}

}  // namespace
}  // namespace structo

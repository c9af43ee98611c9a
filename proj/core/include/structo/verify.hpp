#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "structo/eqrel.hpp"
#include "structo/logic.hpp"
#include "structo/structures.hpp"

namespace structo {

// One named property check. On failure detail holds the first
// counterexample found, small enough to replay by hand.
struct CheckResult {
  std::string name;
  bool pass = true;
  std::uint64_t cases = 0;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteReport {
  std::string suite;
  std::size_t max_size = 0;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool pass() const;
};

// One relation per isomorphism type with min_points..max_points points,
// built from class-size partitions on canonical points.
std::vector<FinER> relations_upto(std::size_t max_points, std::size_t min_points = 1);

// Small theories used by the bounded lattice laws: truth, strict linear
// order, exactly one marked point, some marked point, fixed-point-free
// involution, at most two points.
std::vector<Theory> theory_battery();
// The three theories of the ltimes universal check: truth, strict linear
// order, exactly one marked point.
std::vector<Theory> ltimes_theories();

// Every classwise T-structure on F, over any language.
std::vector<StructuredER> classwise_structures(const FinER& F, const Theory& T);

// ------------------------------------------------------------ constructions
CheckResult check_ltimes_universal(std::size_t max_base, std::size_t max_source);
CheckResult check_tensor_universal(std::size_t max_points);
CheckResult check_tensor_identities(std::size_t max_points);
CheckResult check_skew_ltimes(std::size_t max_points);

// ------------------------------------------------------------ scott
CheckResult check_scott_counts(std::size_t max_base, std::size_t max_source);
CheckResult check_scott_semantics(std::size_t max_base, std::size_t max_source);
CheckResult check_scott_roundtrip(std::size_t max_base, std::size_t max_source);

// ------------------------------------------------------------ factorize
CheckResult check_factorizations(std::size_t max_points);
CheckResult check_factor_uniqueness(std::size_t max_points);

// ------------------------------------------------------------ theory lattice
CheckResult check_lattice_laws(std::size_t n);
CheckResult check_distributivity(std::size_t n);

// ------------------------------------------------------------ fiber spaces
CheckResult check_cocycle_roundtrip(std::size_t max_base, std::size_t max_fiber);
CheckResult check_hom_correspondence(std::size_t max_points);
CheckResult check_fiber_factorization(std::size_t max_base, std::size_t max_fiber);
CheckResult check_fiber_ltimes_universal(std::size_t max_base, std::size_t max_fiber);

// ------------------------------------------------------------ interpretations
CheckResult check_substitution(std::size_t max_points, std::uint64_t seed);
CheckResult check_morleyization(std::size_t max_points);
CheckResult check_cross_theory(std::size_t max_points);

// ------------------------------------------------------------ lattices
// Distributive lattices of the fixed corpus with at most max_elements
// elements plus `random_count` random sublattices of 2^k.
CheckResult check_priestley(std::size_t max_elements, std::size_t random_count, std::uint64_t seed);
CheckResult check_nondistributive_rejected();
CheckResult check_transfer(std::size_t pairs, std::uint64_t seed);
CheckResult check_retracts(std::size_t max_elements);
CheckResult check_catalog(std::size_t max_points);

// ------------------------------------------------------------ combinatorics
CheckResult check_wdp_harness(std::size_t structures, std::uint64_t seed);
// Reduces every n-uniform intersecting family on at most `points` points.
// time_limit 0 means unbounded; when the sweep is cut short the check fails
// and detail reports the measured rate and the projected total time.
CheckResult check_family_reduce(std::size_t points, std::size_t arity, std::size_t t, double time_limit);
CheckResult check_subdivide(std::size_t max_vertices, std::size_t max_k);
CheckResult check_bipartite(std::size_t max_points);

// ------------------------------------------------------------ suites
// constructions, scott, factorize, fiber, theoryalg, lattice, combinat.
const std::vector<std::string>& suite_names();
// Throws input_error on an unknown suite name.
SuiteReport run_suite(const std::string& name, std::size_t max_size, std::uint64_t seed);
// "all" expands to every suite. Suites run on separate threads when
// parallel is set; the result follows the order of `names`.
std::vector<SuiteReport> run_suites(const std::vector<std::string>& names, std::size_t max_size,
                                    std::uint64_t seed, bool parallel = true);
// One line per check, then a verdict line. Timing columns only on request,
// so that equal inputs give byte-identical reports.
std::string format_reports(const std::vector<SuiteReport>& reports, bool timing);
std::string reports_to_json(const std::vector<SuiteReport>& reports, bool timing);

}  // namespace structo

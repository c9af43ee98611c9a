#pragma once

#include <bitset>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "structo/eqrel.hpp"
#include "structo/logic.hpp"
#include "structo/structures.hpp"

namespace structo {

// ---------------------------------------------------------------- set families

// Family of subsets of a named ground set (at most 64 points), stored as
// sorted distinct bitmasks. Every member has the same cardinality.
class SetFamily {
 public:
  SetFamily() = default;
  SetFamily(std::vector<Point> ground, std::vector<std::uint64_t> sets);
  static SetFamily from_names(std::vector<Point> ground, const std::vector<std::vector<Point>>& sets);

  const std::vector<Point>& ground() const { return ground_; }
  const std::vector<std::uint64_t>& sets() const { return sets_; }
  std::size_t size() const { return sets_.size(); }
  bool empty() const { return sets_.empty(); }
  // Common member size; 0 for the empty family.
  std::size_t arity() const { return arity_; }
  std::vector<Point> members(std::uint64_t set) const;
  // "{a,b}"
  std::string set_name(std::uint64_t set) const;
  std::uint64_t union_mask() const;
  bool operator==(const SetFamily&) const = default;

 private:
  std::vector<Point> ground_;
  std::vector<std::uint64_t> sets_;
  std::size_t arity_ = 0;
};

// First pair of disjoint members in lexicographic order.
std::optional<std::pair<std::uint64_t, std::uint64_t>> disjoint_pair(const SetFamily& F);
// Nonempty and pairwise meeting.
bool intersecting_check(const SetFamily& F);

// m-subsets of the ground set lying inside at least t members.
SetFamily frequent_subsets(const SetFamily& F, std::size_t m, std::size_t t);

struct ReduceStage {
  std::size_t m = 0;  // arity of this stage's family
  SetFamily family;
  bool certified = false;  // family is intersecting
};

enum class ArtifactKind {
  NotIntersecting,   // F^(m) nonempty but two members are disjoint
  NoFrequentSubset,  // |F| >= t yet no m < arity has F^(m) nonempty
};

struct ThresholdArtifact {
  ArtifactKind kind = ArtifactKind::NotIntersecting;
  std::size_t stage = 0;  // index of the offending stage in the trace
  std::size_t m = 0;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> witness;
};

// stages[0] is the input. Each later stage is F^(m) of its predecessor for
// the greatest m giving a nonempty family. A sound trace ends in a certified
// family with fewer than t members.
struct ReduceTrace {
  std::size_t t = 0;
  std::vector<ReduceStage> stages;
  std::optional<ThresholdArtifact> artifact;

  bool sound() const { return !artifact.has_value(); }
  const SetFamily& terminal() const { return stages.back().family; }
  // m_1 > m_2 > ... of the reduction steps.
  std::vector<std::size_t> chain() const;
};

// Requires F intersecting and t >= 2 (input_error otherwise).
ReduceTrace family_reduce(const SetFamily& F, std::size_t t);
// Union of the terminal family, or nullopt when the trace hits an artifact.
std::optional<std::vector<Point>> finite_core(const SetFamily& F, std::size_t t);

// n-subsets of 0..p-1 as bitmasks in lexicographic order of member lists.
std::vector<std::uint64_t> uniform_subsets(std::size_t p, std::size_t n);

// Visits every nonempty n-uniform intersecting family on 0..p-1. Families are
// produced by a depth-first walk over uniform_subsets(p, n); visit returns
// false to stop. Supports at most 128 candidate sets.
void for_each_intersecting_family(std::size_t p, std::size_t n,
                                  const std::function<bool(const std::vector<std::uint64_t>&)>& visit);
// Exact number of nonempty n-uniform intersecting families on 0..p-1,
// computed by counting independent sets of the disjointness graph.
std::uint64_t intersecting_family_count(std::size_t p, std::size_t n);

struct ExhaustiveReduceReport {
  std::size_t points = 0;
  std::size_t arity = 0;
  std::size_t t = 0;
  std::uint64_t total = 0;    // families that exist
  std::uint64_t visited = 0;  // families reduced before stopping
  std::uint64_t certified = 0;
  std::uint64_t artifacts = 0;
  std::uint64_t malformed = 0;  // traces violating their own postconditions
  std::optional<SetFamily> first_artifact;
  double seconds = 0.0;
  bool complete = false;  // every family was visited
  bool ok() const { return complete && malformed == 0; }
  double families_per_second() const { return seconds > 0 ? static_cast<double>(visited) / seconds : 0.0; }
};
// Reduces every family from for_each_intersecting_family(p, n) with threshold
// t. Stops early once time_limit_seconds elapse (0 means no limit).
ExhaustiveReduceReport reduce_all_intersecting(std::size_t p, std::size_t n, std::size_t t,
                                               double time_limit_seconds = 0.0);

// ---------------------------------------------------------------- WDP formulas

// (L_k, n_k, F_k): a sublanguage, a size and an L_k-structure on "0".."n_k-1".
struct WdpTriple {
  Language sublanguage;
  std::size_t n = 0;
  FinStructure model;
};

// psi_k and the priority disjunctions phi_n over a bounded enumeration.
struct WdpBattery {
  Language language;
  std::size_t max_size = 0;
  std::vector<WdpTriple> triples;  // n ascending, then sublanguage mask, then model bits
  std::vector<Formula> psi;        // psi[k](x0..x{n_k-1})
  std::vector<Formula> phi;        // phi[n](x0..x{n-1}); phi[0] unused
  bool truncated = false;          // max_index cut the enumeration short
};

// Tuple variables "x0".."x{n-1}".
std::vector<std::string> wdp_vars(std::size_t n);
// x0..x{n-1} distinct, forming a copy of F_k, meeting every other copy.
Formula wdp_psi(const WdpTriple& triple, const std::vector<std::string>& vars, const std::string& bound_prefix);
WdpBattery wdp_formulas(const Language& L, std::size_t max_size, std::size_t max_index);

struct WdpHarnessResult {
  bool wdp_holds = true;                // wdp_upto(A, f_max) verdict
  std::optional<std::size_t> firing_k;  // least k with psi_k satisfied somewhere
  std::optional<std::size_t> firing_n;  // least n whose phi_n family is intersecting
  SetFamily family;                     // the phi_{firing_n} family, or empty
  std::vector<SetFamily> families;      // per n (index n), families[0] unused
  // A failing WDP yields an intersecting phi family; a holding WDP (with the
  // battery covering f_max) fires nothing.
  bool ok = false;
};
WdpHarnessResult wdp_harness(const WdpBattery& battery, const FinStructure& A, std::size_t f_max);

// ---------------------------------------------------------------- graphings

// Graph on the points of an equivalence relation, edges inside classes,
// every class connected. Edges are stored oriented (tail, head); no loops
// and no parallel edges in either orientation.
class Graphing {
 public:
  Graphing() = default;
  Graphing(FinER er, std::vector<std::pair<std::size_t, std::size_t>> edges);
  // Components of the graph on "0".."n-1" become the classes; edges are
  // oriented from the smaller index.
  static Graphing from_graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  const FinER& er() const { return er_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  const std::vector<std::vector<std::size_t>>& neighbors() const { return adj_; }

 private:
  FinER er_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::vector<std::size_t>> adj_;
};

// Two-coloring (0/1 per point) or nullopt when some class has an odd cycle.
std::optional<std::vector<std::uint8_t>> two_coloring(const Graphing& G);
// Complete bipartite graph per class between the first floor(|C|/2) points
// and the rest. Every class needs at least two points.
Graphing bipartite_graphing(const FinER& E);

struct Subdivision {
  Graphing graphing;
  PointMap inclusion;  // original points into the subdivided relation
};
// Edge (x,y) becomes the path x, (x,y,1), ..., (x,y,k-1), y, oriented from x.
Subdivision k_subdivide(const Graphing& G, std::size_t k);

// Labels in Z_k found by propagation from each class's least point: an edge
// traversed along its orientation adds 1, against it subtracts 1. Returns the
// labels when every edge steps head = tail + 1 (mod k), else nullopt.
std::optional<std::vector<std::size_t>> potential_labeling(const Graphing& G, std::size_t k);

struct CycleReport {
  std::size_t cycles = 0;                      // simple cycles of length >= 3
  std::optional<std::vector<std::size_t>> bad;  // first cycle with length not divisible by k
  bool all_divisible() const { return !bad.has_value(); }
};
// Brute force over simple cycles, each counted once.
CycleReport enumerate_cycles(const Graphing& G, std::size_t k);

// ---------------------------------------------------------------- small graphs

struct SimpleGraph {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j, sorted
};
// Adjacency bits: pair (i,j), i < j, sits at position j*(j-1)/2 + i.
std::uint64_t graph_code(const SimpleGraph& g);
// Least code over relabelings that respect a refined vertex coloring.
std::uint64_t graph_canonical_code(const SimpleGraph& g);
// One representative per isomorphism class on n <= 8 vertices, by code.
std::vector<SimpleGraph> graphs_up_to_iso(std::size_t n);

}  // namespace structo

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "structo/eqrel.hpp"

namespace structo {

// Finite partial order on named elements (kept in the given order).
class FinPoset {
 public:
  FinPoset() = default;
  // Reflexive-transitive closure of the pairs (a ≤ b); throws on a cycle.
  FinPoset(std::vector<std::string> elements, const std::vector<std::pair<std::string, std::string>>& pairs);
  static FinPoset from_matrix(std::vector<std::string> elements, std::vector<std::vector<bool>> leq);

  std::size_t size() const { return elements_.size(); }
  const std::vector<std::string>& elements() const { return elements_; }
  const std::string& element(std::size_t i) const { return elements_[i]; }
  std::size_t index(const std::string& name) const;
  bool leq(std::size_t a, std::size_t b) const { return leq_[a][b]; }
  const std::vector<std::vector<bool>>& matrix() const { return leq_; }
  // Upward-closed subsets as membership vectors, in lexicographic order of the vectors.
  std::vector<std::vector<bool>> upsets() const;
  // Covering pairs (a ⋖ b), for printing.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;

 private:
  std::vector<std::string> elements_;
  std::vector<std::vector<bool>> leq_;
};

class FinLattice {
 public:
  FinLattice() = default;
  explicit FinLattice(FinPoset order);  // throws input_error if some pair lacks a meet or join

  static FinLattice chain(std::size_t n);
  static FinLattice powerset(std::size_t k);  // Boolean lattice 2^k, elements named by bitmask
  static FinLattice n5();
  static FinLattice m3();
  // Sublattice of 2^k given by a family of bitmasks closed under ∩ and ∪.
  static FinLattice from_sets(const std::vector<std::uint32_t>& masks);

  const FinPoset& order() const { return order_; }
  std::size_t size() const { return order_.size(); }
  std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a][b]; }
  std::size_t join(std::size_t a, std::size_t b) const { return join_[a][b]; }
  std::size_t bottom() const { return bottom_; }
  std::size_t top() const { return top_; }
  // (a,b,c) with a ∧ (b ∨ c) ≠ (a ∧ b) ∨ (a ∧ c), if any.
  std::optional<std::array<std::size_t, 3>> distributivity_failure() const;
  bool distributive() const { return !distributivity_failure(); }

 private:
  FinPoset order_;
  std::vector<std::vector<std::size_t>> meet_, join_;
  std::size_t bottom_ = 0, top_ = 0;
};

// ---------------------------------------------------------------- projection operators

struct ProjectionReport {
  bool monotone = true;
  bool idempotent = true;
  bool closure = true;  // x ≤ e(x)
  std::optional<std::pair<std::size_t, std::size_t>> monotone_witness;  // a ≤ b, e(a) ≰ e(b)
  std::optional<std::size_t> idempotent_witness;
  std::optional<std::size_t> closure_witness;
  bool projection() const { return monotone && idempotent; }
};
ProjectionReport check_projection(const FinPoset& P, const std::vector<std::size_t>& e);
// x ≲ y iff e(x) ≤ e(y).
std::vector<std::vector<bool>> induced_preorder(const FinPoset& P, const std::vector<std::size_t>& e);

struct RetractIso {
  std::vector<std::vector<std::size_t>> classes;  // ∼-classes, ordered by least member
  std::vector<std::size_t> to_image;              // class -> e(x)
  std::vector<std::size_t> from_image;            // image element -> class (indexed by element; unused entries = npos)
  bool verified = false;                          // mutually inverse and order-preserving both ways
};
RetractIso retract_iso(const FinPoset& P, const std::vector<std::size_t>& e);

// ---------------------------------------------------------------- Priestley / Birkhoff

// Proper, upward closed, meet closed, with join-closed complement.
std::vector<std::vector<bool>> prime_filters(const FinLattice& L);

struct PriestleyReport {
  std::vector<std::vector<bool>> filters;  // prime filters
  FinPoset spectrum;                       // filters under inclusion
  std::vector<std::vector<bool>> eta;      // eta[x][F] = (x ∈ F)
  std::size_t upset_count = 0;
  bool injective = false;
  bool order_embedding = false;
  bool onto_upsets = false;
  bool iso() const { return injective && order_embedding && onto_upsets; }
};
// Throws input_error citing the failing triple on a non-distributive lattice.
PriestleyReport priestley(const FinLattice& L);

// ---------------------------------------------------------------- lattice terms

struct LatticeTerm {
  enum class Kind { Var, Meet, Join, Top, Bottom } kind = Kind::Var;
  std::string name;
  std::vector<std::shared_ptr<const LatticeTerm>> kids;
};
using Term = std::shared_ptr<const LatticeTerm>;

Term t_var(std::string name);
Term t_meet(std::vector<Term> kids);
Term t_join(std::vector<Term> kids);
Term t_top();
Term t_bottom();
// "x", "top", "bottom", "(meet t ...)", "(join t ...)".
Term parse_term(const std::string& text);
std::string print(const Term& t);
std::vector<std::string> term_vars(const Term& t);
std::size_t eval_term(const FinLattice& L, const Term& t, const std::map<std::string, std::size_t>& env);

struct EquationResult {
  bool holds = true;
  std::map<std::string, std::size_t> counterexample;  // when !holds
};
EquationResult check_equation(const Term& lhs, const Term& rhs, const FinLattice& L);

// Random term over the given variables with at most max_ops operations.
Term random_term(std::mt19937_64& rng, const std::vector<std::string>& vars, std::size_t max_ops);
// Join of meets over the minimal true points of t's truth table on 2.
Term monotone_dnf(const Term& t, const std::vector<std::string>& vars);
// Sublattice of 2^k (k <= 5) with at most max_elements elements.
FinLattice random_distributive_lattice(std::mt19937_64& rng, std::size_t k, std::size_t max_elements);

// ---------------------------------------------------------------- catalog

struct CatalogReport {
  std::vector<std::vector<bool>> cb;  // cb[i][j]: some class-bijective E_i -> E_j
  bool tensor_projections_cb = true;
  bool sum_injections_invariant = true;
  bool tensor_mediates = true;  // G ->cb E_i and G ->cb E_j imply G ->cb E_i ⊗ E_j
  bool is_preorder = true;
};
CatalogReport catalog_poset(const std::vector<FinER>& Es);

}  // namespace structo

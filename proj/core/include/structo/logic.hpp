#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "structo/eqrel.hpp"
#include "structo/structures.hpp"

namespace structo {

// Finitary fragment: n-ary conjunction and disjunction, negation, equality,
// atoms and single-variable quantifiers. Nodes are immutable and shared.
enum class Op { True, False, Atom, Eq, Not, And, Or, Exists, Forall };

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  Op op = Op::True;
  std::string name;               // symbol for Atom, bound variable for quantifiers
  std::vector<std::string> vars;  // Atom arguments or the two sides of Eq
  std::vector<Formula> kids;      // Not: 1, And/Or: any, quantifiers: 1
};

Formula f_true();
Formula f_false();
Formula f_atom(std::string symbol, std::vector<std::string> vars);
Formula f_eq(std::string a, std::string b);
Formula f_not(Formula a);
Formula f_and(std::vector<Formula> parts);
Formula f_or(std::vector<Formula> parts);
Formula f_exists(std::string var, Formula body);
Formula f_forall(std::string var, Formula body);
// Sugar compiled into the core connectives.
Formula f_implies(Formula a, Formula b);
Formula f_iff(Formula a, Formula b);
// ∃v(φ ∧ ∀w(φ[w/v] → w = v)); w is chosen fresh.
Formula f_exists_unique(const std::string& var, Formula body);

// s-expression grammar; also accepts (implies a b) and (iff a b).
// ';' starts a comment running to the end of the line.
Formula parse_formula(const std::string& text);
std::string print(const Formula& f);

bool formula_equal(const Formula& a, const Formula& b);
std::set<std::string> free_vars(const Formula& f);
std::set<std::string> all_vars(const Formula& f);
std::set<std::string> symbols_used(const Formula& f);
// Number of nested quantifiers on the deepest branch.
std::size_t quantifier_depth(const Formula& f);
bool is_quantifier_free(const Formula& f);
// Throws input_error on unknown symbols or arity mismatches.
void check_formula(const Formula& f, const Language& lang);
// Variable renaming of free occurrences (capture-avoiding).
Formula rename_free(const Formula& f, const std::map<std::string, std::string>& renaming);
// A variable name not in the given set, of the form base, base1, base2, ...
std::string fresh_var(const std::set<std::string>& used, const std::string& base = "v");

struct Theory {
  Language language;
  Formula sentence;

  Theory();
  Theory(Language lang, Formula s);  // validates arities and closedness
  std::string to_string() const;     // "language: ...\nsentence: ...\n"
};

// Variable assignment by name.
using Env = std::map<std::string, Point>;

bool eval(const FinStructure& A, const Formula& f, const Env& env = {});
bool satisfies(const FinStructure& A, const Theory& T);

// Compiled form for repeated evaluation; variables live in numbered slots.
// Closed subformulas are shared and cached per structure.
class CompiledFormula {
 public:
  CompiledFormula(const Formula& f, const Language& lang, const std::vector<std::string>& free_order = {});
  bool eval(const FinStructure& A, const std::vector<std::size_t>& free_values = {}) const;
  // Kleene evaluation over a partial structure; bits take 0, 1 or 2 (unknown).
  // Returns 0, 1 or 2.
  int eval3(std::size_t n, const std::vector<std::vector<std::uint8_t>>& bits,
            const std::vector<std::size_t>& free_values = {}) const;

 private:
  struct Node {
    Op op;
    std::size_t sym = 0;
    std::vector<std::size_t> slots;  // Atom arguments, Eq sides, or the bound slot
    std::vector<int> kids;
    int cache_id = -1;  // >= 0 for closed subformulas
  };
  template <class Get>
  int run(int node, std::size_t n, Get& get, std::vector<std::size_t>& env, std::vector<std::int8_t>& cache) const;
  int build(const Formula& f, std::map<std::string, std::size_t>& scope, std::map<std::string, int>& closed_ids,
            std::set<std::size_t>& used);

  Language lang_symbols_;
  std::vector<Node> nodes_;
  int root_ = -1;
  std::size_t num_slots_ = 0;
  std::size_t num_free_ = 0;
  std::size_t num_cached_ = 0;
};

// Enumerates Mod(T) on a universe of size n (canonical points) in canonical
// order: symbols in declaration order, tuples lexicographic, false before true.
// visit receives the relation bits and returns false to stop.
void for_each_model_bits(const Theory& T, std::size_t n,
                         const std::function<bool(const std::vector<std::vector<std::uint8_t>>&)>& visit);
std::vector<FinStructure> models(const Theory& T, const std::vector<Point>& universe);
std::size_t count_models(const Theory& T, std::size_t n);
std::optional<FinStructure> first_model(const Theory& T, const std::vector<Point>& universe);

// Per-size memo of the first model in canonical order (nullopt = none).
using ModelCache = std::map<std::size_t, std::optional<std::vector<std::vector<std::uint8_t>>>>;

struct SearchResult {
  std::optional<StructuredER> witness;
  std::optional<std::size_t> failed_class;  // index into E.classes()
};
SearchResult structure_search(const FinER& E, const Theory& T, ModelCache* cache = nullptr);

struct ImpliesResult {
  bool pass = true;
  std::optional<FinER> counterexample;
  bool size_warning = false;  // n exceeds the comfortable sweep bound
  std::size_t relations_checked = 0;
};
ImpliesResult implies_star_n(const Theory& sigma, const Theory& tau, std::size_t n);

}  // namespace structo

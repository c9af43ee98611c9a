#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "structo/logic.hpp"
#include "structo/structures.hpp"

namespace structo {

// Interpretation of L in (M, τ): each R ∈ L of arity n is sent to a formula
// over M whose free variables lie among x1..xn.
struct Interpretation {
  Language source;
  Theory target;
  std::map<std::string, Formula> assign;

  Interpretation() = default;
  Interpretation(Language source, Theory target, std::map<std::string, Formula> assign);  // validates
  static Interpretation identity(const Theory& T);
  const Formula& operator[](const std::string& symbol) const;
};

// "x1", ..., "xn".
std::vector<std::string> interp_vars(std::size_t n);

// Replaces each atom R(v̄) by α(R)[x̄ := v̄], renaming bound variables as needed.
Formula interp_apply(const Interpretation& alpha, const Formula& phi);
// R^{α*A} := α(R)^A. A is over the target language.
FinStructure alpha_reduct(const Interpretation& alpha, const FinStructure& A);
// (β ∘ α)(R) = β(α(R)); requires α's target language to be β's source.
Interpretation compose(const Interpretation& beta, const Interpretation& alpha);
// α(σ) holds in every model of α.target on at most n points.
bool interp_valid_upto(const Interpretation& alpha, const Theory& sigma, std::size_t n);
// Same reducts on every model of the common target on at most n points.
bool interp_equivalent_upto(const Interpretation& a, const Interpretation& b, std::size_t n);

// Symbol renaming inside formulas and languages.
Formula rename_symbols(const Formula& f, const std::map<std::string, std::string>& renaming);
Formula substitute_symbols(const Formula& f, const std::map<std::string, Formula>& assign);

// ⊗: languages renamed "R#i" and sentences conjoined. ι_i : σ_i -> ⊗.
struct TheoryTensor {
  Theory theory;
  std::vector<Interpretation> injections;
};
TheoryTensor theory_tensor(const std::vector<Theory>& Ts);
// Pairing [α_i] : ⊗σ_i -> τ from interpretations α_i : σ_i -> τ.
Interpretation tensor_pairing(const TheoryTensor& T, const std::vector<Interpretation>& alphas);

// ⊕: renamed languages plus markers "#Pi"; exactly one marker holds
// everywhere and the other summands' symbols are empty. π_i : ⊕ -> σ_i.
struct TheoryOplus {
  Theory theory;
  std::vector<Interpretation> projections;
};
TheoryOplus theory_oplus(const std::vector<Theory>& Ts);

// σ × τ over "#R1", "#R2", L#0, M#1. R1 and R2 are equivalence relations with
// X ≅ X/R1 × X/R2, L is R1-invariant and models σ on X/R1, likewise M, τ, R2.
Theory theory_cross(const Theory& sigma, const Theory& tau);
struct CrossDecoded {
  FinStructure left;   // σ-structure on X/R1, points named by least member
  FinStructure right;  // τ-structure on X/R2
  std::vector<std::pair<std::size_t, std::size_t>> coords;  // x -> (left index, right index)
};
CrossDecoded cross_decode(const Theory& sigma, const Theory& tau, const FinStructure& A);
FinStructure cross_encode(const Theory& sigma, const Theory& tau, const std::vector<Point>& universe,
                          const CrossDecoded& d);
// Σ_{ab=n} n!/(a!b!) |Mod_a σ| |Mod_b τ|.
std::size_t cross_model_count(const Theory& sigma, const Theory& tau, std::size_t n);

struct Morleyized {
  Theory theory;
  Interpretation reduct;                 // L into the expanded theory
  std::vector<std::string> new_symbols;  // "#M0", "#M1", ...
};
Morleyized morleyize(const Theory& T);
// Each conjunct is a block of universal quantifiers, then at most one
// existential, then a quantifier-free matrix.
bool has_forall_exists_shape(const Formula& f);

// τ ∧ ⋀_R ∀x̄ (α(R) ↔ β(R)).
Theory coequalizer(const Interpretation& alpha, const Interpretation& beta);

}  // namespace structo

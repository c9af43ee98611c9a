#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "structo/eqrel.hpp"
#include "structo/logic.hpp"
#include "structo/structures.hpp"
#include "structo/util.hpp"

namespace structo {

// E ⋉ σ: one class per (E-class C, model of σ on C). Points "(x,j)" where j
// is the index of the model in canonical order on C.
struct LtimesResult {
  FinER base;
  Theory theory;
  FinER space;
  PointMap projection;
  StructuredER structure;
  // models[c][j] is the j-th model on E-class c, over the class's points.
  std::vector<std::vector<FinStructure>> models;
  // E-classes admitting no model; π misses them.
  std::vector<std::size_t> empty_classes;

  bool surjective() const { return empty_classes.empty(); }
  // Index of point (x, j) in space.
  std::size_t point_index(std::size_t x, std::size_t j) const;
};

LtimesResult ltimes(const FinER& E, const Theory& T);

// f̃(y) = (f(y), index of f(A|[y])) for f : F ->cb E and A a σ-structure on F.
PointMap ltimes_universal_map(const LtimesResult& R, const PointMap& f, const StructuredER& A);

// E ⊗ F. Points "(x,y,[p])" where [p] is the bijection C -> D in one-line
// notation over sorted class positions.
struct TensorResult {
  FinER product;
  PointMap pi1, pi2;
};
TensorResult tensor(const FinER& E, const FinER& F);
// ⟨f,g⟩ for class-bijective f : G -> E and g : G -> F.
PointMap pairing(const TensorResult& T, const PointMap& f, const PointMap& g);
// Number of classes predicted by the cardinality count Σ_{|C|=|D|} |C|!.
std::size_t tensor_class_count(const FinER& E, const FinER& F);

struct TensorCrossReport {
  PointMap map;  // (π1, π2) : E ⊗ F -> E × F
  HomClass classification;
  bool surjective = false;
  bool injective = false;
  bool isomorphism = false;
  bool uniform_sizes = false;  // every class of E and F has one common size
};
TensorCrossReport tensor_vs_cross(const FinER& E, const FinER& F);

// Cocycle into permutation groups. fiber[x] is the fiber size at x, constant
// on classes; alpha holds a permutation for every related ordered pair.
struct Cocycle {
  FinER base;
  std::vector<std::size_t> fiber;
  std::map<std::pair<std::size_t, std::size_t>, Perm> alpha;

  const Perm& operator()(std::size_t x, std::size_t y) const;
  // α(x,x) = id and α(y,z)∘α(x,y) = α(x,z); throws input_error naming the triple.
  void validate() const;
  bool uniform() const;
  static Cocycle trivial(const FinER& base, std::size_t n);
};

struct SkewResult {
  FinER space;
  PointMap pi1;
};
// (x,y) ~ (x',y') iff x E x' and α(x,x')(y) = y'. Points "(x,y)".
SkewResult skew_product(const Cocycle& alpha);
// Generic form: fiber over x is {0..ys.size()-1} named by ys; act(x,x',y) is
// the transported fiber element. Must itself satisfy the cocycle laws.
SkewResult skew_product_action(const FinER& E, const std::vector<std::string>& ys,
                               const std::function<std::size_t(std::size_t, std::size_t, std::size_t)>& act);

// T[x] enumerates x's class: T[x][y] is a position in the sorted class.
// α_T(x,x') = T(x')^{-1} ∘ T(x).
Cocycle cocycle_from_enumeration(const FinER& E, const std::vector<Perm>& T);
// Cyclic enumeration T(x)(y) = position of x plus y, modulo the class size.
std::vector<Perm> cyclic_enumeration(const FinER& E);

// Is phi a bijective reduction with q∘phi = p? (iso over a common base)
bool is_iso_over(const PointMap& phi, const PointMap& p, const PointMap& q);

}  // namespace structo

#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "structo/constructions.hpp"
#include "structo/eqrel.hpp"
#include "structo/logic.hpp"
#include "structo/structures.hpp"

namespace structo {

// p : (U,P) -> (X,E) a surjective class-bijective homomorphism. Finite fiber
// spaces are all smooth and, over each class, trivial; the machinery below is
// the exact finite content.
struct FiberSpace {
  FinER total;
  FinER base;
  PointMap p;

  FiberSpace() = default;
  FiberSpace(FinER total, FinER base, PointMap p);  // validates
  // Total-space indices over base point x, ascending.
  std::vector<std::size_t> fiber(std::size_t x) const;
  std::size_t fiber_size(std::size_t x) const;
};

// For x E x': u ↦ the unique u' over x' with u P u'. Indexed like fiber(x).
std::vector<std::size_t> fiber_transport(const FiberSpace& S, std::size_t x, std::size_t x2);

struct FiberMap {
  FiberSpace source, target;
  PointMap base_map, total_map;

  void validate() const;  // homomorphisms with q ∘ total = base ∘ p
  bool fiber_injective() const;
  bool fiber_surjective() const;
  bool fiber_bijective() const { return fiber_injective() && fiber_surjective(); }
};

struct FiberPullback {
  FiberSpace space;  // over f's domain, projection π1
  PointMap lift;     // π2 into S.total
};
// Points "(y,u)" with f(y) = p(u).
FiberPullback pullback_fiber(const FiberSpace& S, const PointMap& f);

// Enumerations T(x) : {0..n-1} -> fiber(x), as positions in fiber(x).
// α_T(x,x') = T(x')^{-1} ∘ transport(x,x') ∘ T(x). Default T is sorted order.
Cocycle cocycle_of(const FiberSpace& S, const std::vector<Perm>& T = {});
FiberSpace fiberspace_of(const Cocycle& alpha);
// Restrictions to the base points with each fiber size.
std::map<std::size_t, FiberSpace> partition_by_fiber_size(const FiberSpace& S);
// An isomorphism of total spaces commuting with the projections, if any.
std::optional<PointMap> fiberwise_isomorphism(const FiberSpace& S1, const FiberSpace& S2);
// φ with φ(x') ∘ α(x,x') = β(x,x') ∘ φ(x), if any.
std::optional<std::vector<Perm>> cohomologous(const Cocycle& alpha, const Cocycle& beta);

// Ê: points "(x,x')" for x E x'; (x,x') ~ (y,y') iff x E y and x' = y'; p = π1.
FiberSpace tautological(const FinER& E);
// f̂(x,x') = (f(x), f(x')).
FiberMap hom_correspondence(const PointMap& f);
// f(x') is the second coordinate of m(x',x'). m must be a fiber map Ê -> F̂.
PointMap decode_fiber_map(const FiberMap& m);
// Pointwise Q-relatedness of total maps.
bool fiber_maps_equivalent(const FiberMap& a, const FiberMap& b);
// All fiber maps S -> T (base map a homomorphism), lexicographic in
// (base map, total map). visit returns false to stop.
void for_each_fiber_map(const FiberSpace& S, const FiberSpace& T,
                        const std::function<bool(const PointMap&, const PointMap&)>& visit);

// Stages: fiberwise surjection P -> M over id_E, fiberwise injection
// M -> f^{-1}(Q) over id_E, fiber-bijective π2 : f^{-1}(Q) -> Q over f.
struct FiberFactorization {
  FiberMap surjection, injection, bijection;
};
FiberFactorization fiber_factorize(const FiberMap& m);

// (P,p) ⋉ σ: base points "(x,j)" with j indexing Mod(σ) on fiber(x);
// (x,j) ~ (x',j') iff x E x' and transport carries model j to model j'.
struct FiberLtimes {
  FiberSpace source;
  Theory theory;
  FinER base;                 // E ⋉_p σ
  PointMap base_projection;   // to E
  FiberSpace space;           // pullback of source along base_projection
  PointMap lift;              // space.total -> source.total, fiber-bijective
  FinStructure structure;     // on space.total, tuples inside fibers
  std::vector<std::vector<FinStructure>> fiber_models;  // per source base point
};
FiberLtimes fiber_ltimes(const FiberSpace& S, const Theory& T);

// A structure on a fiber space's total points relating only tuples inside
// one fiber; compatible if transports are isomorphisms between fibers.
bool fiber_structure_compatible(const FiberSpace& S, const FinStructure& A);
// Every fiber satisfies T.
bool fiberwise_satisfies(const FiberSpace& S, const FinStructure& A, const Theory& T);
// The unique fiber map into L given a fiber-bijective m into L.source and a
// compatible fiberwise σ-structure A on m.source.
std::pair<PointMap, PointMap> fiber_ltimes_universal(const FiberLtimes& L, const FiberMap& m, const FinStructure& A);

}  // namespace structo

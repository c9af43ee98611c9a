#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "structo/eqrel.hpp"
#include "structo/logic.hpp"
#include "structo/structures.hpp"

namespace structo {

// A finite relation with a binary coding of its points and a decomposition
// E = ∪_i graph(g_i) into total functions.
struct CodedER {
  FinER er;
  std::size_t bits = 1;                 // k >= 1
  std::vector<std::size_t> codes;       // codes[i] = i, read in binary, bit j is R_j
  std::vector<std::vector<std::size_t>> g;  // g[i][x]: i steps after x in x's class, cyclically
};

CodedER code_er(const FinER& E);

// Unary language R0..R{k-1}, optionally followed by P.
Language scott_language(std::size_t bits, bool with_marker = false);

struct ScottTheory {
  Language language;      // R0..R{k-1}
  Language sm_language;   // R0..R{k-1} P
  std::size_t bits = 1;   // width including padding
  Formula sigma_h, sigma_ci, sigma_cs, sigma_sm;
  Formula sigma;          // σ^h ∧ σ^ci ∧ σ^cs
  Formula pad;            // ∀x ¬R_j(x) for padded bits j; (true) without padding

  Theory theory() const;  // σ_E
  Theory h() const;
  Theory ci() const;
  Theory cs() const;
  Theory cih() const;     // σ^h ∧ σ^ci
  Theory smh() const;     // σ^h ∧ σ^sm
  Theory cssmh() const;   // σ^h ∧ σ^cs ∧ σ^sm
  // By name: sigma, sigma-h, sigma-ci, sigma-cs, sigma-sm, sigma-cih, sigma-smh, sigma-cssmh.
  Theory by_name(const std::string& name) const;
};

// φ_i(x,y) over the coded relation, as a disjunction of code conjunctions.
Formula scott_phi(const CodedER& C, std::size_t i, const std::string& x, const std::string& y);
// width >= C.bits pads with constant-false bits.
ScottTheory scott_theory(const CodedER& C, std::size_t width = 0);

// Code of a point of a unary structure over R0..R{k-1} (ignores other symbols).
std::size_t read_code(const FinStructure& A, std::size_t point);

// Decodes a structure satisfying σ_E classwise into the class-bijective map F -> E.
PointMap structures_to_cb(const StructuredER& A, const CodedER& C);
// R_j(y) iff bit j of the code of f(y).
StructuredER cb_to_structure(const PointMap& f, const CodedER& C);

// True iff every class of A satisfies T.
bool classwise_satisfies(const StructuredER& A, const Theory& T);
// Number of classwise T-structures on F: product of per-class model counts.
std::size_t count_structures(const FinER& F, const Theory& T);
// All classwise T-structures on F for a unary language, in canonical order.
std::vector<StructuredER> enumerate_structures(const FinER& F, const Theory& T);

}  // namespace structo

#pragma once

#include <string>

#include "structo/combinat.hpp"
#include "structo/constructions.hpp"
#include "structo/eqrel.hpp"
#include "structo/fiber.hpp"
#include "structo/lattice.hpp"
#include "structo/logic.hpp"
#include "structo/structures.hpp"
#include "structo/theoryalg.hpp"

namespace structo {

// Line-oriented text formats. Blank lines and lines whose first non-blank
// character is ';' are ignored. Malformed input raises parse_error with the
// line and column; semantic violations raise input_error. Every parse_*
// that has a JSON mirror also accepts JSON when the text starts with '{'.

// points: a b c
// class: a b
// class: c
FinER parse_er(const std::string& text);
std::string format_er(const FinER& E);

// a -> x, one line per domain point.
PointMap parse_map(const std::string& text, const FinER& domain, const FinER& codomain);
std::string format_map(const PointMap& f);

// language: R/2 S/1
// universe: a b c
// R: (a,b) (b,c)
Language parse_language(const std::string& text);
FinStructure parse_structure(const std::string& text);
std::string format_structure(const FinStructure& A);

// language: R/2
// sentence: (forall x (rel R x x))   ; may continue on following lines
Theory parse_theory(const std::string& text);
std::string format_theory(const Theory& T);

// [source]   language: ...
// [target]   theory lines
// [assign]   R := formula over x1..xn, one symbol per line
Interpretation parse_interpretation(const std::string& text);
std::string format_interpretation(const Interpretation& alpha);

// [total] relation, [base] relation, [projection] map.
FiberSpace parse_fiber_space(const std::string& text);
std::string format_fiber_space(const FiberSpace& S);

// Base relation lines, then "fiber: n" (every point) or "fiber: x n",
// then "alpha x y : [p0;p1;...]" (images of 0..n-1; space separated also
// accepted). Missing pairs are derived from the cocycle laws.
Cocycle parse_cocycle(const std::string& text);
std::string format_cocycle(const Cocycle& c);

// elements: a b c
// order: (a,b) (b,c)
FinPoset parse_poset(const std::string& text);
std::string format_poset(const FinPoset& P);  // cover pairs only

// points: 1 2 3      (optional; defaults to the union of the sets)
// set: 1 2
SetFamily parse_family(const std::string& text);
std::string format_family(const SetFamily& F);

// Relation lines, then "edge: a b" per edge (oriented a to b).
Graphing parse_graphing(const std::string& text);
std::string format_graphing(const Graphing& G);

// JSON mirrors (pretty printed, two-space indent).
std::string er_to_json(const FinER& E);
std::string map_to_json(const PointMap& f);
std::string structure_to_json(const FinStructure& A);
std::string poset_to_json(const FinPoset& P);
std::string family_to_json(const SetFamily& F);
std::string graphing_to_json(const Graphing& G);

// Whole file contents; input_error when unreadable.
std::string read_file(const std::string& path);

}  // namespace structo

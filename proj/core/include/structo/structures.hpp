#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "structo/eqrel.hpp"

namespace structo {

struct Symbol {
  std::string name;
  std::size_t arity = 1;
  bool operator==(const Symbol&) const = default;
};

// Ordered list of relation symbols with unique names and positive arities.
class Language {
 public:
  Language() = default;
  explicit Language(std::vector<Symbol> symbols);

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  const Symbol& operator[](std::size_t i) const { return symbols_[i]; }
  const std::vector<Symbol>& symbols() const { return symbols_; }
  std::optional<std::size_t> find(const std::string& name) const;
  std::size_t index(const std::string& name) const;  // throws input_error
  bool contains(const std::string& name) const { return find(name).has_value(); }
  void add(Symbol s);
  // Symbols whose names are listed, in this language's order.
  Language sublanguage(const std::vector<std::string>& names) const;
  bool is_sublanguage_of(const Language& other) const;
  std::size_t max_arity() const;
  // "R/2 S/1"
  std::string to_string() const;
  bool operator==(const Language&) const = default;

 private:
  std::vector<Symbol> symbols_;
};

// Language concatenation; names must be disjoint.
Language disjoint_union(const Language& a, const Language& b);

// Finite relational structure. The universe is kept in lexicographic order;
// each relation is a bit vector over tuples in lexicographic order
// (first coordinate most significant).
class FinStructure {
 public:
  FinStructure() = default;
  FinStructure(Language language, std::vector<Point> universe);

  const Language& language() const { return lang_; }
  const std::vector<Point>& universe() const { return universe_; }
  std::size_t size() const { return universe_.size(); }
  std::optional<std::size_t> find(const Point& p) const;
  std::size_t index(const Point& p) const;

  std::size_t tuple_count(std::size_t sym) const { return bits_[sym].size(); }
  std::size_t tuple_index(const std::vector<std::size_t>& t) const;
  std::vector<std::size_t> tuple_at(std::size_t sym, std::size_t code) const;

  bool holds(std::size_t sym, const std::vector<std::size_t>& t) const {
    return bits_[sym][tuple_index(t)] != 0;
  }
  bool holds_code(std::size_t sym, std::size_t code) const { return bits_[sym][code] != 0; }
  void set(std::size_t sym, const std::vector<std::size_t>& t, bool value = true) {
    bits_[sym][tuple_index(t)] = value ? 1 : 0;
  }
  void set_code(std::size_t sym, std::size_t code, bool value) { bits_[sym][code] = value ? 1 : 0; }
  void add(const std::string& sym, const std::vector<Point>& tuple);

  // True tuples of a symbol in lexicographic order.
  std::vector<std::vector<std::size_t>> tuples(std::size_t sym) const;
  const std::vector<std::vector<std::uint8_t>>& bits() const { return bits_; }
  std::vector<std::vector<std::uint8_t>>& mutable_bits() { return bits_; }

  bool operator==(const FinStructure& o) const {
    return lang_ == o.lang_ && universe_ == o.universe_ && bits_ == o.bits_;
  }
  // Canonical order: language, universe, then relation bits lexicographically.
  bool operator<(const FinStructure& o) const;

 private:
  Language lang_;
  std::vector<Point> universe_;
  std::map<Point, std::size_t> index_;
  std::vector<std::vector<std::uint8_t>> bits_;
};

// Structure on the points of an equivalence relation relating only
// tuples inside one class.
struct StructuredER {
  FinER er;
  FinStructure structure;

  StructuredER() = default;
  StructuredER(FinER e, FinStructure s);  // validates
  bool operator==(const StructuredER&) const = default;
};

// Induced substructure on the given point indices (kept in index order).
FinStructure restrict_structure(const FinStructure& A, const std::vector<std::size_t>& subset);
// Restriction to the named sublanguage.
FinStructure reduct(const FinStructure& A, const Language& sub);
// Drop every tuple not contained in a single E-class.
FinStructure restrict_to_classes(const FinStructure& A, const FinER& E);
// Structure of A on the class of E containing point index i, as its own structure.
FinStructure class_structure(const StructuredER& A, std::size_t i);

// R^{f(A)}(y) iff R^A(f^{-1}(y)). f maps A's universe bijectively onto target.
FinStructure pushforward(const FinStructure& A, const std::map<Point, Point>& f);
FinStructure pushforward(const FinStructure& A, const std::vector<Point>& target,
                         const std::vector<std::size_t>& f);
// R(x) iff R^A(f(x)); f maps domain points into A's universe (by index).
FinStructure pullback(const FinStructure& A, const std::vector<Point>& domain,
                      const std::vector<std::size_t>& f);
// f : E -> F class-bijective, A a structure on F's points.
StructuredER classwise_pullback(const FinStructure& A, const PointMap& f);

// Isomorphism search. Bijections are index maps A -> B.
std::optional<std::vector<std::size_t>> isomorphic(const FinStructure& A, const FinStructure& B);
void for_each_isomorphism(const FinStructure& A, const FinStructure& B,
                          const std::vector<std::optional<std::size_t>>& fixed,
                          const std::function<bool(const std::vector<std::size_t>&)>& visit);
std::vector<std::vector<std::size_t>> aut_group(const FinStructure& A);
// Orbits of the pointwise stabilizer of F in Aut(A), blocks ordered by least point.
std::vector<std::vector<Point>> stabilizer_orbits(const FinStructure& A, const std::vector<Point>& F);

// Relabel onto "0".."n-1" minimizing the relation bits.
FinStructure canonical_form(const FinStructure& A);

// Witness G (listed as the images of F in order) disjoint from F with
// (A|sub)|F isomorphic to (A|sub)|G via the listed correspondence.
std::optional<std::vector<Point>> wdp_check(const FinStructure& A, const Language& sub,
                                            const std::vector<Point>& F);

struct WdpRow {
  Language sublanguage;
  std::vector<Point> F;
  std::optional<std::vector<Point>> witness;
};
struct WdpTable {
  std::size_t f_max = 0;
  bool full_language_only = false;
  std::vector<WdpRow> rows;
  bool holds() const;
  const WdpRow* first_failure() const;
};
// Every sublanguage (or only the full one) and every F with 1 <= |F| <= f_max.
WdpTable wdp_upto(const FinStructure& A, std::size_t f_max, bool full_language_only = false);

// Isomorphism types of n-point induced substructures, as canonical forms.
std::vector<FinStructure> age(const FinStructure& A, std::size_t n);

}  // namespace structo

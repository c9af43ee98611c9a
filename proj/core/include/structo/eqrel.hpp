#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace structo {

using Point = std::string;

// Equivalence relation on a finite set of named points, stored as a partition.
// Points are kept in lexicographic order and addressed by index; blocks are
// sorted internally and ordered by their least point.
class FinER {
 public:
  FinER() = default;
  FinER(std::vector<Point> points, const std::vector<std::vector<Point>>& blocks);

  // labels[i] is the block label of points[i]; equal labels share a block.
  static FinER from_labels(std::vector<Point> points, const std::vector<std::size_t>& labels);
  static FinER discrete(std::vector<Point> points);
  static FinER indiscrete(std::vector<Point> points);
  static FinER delta(std::size_t n);  // on "0".."n-1"
  static FinER full(std::size_t n);   // one class on "0".."n-1"
  // Canonical points, consecutive blocks of the given sizes.
  static FinER from_class_sizes(const std::vector<std::size_t>& sizes);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<Point>& points() const { return points_; }
  const Point& point(std::size_t i) const { return points_[i]; }
  std::optional<std::size_t> find(const Point& p) const;
  std::size_t index(const Point& p) const;  // throws input_error

  std::size_t num_classes() const { return classes_.size(); }
  const std::vector<std::vector<std::size_t>>& classes() const { return classes_; }
  std::size_t class_of(std::size_t i) const { return class_of_[i]; }
  const std::vector<std::size_t>& class_members(std::size_t i) const {
    return classes_[class_of_[i]];
  }
  bool related(std::size_t i, std::size_t j) const { return class_of_[i] == class_of_[j]; }
  std::size_t class_size(std::size_t i) const { return classes_[class_of_[i]].size(); }

  std::vector<std::vector<Point>> named_classes() const;
  // Sorted ascending.
  std::vector<std::size_t> class_sizes() const;

  bool operator==(const FinER& other) const {
    return points_ == other.points_ && classes_ == other.classes_;
  }

 private:
  void build_from_labels(const std::vector<std::size_t>& labels);

  std::vector<Point> points_;
  std::map<Point, std::size_t> index_;
  std::vector<std::vector<std::size_t>> classes_;
  std::vector<std::size_t> class_of_;
};

// Total function between the point sets of two relations, addressed by index.
class PointMap {
 public:
  PointMap() = default;
  PointMap(FinER domain, FinER codomain, std::vector<std::size_t> images);
  PointMap(std::shared_ptr<const FinER> domain, std::shared_ptr<const FinER> codomain,
           std::vector<std::size_t> images);
  static PointMap from_names(FinER domain, FinER codomain, const std::map<Point, Point>& map);

  const FinER& domain() const { return *dom_; }
  const FinER& codomain() const { return *cod_; }
  const std::shared_ptr<const FinER>& domain_ptr() const { return dom_; }
  const std::shared_ptr<const FinER>& codomain_ptr() const { return cod_; }
  std::size_t operator()(std::size_t i) const { return img_[i]; }
  const std::vector<std::size_t>& images() const { return img_; }
  const Point& image(const Point& p) const { return cod_->point(img_[dom_->index(p)]); }
  std::map<Point, Point> named() const;

  bool operator==(const PointMap& other) const {
    return *dom_ == *other.dom_ && *cod_ == *other.cod_ && img_ == other.img_;
  }

 private:
  std::shared_ptr<const FinER> dom_ = std::make_shared<FinER>();
  std::shared_ptr<const FinER> cod_ = std::make_shared<FinER>();
  std::vector<std::size_t> img_;
};

PointMap identity_map(const FinER& E);
// g after f; requires f.codomain() == g.domain().
PointMap compose(const PointMap& g, const PointMap& f);

enum class HomFlag : unsigned {
  Hom = 1u << 0,
  Reduction = 1u << 1,
  ClassInjective = 1u << 2,
  ClassSurjective = 1u << 3,
  ClassBijective = 1u << 4,
  Embedding = 1u << 5,
  InvariantEmbedding = 1u << 6,
  Smooth = 1u << 7,
};

// Set of homomorphism flags. Every flag implies Hom; Smooth equals Hom.
class HomClass {
 public:
  constexpr HomClass() = default;
  constexpr explicit HomClass(unsigned bits) : bits_(bits) {}
  HomClass(std::initializer_list<HomFlag> flags);

  bool has(HomFlag f) const { return (bits_ & static_cast<unsigned>(f)) != 0; }
  bool contains(HomClass other) const { return (bits_ & other.bits_) == other.bits_; }
  unsigned bits() const { return bits_; }
  bool empty() const { return bits_ == 0; }
  HomClass operator|(HomClass o) const { return HomClass(bits_ | o.bits_); }
  bool operator==(const HomClass&) const = default;

  // Names in canonical flag order, e.g. "hom,class-injective,smooth".
  std::string to_string() const;
  static HomClass parse(const std::string& text);  // comma separated names or aliases

 private:
  unsigned bits_ = 0;
};

const char* flag_name(HomFlag f);

HomClass classify_hom(const PointMap& f);
bool is_injective(const PointMap& f);
bool is_surjective(const PointMap& f);
// Bijective reduction.
bool is_isomorphism(const PointMap& f);
// Every codomain class meets the image.
bool has_complete_section_image(const PointMap& f);

// Calls visit(images) for each total map E -> F whose classification contains
// kind, in lexicographic order of image vectors, until visit returns false.
void for_each_hom(const FinER& E, const FinER& F, HomClass kind,
                  const std::function<bool(const std::vector<std::size_t>&)>& visit);
std::vector<PointMap> enumerate_homs(const FinER& E, const FinER& F, HomClass kind);
std::size_t count_homs(const FinER& E, const FinER& F, HomClass kind);

struct SumResult {
  FinER sum;
  std::vector<PointMap> injections;
};
// Points "(i,p)" for p in the i-th summand.
SumResult disjoint_sum(const std::vector<FinER>& Es);

struct ProductResult {
  FinER product;
  PointMap pi1, pi2;
};
// Points "(x,y)"; (x,y) ~ (x',y') iff x E x' and y F y'.
ProductResult cross_product(const FinER& E, const FinER& F);
// f : F -> E, g : G -> E. Points "(y,z)" with f(y) = g(z).
ProductResult fiber_product(const PointMap& f, const PointMap& g);

struct JoinResult {
  bool independent = false;
  FinER join;
};
bool independent(const std::vector<FinER>& Es);
JoinResult independent_join(const std::vector<FinER>& Es);
// Smallest equivalence relation containing every E_i (shared point set).
FinER join(const std::vector<FinER>& Es);
// Intersection of two relations on the same point set.
FinER meet(const FinER& E, const FinER& D);
// E ∩ ker f on the domain of f.
FinER kernel_meet(const PointMap& f);
bool is_subrelation(const FinER& D, const FinER& E);

struct QuotientResult {
  FinER quotient;
  PointMap projection;
};
// Points of the quotient are D-blocks named by their least member.
QuotientResult quotient_by_subrelation(const FinER& E, const FinER& D);

// Restriction of E to a subset of point indices.
FinER restrict_to(const FinER& E, const std::vector<std::size_t>& subset);

// Some isomorphism E -> F (class-size matching in canonical order), if any.
std::optional<PointMap> find_isomorphism(const FinER& E, const FinER& F);

}  // namespace structo

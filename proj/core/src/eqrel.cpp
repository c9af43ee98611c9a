#include "structo/eqrel.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "structo/error.hpp"
#include "structo/util.hpp"

namespace structo {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

void require_same_points(const FinER& a, const FinER& b, const char* what) {
  if (a.points() != b.points()) throw input_error(std::string(what) + ": relations live on different point sets");
}

}  // namespace

// ---------------------------------------------------------------- FinER

FinER::FinER(std::vector<Point> points, const std::vector<std::vector<Point>>& blocks) {
  std::sort(points.begin(), points.end());
  if (std::adjacent_find(points.begin(), points.end()) != points.end())
    throw input_error("duplicate point '" + *std::adjacent_find(points.begin(), points.end()) + "'");
  points_ = std::move(points);
  for (std::size_t i = 0; i < points_.size(); ++i) index_.emplace(points_[i], i);
  std::vector<std::size_t> labels(points_.size(), static_cast<std::size_t>(-1));
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw input_error("empty class");
    for (const Point& p : blocks[b]) {
      auto it = index_.find(p);
      if (it == index_.end()) throw input_error("class mentions unknown point '" + p + "'");
      if (labels[it->second] != static_cast<std::size_t>(-1))
        throw input_error("point '" + p + "' appears in more than one class");
      labels[it->second] = b;
    }
  }
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == static_cast<std::size_t>(-1))
      throw input_error("point '" + points_[i] + "' belongs to no class");
  build_from_labels(labels);
}

FinER FinER::from_labels(std::vector<Point> points, const std::vector<std::size_t>& labels) {
  if (points.size() != labels.size()) throw input_error("label count does not match point count");
  std::map<std::size_t, std::vector<Point>> blocks;
  for (std::size_t i = 0; i < points.size(); ++i) blocks[labels[i]].push_back(points[i]);
  std::vector<std::vector<Point>> bl;
  for (auto& [_, b] : blocks) bl.push_back(std::move(b));
  return FinER(std::move(points), bl);
}

FinER FinER::discrete(std::vector<Point> points) {
  std::vector<std::size_t> labels(points.size());
  std::iota(labels.begin(), labels.end(), 0);
  return from_labels(std::move(points), labels);
}

FinER FinER::indiscrete(std::vector<Point> points) {
  std::vector<std::size_t> labels(points.size(), 0);
  return from_labels(std::move(points), labels);
}

FinER FinER::delta(std::size_t n) { return discrete(canonical_points(n)); }
FinER FinER::full(std::size_t n) { return indiscrete(canonical_points(n)); }

FinER FinER::from_class_sizes(const std::vector<std::size_t>& sizes) {
  std::size_t n = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
  std::vector<std::size_t> labels;
  for (std::size_t b = 0; b < sizes.size(); ++b) labels.insert(labels.end(), sizes[b], b);
  return from_labels(canonical_points(n), labels);
}

void FinER::build_from_labels(const std::vector<std::size_t>& labels) {
  std::map<std::size_t, std::size_t> first_seen;  // label -> class id in order of least member
  class_of_.assign(points_.size(), 0);
  classes_.clear();
  for (std::size_t i = 0; i < points_.size(); ++i) {
    auto [it, fresh] = first_seen.emplace(labels[i], classes_.size());
    if (fresh) classes_.emplace_back();
    classes_[it->second].push_back(i);
    class_of_[i] = it->second;
  }
}

std::optional<std::size_t> FinER::find(const Point& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FinER::index(const Point& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) throw input_error("unknown point '" + p + "'");
  return it->second;
}

std::vector<std::vector<Point>> FinER::named_classes() const {
  std::vector<std::vector<Point>> out;
  for (const auto& c : classes_) {
    std::vector<Point> b;
    for (std::size_t i : c) b.push_back(points_[i]);
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<std::size_t> FinER::class_sizes() const {
  std::vector<std::size_t> s;
  for (const auto& c : classes_) s.push_back(c.size());
  std::sort(s.begin(), s.end());
  return s;
}

// ---------------------------------------------------------------- PointMap

PointMap::PointMap(FinER domain, FinER codomain, std::vector<std::size_t> images)
    : PointMap(std::make_shared<const FinER>(std::move(domain)),
               std::make_shared<const FinER>(std::move(codomain)), std::move(images)) {}

PointMap::PointMap(std::shared_ptr<const FinER> domain, std::shared_ptr<const FinER> codomain,
                   std::vector<std::size_t> images)
    : dom_(std::move(domain)), cod_(std::move(codomain)), img_(std::move(images)) {
  if (img_.size() != dom_->size()) throw input_error("map is not total on its domain");
  for (std::size_t v : img_)
    if (v >= cod_->size()) throw input_error("map image outside codomain");
}

PointMap PointMap::from_names(FinER domain, FinER codomain, const std::map<Point, Point>& map) {
  std::vector<std::size_t> img(domain.size(), static_cast<std::size_t>(-1));
  for (const auto& [a, b] : map) {
    auto ia = domain.find(a);
    if (!ia) throw input_error("map references unknown domain point '" + a + "'");
    auto ib = codomain.find(b);
    if (!ib) throw input_error("map references unknown codomain point '" + b + "'");
    img[*ia] = *ib;
  }
  for (std::size_t i = 0; i < img.size(); ++i)
    if (img[i] == static_cast<std::size_t>(-1))
      throw input_error("map has no image for point '" + domain.point(i) + "'");
  return PointMap(std::move(domain), std::move(codomain), std::move(img));
}

std::map<Point, Point> PointMap::named() const {
  std::map<Point, Point> out;
  for (std::size_t i = 0; i < img_.size(); ++i) out[dom_->point(i)] = cod_->point(img_[i]);
  return out;
}

PointMap identity_map(const FinER& E) {
  auto p = std::make_shared<const FinER>(E);
  std::vector<std::size_t> img(E.size());
  std::iota(img.begin(), img.end(), 0);
  return PointMap(p, p, std::move(img));
}

PointMap compose(const PointMap& g, const PointMap& f) {
  if (!(f.codomain() == g.domain())) throw input_error("compose: maps are not composable");
  std::vector<std::size_t> img(f.domain().size());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = g(f(i));
  return PointMap(f.domain_ptr(), g.codomain_ptr(), std::move(img));
}

// ---------------------------------------------------------------- HomClass

namespace {
constexpr HomFlag kAllFlags[] = {HomFlag::Hom,          HomFlag::Reduction,
                                 HomFlag::ClassInjective, HomFlag::ClassSurjective,
                                 HomFlag::ClassBijective, HomFlag::Embedding,
                                 HomFlag::InvariantEmbedding, HomFlag::Smooth};
}

HomClass::HomClass(std::initializer_list<HomFlag> flags) {
  for (HomFlag f : flags) bits_ |= static_cast<unsigned>(f);
}

const char* flag_name(HomFlag f) {
  switch (f) {
    case HomFlag::Hom: return "hom";
    case HomFlag::Reduction: return "reduction";
    case HomFlag::ClassInjective: return "class-injective";
    case HomFlag::ClassSurjective: return "class-surjective";
    case HomFlag::ClassBijective: return "class-bijective";
    case HomFlag::Embedding: return "embedding";
    case HomFlag::InvariantEmbedding: return "invariant-embedding";
    case HomFlag::Smooth: return "smooth";
  }
  return "?";
}

std::string HomClass::to_string() const {
  std::vector<std::string> names;
  for (HomFlag f : kAllFlags)
    if (has(f)) names.emplace_back(flag_name(f));
  return join(names, ",");
}

HomClass HomClass::parse(const std::string& text) {
  static const std::map<std::string, HomFlag> names = {
      {"hom", HomFlag::Hom},
      {"reduction", HomFlag::Reduction},
      {"red", HomFlag::Reduction},
      {"class-injective", HomFlag::ClassInjective},
      {"ci", HomFlag::ClassInjective},
      {"class-surjective", HomFlag::ClassSurjective},
      {"cs", HomFlag::ClassSurjective},
      {"class-bijective", HomFlag::ClassBijective},
      {"cb", HomFlag::ClassBijective},
      {"embedding", HomFlag::Embedding},
      {"emb", HomFlag::Embedding},
      {"invariant-embedding", HomFlag::InvariantEmbedding},
      {"inv-emb", HomFlag::InvariantEmbedding},
      {"smooth", HomFlag::Smooth},
      {"sm", HomFlag::Smooth},
  };
  HomClass out;
  std::string cur;
  auto flush = [&] {
    std::string t = trim(cur);
    cur.clear();
    if (t.empty()) return;
    auto it = names.find(t);
    if (it == names.end()) throw input_error("unknown homomorphism flag '" + t + "'");
    out = out | HomClass{it->second};
  };
  for (char c : text) {
    if (c == ',' || c == '+' || c == ' ') flush();
    else cur += c;
  }
  flush();
  return out;
}

// ---------------------------------------------------------------- classification

bool is_injective(const PointMap& f) {
  std::vector<bool> seen(f.codomain().size(), false);
  for (std::size_t v : f.images()) {
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

bool is_surjective(const PointMap& f) {
  std::vector<bool> seen(f.codomain().size(), false);
  for (std::size_t v : f.images()) seen[v] = true;
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

HomClass classify_hom(const PointMap& f) {
  const FinER& E = f.domain();
  const FinER& F = f.codomain();
  for (const auto& c : E.classes())
    for (std::size_t i : c)
      if (!F.related(f(i), f(c.front()))) return HomClass{};

  bool reduction = true;
  for (std::size_t i = 0; i < E.size() && reduction; ++i)
    for (std::size_t j = i + 1; j < E.size(); ++j)
      if (F.related(f(i), f(j)) && !E.related(i, j)) {
        reduction = false;
        break;
      }

  bool ci = true, cs = true;
  for (const auto& c : E.classes()) {
    std::set<std::size_t> img;
    for (std::size_t i : c) img.insert(f(i));
    if (img.size() != c.size()) ci = false;
    if (img.size() != F.class_size(f(c.front()))) cs = false;
  }
  bool injective = is_injective(f);

  HomClass out{HomFlag::Hom, HomFlag::Smooth};
  if (reduction) out = out | HomClass{HomFlag::Reduction};
  if (ci) out = out | HomClass{HomFlag::ClassInjective};
  if (cs) out = out | HomClass{HomFlag::ClassSurjective};
  if (ci && cs) out = out | HomClass{HomFlag::ClassBijective};
  if (injective && reduction) out = out | HomClass{HomFlag::Embedding};
  if (injective && reduction && ci && cs) out = out | HomClass{HomFlag::InvariantEmbedding};
  return out;
}

bool is_isomorphism(const PointMap& f) {
  return is_injective(f) && is_surjective(f) && classify_hom(f).has(HomFlag::Reduction);
}

bool has_complete_section_image(const PointMap& f) {
  std::vector<bool> hit(f.codomain().num_classes(), false);
  for (std::size_t v : f.images()) hit[f.codomain().class_of(v)] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

// ---------------------------------------------------------------- enumeration

void for_each_hom(const FinER& E, const FinER& F, HomClass kind,
                  const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  const unsigned k = kind.bits();
  auto any = [k](std::initializer_list<HomFlag> fs) {
    for (HomFlag f : fs)
      if (k & static_cast<unsigned>(f)) return true;
    return false;
  };
  const bool need_hom = k != 0;
  const bool need_red = any({HomFlag::Reduction, HomFlag::Embedding, HomFlag::InvariantEmbedding});
  const bool need_ci = any({HomFlag::ClassInjective, HomFlag::ClassBijective, HomFlag::InvariantEmbedding});
  const bool need_inj = any({HomFlag::Embedding, HomFlag::InvariantEmbedding});

  const std::size_t n = E.size();
  const auto dom = std::make_shared<const FinER>(E);
  const auto cod = std::make_shared<const FinER>(F);
  std::vector<std::size_t> img(n, 0);
  bool stop = false;

  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (stop) return;
    if (i == n) {
      if (k != 0 && !classify_hom(PointMap(dom, cod, img)).contains(kind)) return;
      if (!visit(img)) stop = true;
      return;
    }
    for (std::size_t v = 0; v < F.size() && !stop; ++v) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        const bool er = E.related(i, j);
        const bool fr = F.related(v, img[j]);
        if (need_hom && er && !fr) ok = false;
        else if (need_red && fr && !er) ok = false;
        else if (need_ci && er && v == img[j]) ok = false;
        else if (need_inj && v == img[j]) ok = false;
      }
      if (!ok) continue;
      img[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
}

std::vector<PointMap> enumerate_homs(const FinER& E, const FinER& F, HomClass kind) {
  std::vector<PointMap> out;
  const auto dom = std::make_shared<const FinER>(E);
  const auto cod = std::make_shared<const FinER>(F);
  for_each_hom(E, F, kind, [&](const std::vector<std::size_t>& img) {
    out.emplace_back(dom, cod, img);
    return true;
  });
  return out;
}

std::size_t count_homs(const FinER& E, const FinER& F, HomClass kind) {
  std::size_t n = 0;
  for_each_hom(E, F, kind, [&](const std::vector<std::size_t>&) {
    ++n;
    return true;
  });
  return n;
}

// ---------------------------------------------------------------- sums and products

SumResult disjoint_sum(const std::vector<FinER>& Es) {
  std::vector<Point> pts;
  std::vector<std::vector<Point>> blocks;
  for (std::size_t i = 0; i < Es.size(); ++i) {
    const std::string tag = std::to_string(i);
    for (const Point& p : Es[i].points()) pts.push_back(tuple_name({tag, p}));
    for (const auto& c : Es[i].named_classes()) {
      std::vector<Point> b;
      for (const Point& p : c) b.push_back(tuple_name({tag, p}));
      blocks.push_back(std::move(b));
    }
  }
  SumResult out{FinER(pts, blocks), {}};
  auto sum = std::make_shared<const FinER>(out.sum);
  for (std::size_t i = 0; i < Es.size(); ++i) {
    const std::string tag = std::to_string(i);
    std::vector<std::size_t> img;
    for (const Point& p : Es[i].points()) img.push_back(sum->index(tuple_name({tag, p})));
    out.injections.emplace_back(std::make_shared<const FinER>(Es[i]), sum, std::move(img));
  }
  return out;
}

ProductResult cross_product(const FinER& E, const FinER& F) {
  std::vector<Point> pts;
  std::vector<std::size_t> labels;
  for (std::size_t x = 0; x < E.size(); ++x)
    for (std::size_t y = 0; y < F.size(); ++y) {
      pts.push_back(tuple_name({E.point(x), F.point(y)}));
      labels.push_back(E.class_of(x) * std::max<std::size_t>(F.num_classes(), 1) + F.class_of(y));
    }
  FinER prod = FinER::from_labels(pts, labels);
  auto P = std::make_shared<const FinER>(prod);
  std::vector<std::size_t> i1(P->size()), i2(P->size());
  for (std::size_t x = 0; x < E.size(); ++x)
    for (std::size_t y = 0; y < F.size(); ++y) {
      std::size_t z = P->index(tuple_name({E.point(x), F.point(y)}));
      i1[z] = x;
      i2[z] = y;
    }
  return {prod, PointMap(P, std::make_shared<const FinER>(E), i1),
          PointMap(P, std::make_shared<const FinER>(F), i2)};
}

ProductResult fiber_product(const PointMap& f, const PointMap& g) {
  if (!(f.codomain() == g.codomain())) throw input_error("fiber product: maps have different codomains");
  const FinER& F = f.domain();
  const FinER& G = g.domain();
  std::vector<Point> pts;
  std::vector<std::size_t> labels;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  const std::size_t gc = std::max<std::size_t>(G.num_classes(), 1);
  for (std::size_t y = 0; y < F.size(); ++y)
    for (std::size_t z = 0; z < G.size(); ++z)
      if (f(y) == g(z)) {
        pts.push_back(tuple_name({F.point(y), G.point(z)}));
        labels.push_back(F.class_of(y) * gc + G.class_of(z));
        pairs.emplace_back(y, z);
      }
  FinER prod = FinER::from_labels(pts, labels);
  auto P = std::make_shared<const FinER>(prod);
  std::vector<std::size_t> i1(P->size()), i2(P->size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    std::size_t z = P->index(pts[k]);
    i1[z] = pairs[k].first;
    i2[z] = pairs[k].second;
  }
  return {prod, PointMap(P, f.domain_ptr(), i1), PointMap(P, g.domain_ptr(), i2)};
}

// ---------------------------------------------------------------- joins

bool independent(const std::vector<FinER>& Es) {
  if (Es.empty()) return true;
  for (const FinER& E : Es) require_same_points(Es.front(), E, "independent");
  // Point-block incidence graph must be a forest.
  std::size_t nodes = Es.front().size();
  for (const FinER& E : Es)
    for (const auto& c : E.classes())
      if (c.size() > 1) ++nodes;
  UnionFind uf(nodes);
  std::size_t next = Es.front().size();
  for (const FinER& E : Es)
    for (const auto& c : E.classes()) {
      if (c.size() < 2) continue;
      const std::size_t b = next++;
      for (std::size_t p : c)
        if (!uf.unite(b, p)) return false;
    }
  return true;
}

FinER join(const std::vector<FinER>& Es) {
  if (Es.empty()) return FinER();
  for (const FinER& E : Es) require_same_points(Es.front(), E, "join");
  UnionFind uf(Es.front().size());
  for (const FinER& E : Es)
    for (const auto& c : E.classes())
      for (std::size_t p : c) uf.unite(c.front(), p);
  std::vector<std::size_t> labels(Es.front().size());
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = uf.find(i);
  return FinER::from_labels(Es.front().points(), labels);
}

JoinResult independent_join(const std::vector<FinER>& Es) {
  return {independent(Es), join(Es)};
}

FinER meet(const FinER& E, const FinER& D) {
  require_same_points(E, D, "meet");
  std::vector<std::size_t> labels(E.size());
  for (std::size_t i = 0; i < E.size(); ++i) labels[i] = E.class_of(i) * std::max<std::size_t>(D.num_classes(), 1) + D.class_of(i);
  return FinER::from_labels(E.points(), labels);
}

FinER kernel_meet(const PointMap& f) {
  const FinER& E = f.domain();
  std::vector<std::size_t> labels(E.size());
  for (std::size_t i = 0; i < E.size(); ++i) labels[i] = E.class_of(i) * std::max<std::size_t>(f.codomain().size(), 1) + f(i);
  return FinER::from_labels(E.points(), labels);
}

bool is_subrelation(const FinER& D, const FinER& E) {
  if (D.points() != E.points()) return false;
  for (const auto& c : D.classes())
    for (std::size_t p : c)
      if (!E.related(p, c.front())) return false;
  return true;
}

QuotientResult quotient_by_subrelation(const FinER& E, const FinER& D) {
  require_same_points(E, D, "quotient");
  if (!is_subrelation(D, E)) throw input_error("quotient: D is not contained in E");
  std::vector<Point> pts;
  std::vector<std::size_t> labels;
  for (const auto& c : D.classes()) {
    pts.push_back(D.point(c.front()));
    labels.push_back(E.class_of(c.front()));
  }
  FinER Q = FinER::from_labels(pts, labels);
  auto q = std::make_shared<const FinER>(Q);
  std::vector<std::size_t> img(E.size());
  for (std::size_t i = 0; i < E.size(); ++i) img[i] = q->index(D.point(D.class_members(i).front()));
  return {Q, PointMap(std::make_shared<const FinER>(E), q, std::move(img))};
}

FinER restrict_to(const FinER& E, const std::vector<std::size_t>& subset) {
  std::vector<Point> pts;
  std::vector<std::size_t> labels;
  for (std::size_t i : subset) {
    pts.push_back(E.point(i));
    labels.push_back(E.class_of(i));
  }
  return FinER::from_labels(pts, labels);
}

std::optional<PointMap> find_isomorphism(const FinER& E, const FinER& F) {
  if (E.size() != F.size() || E.class_sizes() != F.class_sizes()) return std::nullopt;
  auto order = [](const FinER& R) {
    std::vector<std::size_t> ids(R.num_classes());
    std::iota(ids.begin(), ids.end(), 0);
    std::stable_sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
      return R.classes()[a].size() < R.classes()[b].size();
    });
    return ids;
  };
  auto oe = order(E), of = order(F);
  std::vector<std::size_t> img(E.size());
  for (std::size_t k = 0; k < oe.size(); ++k) {
    const auto& ce = E.classes()[oe[k]];
    const auto& cf = F.classes()[of[k]];
    for (std::size_t t = 0; t < ce.size(); ++t) img[ce[t]] = cf[t];
  }
  return PointMap(E, F, std::move(img));
}

}  // namespace structo

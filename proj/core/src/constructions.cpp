#include "structo/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "structo/error.hpp"

namespace structo {

namespace {

std::size_t position_in(const std::vector<std::size_t>& sorted, std::size_t v) {
  return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
}

}  // namespace

// ---------------------------------------------------------------- ltimes

std::size_t LtimesResult::point_index(std::size_t x, std::size_t j) const {
  return space.index(tuple_name({base.point(x), std::to_string(j)}));
}

LtimesResult ltimes(const FinER& E, const Theory& T) {
  LtimesResult R;
  R.base = E;
  R.theory = T;
  std::vector<Point> names;
  std::vector<std::size_t> labels;
  std::size_t label = 0;
  for (std::size_t c = 0; c < E.num_classes(); ++c) {
    std::vector<Point> cls;
    for (std::size_t x : E.classes()[c]) cls.push_back(E.point(x));
    R.models.push_back(models(T, cls));
    if (R.models.back().empty()) R.empty_classes.push_back(c);
    for (std::size_t j = 0; j < R.models.back().size(); ++j, ++label)
      for (std::size_t x : E.classes()[c]) {
        names.push_back(tuple_name({E.point(x), std::to_string(j)}));
        labels.push_back(label);
      }
  }
  R.space = FinER::from_labels(names, labels);
  std::vector<std::size_t> proj(R.space.size());
  FinStructure S(T.language, R.space.points());
  for (std::size_t c = 0; c < E.num_classes(); ++c) {
    const auto& members = E.classes()[c];
    for (std::size_t j = 0; j < R.models[c].size(); ++j) {
      std::vector<std::size_t> lift(members.size());
      for (std::size_t k = 0; k < members.size(); ++k) {
        lift[k] = R.point_index(members[k], j);
        proj[lift[k]] = members[k];
      }
      const FinStructure& B = R.models[c][j];
      for (std::size_t s = 0; s < T.language.size(); ++s)
        for (auto t : B.tuples(s)) {
          for (std::size_t& v : t) v = lift[v];
          S.set(s, t, true);
        }
    }
  }
  R.projection = PointMap(R.space, E, proj);
  R.structure = StructuredER(R.space, std::move(S));
  return R;
}

PointMap ltimes_universal_map(const LtimesResult& R, const PointMap& f, const StructuredER& A) {
  if (!(f.codomain() == R.base)) throw input_error("map does not land in the base relation");
  if (!(f.domain() == A.er)) throw input_error("structure does not live on the map's domain");
  if (!(A.structure.language() == R.theory.language)) throw input_error("structure language differs from the theory's");
  if (!classify_hom(f).has(HomFlag::ClassBijective)) throw input_error("map is not class-bijective");
  const FinER& F = f.domain();
  std::vector<std::size_t> img(F.size());
  for (const auto& cls : F.classes()) {
    std::map<Point, Point> rename;
    for (std::size_t y : cls) rename[F.point(y)] = R.base.point(f(y));
    const FinStructure pushed = pushforward(restrict_structure(A.structure, cls), rename);
    const std::size_t c = R.base.class_of(f(cls.front()));
    const auto& ms = R.models[c];
    auto it = std::find(ms.begin(), ms.end(), pushed);
    if (it == ms.end()) throw input_error("structure is not a model of the theory on class of '" + F.point(cls.front()) + "'");
    const std::size_t j = static_cast<std::size_t>(it - ms.begin());
    for (std::size_t y : cls) img[y] = R.point_index(f(y), j);
  }
  PointMap lifted(F, R.space, img);
  // Both equations: π∘f̃ = f and A = f̃^{-1}(𝔈).
  if (!(compose(R.projection, lifted) == f)) throw contract_error("ltimes lift does not cover f");
  if (!(classwise_pullback(R.structure.structure, lifted).structure == A.structure))
    throw contract_error("ltimes lift does not pull back the structure");
  return lifted;
}

// ---------------------------------------------------------------- tensor

TensorResult tensor(const FinER& E, const FinER& F) {
  std::vector<Point> names;
  std::vector<std::size_t> labels;
  std::vector<std::pair<std::size_t, std::size_t>> proj;
  std::size_t label = 0;
  for (const auto& C : E.classes())
    for (const auto& D : F.classes()) {
      if (C.size() != D.size()) continue;
      Perm p = identity_perm(C.size());
      do {
        const std::string pn = perm_name(p);
        for (std::size_t i = 0; i < C.size(); ++i) {
          names.push_back(tuple_name({E.point(C[i]), F.point(D[p[i]]), pn}));
          labels.push_back(label);
          proj.emplace_back(C[i], D[p[i]]);
        }
        ++label;
      } while (std::next_permutation(p.begin(), p.end()));
    }
  TensorResult out;
  out.product = FinER::from_labels(names, labels);
  std::vector<std::size_t> p1(names.size()), p2(names.size());
  for (std::size_t k = 0; k < names.size(); ++k) {
    const std::size_t i = out.product.index(names[k]);
    p1[i] = proj[k].first;
    p2[i] = proj[k].second;
  }
  auto prod = std::make_shared<const FinER>(out.product);
  out.pi1 = PointMap(prod, std::make_shared<const FinER>(E), p1);
  out.pi2 = PointMap(prod, std::make_shared<const FinER>(F), p2);
  return out;
}

PointMap pairing(const TensorResult& T, const PointMap& f, const PointMap& g) {
  if (!(f.domain() == g.domain())) throw input_error("pairing: maps have different domains");
  if (!(f.codomain() == T.pi1.codomain()) || !(g.codomain() == T.pi2.codomain()))
    throw input_error("pairing: maps do not land in the tensor factors");
  if (!classify_hom(f).has(HomFlag::ClassBijective) || !classify_hom(g).has(HomFlag::ClassBijective))
    throw input_error("pairing: both maps must be class-bijective");
  const FinER& G = f.domain();
  const FinER& E = f.codomain();
  const FinER& F = g.codomain();
  std::vector<std::size_t> img(G.size());
  for (const auto& W : G.classes()) {
    const auto& C = E.class_members(f(W.front()));
    const auto& D = F.class_members(g(W.front()));
    Perm p(C.size());
    for (std::size_t w : W) p[position_in(C, f(w))] = position_in(D, g(w));
    const std::string pn = perm_name(p);
    for (std::size_t w : W) img[w] = T.product.index(tuple_name({E.point(f(w)), F.point(g(w)), pn}));
  }
  return PointMap(G, T.product, img);
}

std::size_t tensor_class_count(const FinER& E, const FinER& F) {
  std::size_t total = 0;
  for (const auto& C : E.classes())
    for (const auto& D : F.classes())
      if (C.size() == D.size()) total += factorial(C.size());
  return total;
}

TensorCrossReport tensor_vs_cross(const FinER& E, const FinER& F) {
  const TensorResult T = tensor(E, F);
  const ProductResult X = cross_product(E, F);
  std::vector<std::size_t> img(T.product.size());
  for (std::size_t i = 0; i < img.size(); ++i)
    img[i] = X.product.index(tuple_name({E.point(T.pi1(i)), F.point(T.pi2(i))}));
  TensorCrossReport r;
  r.map = PointMap(T.product, X.product, img);
  r.classification = classify_hom(r.map);
  r.surjective = is_surjective(r.map);
  r.injective = is_injective(r.map);
  r.isomorphism = is_isomorphism(r.map);
  std::set<std::size_t> sizes;
  for (std::size_t s : E.class_sizes()) sizes.insert(s);
  for (std::size_t s : F.class_sizes()) sizes.insert(s);
  r.uniform_sizes = sizes.size() <= 1;
  return r;
}

// ---------------------------------------------------------------- cocycles

const Perm& Cocycle::operator()(std::size_t x, std::size_t y) const {
  auto it = alpha.find({x, y});
  if (it == alpha.end())
    throw input_error("cocycle has no value at (" + base.point(x) + "," + base.point(y) + ")");
  return it->second;
}

bool Cocycle::uniform() const {
  return std::adjacent_find(fiber.begin(), fiber.end(), std::not_equal_to<>()) == fiber.end();
}

void Cocycle::validate() const {
  if (fiber.size() != base.size()) throw input_error("cocycle fiber sizes do not cover the base");
  for (const auto& [key, p] : alpha) {
    if (key.first >= base.size() || key.second >= base.size() || !base.related(key.first, key.second))
      throw input_error("cocycle value on an unrelated pair");
    if (!is_perm(p) || p.size() != fiber[key.first])
      throw input_error("cocycle value at (" + base.point(key.first) + "," + base.point(key.second) +
                        ") is not a permutation of the fiber");
  }
  for (const auto& C : base.classes()) {
    for (std::size_t x : C)
      if (fiber[x] != fiber[C.front()]) throw input_error("fiber sizes differ within the class of '" + base.point(x) + "'");
    for (std::size_t x : C) {
      if ((*this)(x, x) != identity_perm(fiber[x]))
        throw input_error("cocycle is not the identity at (" + base.point(x) + "," + base.point(x) + ")");
      for (std::size_t y : C)
        for (std::size_t z : C)
          if (compose((*this)(y, z), (*this)(x, y)) != (*this)(x, z))
            throw input_error("cocycle identity fails at (" + base.point(x) + "," + base.point(y) + "," +
                              base.point(z) + ")");
    }
  }
}

Cocycle Cocycle::trivial(const FinER& base, std::size_t n) {
  Cocycle a;
  a.base = base;
  a.fiber.assign(base.size(), n);
  for (const auto& C : base.classes())
    for (std::size_t x : C)
      for (std::size_t y : C) a.alpha[{x, y}] = identity_perm(n);
  return a;
}

SkewResult skew_product(const Cocycle& alpha) {
  alpha.validate();
  const FinER& E = alpha.base;
  std::vector<Point> names;
  std::vector<std::size_t> labels, proj;
  std::size_t offset = 0;
  for (const auto& C : E.classes()) {
    const std::size_t x0 = C.front();
    for (std::size_t x : C)
      for (std::size_t y = 0; y < alpha.fiber[x]; ++y) {
        names.push_back(tuple_name({E.point(x), std::to_string(y)}));
        labels.push_back(offset + alpha(x, x0)[y]);
        proj.push_back(x);
      }
    offset += alpha.fiber[x0];
  }
  SkewResult out;
  out.space = FinER::from_labels(names, labels);
  std::vector<std::size_t> p(names.size());
  for (std::size_t k = 0; k < names.size(); ++k) p[out.space.index(names[k])] = proj[k];
  out.pi1 = PointMap(out.space, E, p);
  return out;
}

SkewResult skew_product_action(const FinER& E, const std::vector<std::string>& ys,
                               const std::function<std::size_t(std::size_t, std::size_t, std::size_t)>& act) {
  std::vector<Point> names;
  std::vector<std::size_t> labels, proj;
  std::size_t offset = 0;
  for (const auto& C : E.classes()) {
    const std::size_t x0 = C.front();
    for (std::size_t x : C)
      for (std::size_t y = 0; y < ys.size(); ++y) {
        names.push_back(tuple_name({E.point(x), ys[y]}));
        labels.push_back(offset + act(x, x0, y));
        proj.push_back(x);
      }
    offset += ys.size();
  }
  SkewResult out;
  out.space = FinER::from_labels(names, labels);
  std::vector<std::size_t> p(names.size());
  for (std::size_t k = 0; k < names.size(); ++k) p[out.space.index(names[k])] = proj[k];
  out.pi1 = PointMap(out.space, E, p);
  return out;
}

Cocycle cocycle_from_enumeration(const FinER& E, const std::vector<Perm>& T) {
  if (T.size() != E.size()) throw input_error("enumeration does not cover the base");
  Cocycle a;
  a.base = E;
  a.fiber.resize(E.size());
  for (std::size_t x = 0; x < E.size(); ++x) {
    if (!is_perm(T[x]) || T[x].size() != E.class_size(x))
      throw input_error("enumeration at '" + E.point(x) + "' is not a bijection onto its class");
    a.fiber[x] = E.class_size(x);
  }
  for (const auto& C : E.classes())
    for (std::size_t x : C)
      for (std::size_t y : C) a.alpha[{x, y}] = compose(inverse(T[y]), T[x]);
  return a;
}

std::vector<Perm> cyclic_enumeration(const FinER& E) {
  std::vector<Perm> T(E.size());
  for (const auto& C : E.classes())
    for (std::size_t pos = 0; pos < C.size(); ++pos) {
      Perm p(C.size());
      for (std::size_t y = 0; y < C.size(); ++y) p[y] = (pos + y) % C.size();
      T[C[pos]] = p;
    }
  return T;
}

bool is_iso_over(const PointMap& phi, const PointMap& p, const PointMap& q) {
  if (!(phi.domain() == p.domain()) || !(phi.codomain() == q.domain()) || !(p.codomain() == q.codomain())) return false;
  if (!is_isomorphism(phi)) return false;
  for (std::size_t i = 0; i < phi.domain().size(); ++i)
    if (q(phi(i)) != p(i)) return false;
  return true;
}

}  // namespace structo

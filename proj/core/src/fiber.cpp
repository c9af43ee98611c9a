#include "structo/fiber.hpp"

#include <algorithm>
#include <set>

#include "structo/error.hpp"
#include "structo/util.hpp"

namespace structo {

// ---------------------------------------------------------------- FiberSpace

FiberSpace::FiberSpace(FinER total_, FinER base_, PointMap p_)
    : total(std::move(total_)), base(std::move(base_)), p(std::move(p_)) {
  if (!(p.domain() == total) || !(p.codomain() == base)) throw input_error("projection does not run from total space to base");
  if (!classify_hom(p).has(HomFlag::ClassBijective)) throw input_error("projection is not class-bijective");
  if (!is_surjective(p)) throw input_error("projection is not surjective (empty fiber)");
}

std::vector<std::size_t> FiberSpace::fiber(std::size_t x) const {
  std::vector<std::size_t> out;
  for (std::size_t u = 0; u < total.size(); ++u)
    if (p(u) == x) out.push_back(u);
  return out;
}

std::size_t FiberSpace::fiber_size(std::size_t x) const { return fiber(x).size(); }

std::vector<std::size_t> fiber_transport(const FiberSpace& S, std::size_t x, std::size_t x2) {
  if (!S.base.related(x, x2))
    throw input_error("transport between unrelated points '" + S.base.point(x) + "' and '" + S.base.point(x2) + "'");
  const auto src = S.fiber(x), dst = S.fiber(x2);
  std::vector<std::size_t> out;
  for (std::size_t u : src) {
    auto it = std::find_if(dst.begin(), dst.end(), [&](std::size_t v) { return S.total.related(u, v); });
    if (it == dst.end()) throw contract_error("fiber transport has no target");
    out.push_back(*it);
  }
  return out;
}

// ---------------------------------------------------------------- FiberMap

void FiberMap::validate() const {
  if (!(base_map.domain() == source.base) || !(base_map.codomain() == target.base))
    throw input_error("fiber map: base map has the wrong endpoints");
  if (!(total_map.domain() == source.total) || !(total_map.codomain() == target.total))
    throw input_error("fiber map: total map has the wrong endpoints");
  if (!classify_hom(base_map).has(HomFlag::Hom)) throw input_error("fiber map: base map is not a homomorphism");
  if (!classify_hom(total_map).has(HomFlag::Hom)) throw input_error("fiber map: total map is not a homomorphism");
  for (std::size_t u = 0; u < source.total.size(); ++u)
    if (target.p(total_map(u)) != base_map(source.p(u)))
      throw input_error("fiber map: square does not commute at '" + source.total.point(u) + "'");
}

bool FiberMap::fiber_injective() const {
  for (std::size_t x = 0; x < source.base.size(); ++x) {
    std::set<std::size_t> img;
    auto f = source.fiber(x);
    for (std::size_t u : f) img.insert(total_map(u));
    if (img.size() != f.size()) return false;
  }
  return true;
}

bool FiberMap::fiber_surjective() const {
  for (std::size_t x = 0; x < source.base.size(); ++x) {
    std::set<std::size_t> img;
    for (std::size_t u : source.fiber(x)) img.insert(total_map(u));
    if (img.size() != target.fiber_size(base_map(x))) return false;
  }
  return true;
}

FiberPullback pullback_fiber(const FiberSpace& S, const PointMap& f) {
  if (!classify_hom(f).has(HomFlag::Hom)) throw input_error("pullback: map is not a homomorphism");
  ProductResult pr = fiber_product(f, S.p);
  FiberSpace space(pr.product, f.domain(), pr.pi1);
  return {std::move(space), pr.pi2};
}

// ---------------------------------------------------------------- cocycles

Cocycle cocycle_of(const FiberSpace& S, const std::vector<Perm>& T_in) {
  std::set<std::size_t> sizes;
  for (std::size_t x = 0; x < S.base.size(); ++x) sizes.insert(S.fiber_size(x));
  if (sizes.size() > 1) {
    std::vector<std::string> s;
    for (std::size_t v : sizes) s.push_back(std::to_string(v));
    throw input_error("fiber sizes are not uniform: " + join(s, ", "));
  }
  const std::size_t n = sizes.empty() ? 0 : *sizes.begin();
  std::vector<Perm> T = T_in;
  if (T.empty()) T.assign(S.base.size(), identity_perm(n));
  if (T.size() != S.base.size()) throw input_error("enumeration does not cover the base");
  for (const Perm& t : T)
    if (t.size() != n || !is_perm(t)) throw input_error("enumeration is not a bijection onto the fiber");
  Cocycle a;
  a.base = S.base;
  a.fiber.assign(S.base.size(), n);
  for (const auto& C : S.base.classes())
    for (std::size_t x : C) {
      const auto fx = S.fiber(x);
      for (std::size_t x2 : C) {
        const auto fx2 = S.fiber(x2);
        const auto tr = fiber_transport(S, x, x2);
        Perm step(n);  // position in fiber(x) -> position in fiber(x2)
        for (std::size_t i = 0; i < n; ++i)
          step[i] = static_cast<std::size_t>(std::find(fx2.begin(), fx2.end(), tr[i]) - fx2.begin());
        a.alpha[{x, x2}] = compose(inverse(T[x2]), compose(step, T[x]));
      }
    }
  a.validate();
  return a;
}

FiberSpace fiberspace_of(const Cocycle& alpha) {
  SkewResult s = skew_product(alpha);
  return FiberSpace(s.space, alpha.base, s.pi1);
}

std::map<std::size_t, FiberSpace> partition_by_fiber_size(const FiberSpace& S) {
  std::map<std::size_t, std::vector<std::size_t>> by_size;
  for (std::size_t x = 0; x < S.base.size(); ++x) by_size[S.fiber_size(x)].push_back(x);
  std::map<std::size_t, FiberSpace> out;
  for (const auto& [n, xs] : by_size) {
    FinER base = restrict_to(S.base, xs);
    std::vector<std::size_t> us;
    for (std::size_t x : xs)
      for (std::size_t u : S.fiber(x)) us.push_back(u);
    std::sort(us.begin(), us.end());
    FinER total = restrict_to(S.total, us);
    std::vector<std::size_t> img(total.size());
    for (std::size_t u : us) img[total.index(S.total.point(u))] = base.index(S.base.point(S.p(u)));
    PointMap p(total, base, img);
    out.emplace(n, FiberSpace(total, base, p));
  }
  return out;
}

std::optional<PointMap> fiberwise_isomorphism(const FiberSpace& S1, const FiberSpace& S2) {
  if (!(S1.base == S2.base)) return std::nullopt;
  std::vector<std::size_t> img(S1.total.size());
  for (const auto& C : S1.base.classes()) {
    const std::size_t x0 = C.front();
    if (S1.fiber_size(x0) != S2.fiber_size(x0)) return std::nullopt;
    for (std::size_t x : C) {
      const auto t1 = fiber_transport(S1, x0, x);
      const auto t2 = fiber_transport(S2, x0, x);
      for (std::size_t k = 0; k < t1.size(); ++k) img[t1[k]] = t2[k];
    }
  }
  PointMap phi(S1.total, S2.total, img);
  if (!is_iso_over(phi, S1.p, S2.p)) throw contract_error("fiberwise isomorphism construction failed");
  return phi;
}

std::optional<std::vector<Perm>> cohomologous(const Cocycle& alpha, const Cocycle& beta) {
  if (!(alpha.base == beta.base) || alpha.fiber != beta.fiber) return std::nullopt;
  std::vector<Perm> phi(alpha.base.size());
  for (const auto& C : alpha.base.classes()) {
    const std::size_t x0 = C.front();
    for (std::size_t x : C) phi[x] = compose(beta(x0, x), alpha(x, x0));
  }
  for (const auto& C : alpha.base.classes())
    for (std::size_t x : C)
      for (std::size_t y : C)
        if (compose(phi[y], alpha(x, y)) != compose(beta(x, y), phi[x])) return std::nullopt;
  return phi;
}

// ---------------------------------------------------------------- tautological space

FiberSpace tautological(const FinER& E) {
  std::vector<Point> names;
  std::vector<std::size_t> labels, proj;
  for (const auto& C : E.classes())
    for (std::size_t x : C)
      for (std::size_t x2 : C) {
        names.push_back(tuple_name({E.point(x), E.point(x2)}));
        labels.push_back(x2);
        proj.push_back(x);
      }
  FinER total = FinER::from_labels(names, labels);
  std::vector<std::size_t> img(names.size());
  for (std::size_t k = 0; k < names.size(); ++k) img[total.index(names[k])] = proj[k];
  PointMap p(total, E, img);
  return FiberSpace(total, E, p);
}

FiberMap hom_correspondence(const PointMap& f) {
  if (!classify_hom(f).has(HomFlag::Hom)) throw input_error("hom_correspondence: map is not a homomorphism");
  const FinER& E = f.domain();
  const FinER& F = f.codomain();
  FiberMap m{tautological(E), tautological(F), f, {}};
  std::vector<std::size_t> img(m.source.total.size());
  for (const auto& C : E.classes())
    for (std::size_t x : C)
      for (std::size_t x2 : C)
        img[m.source.total.index(tuple_name({E.point(x), E.point(x2)}))] =
            m.target.total.index(tuple_name({F.point(f(x)), F.point(f(x2))}));
  m.total_map = PointMap(m.source.total, m.target.total, img);
  m.validate();
  return m;
}

PointMap decode_fiber_map(const FiberMap& m) {
  const FinER& E = m.source.base;
  const FinER& F = m.target.base;
  if (!(m.source.total == tautological(E).total) || !(m.target.total == tautological(F).total))
    throw input_error("decode: fiber map is not between tautological spaces");
  std::vector<std::size_t> second(m.target.total.size());
  for (const auto& D : F.classes())
    for (std::size_t y : D)
      for (std::size_t y2 : D) second[m.target.total.index(tuple_name({F.point(y), F.point(y2)}))] = y2;
  std::vector<std::size_t> img(E.size());
  for (std::size_t x = 0; x < E.size(); ++x)
    img[x] = second[m.total_map(m.source.total.index(tuple_name({E.point(x), E.point(x)})))];
  return PointMap(E, F, img);
}

bool fiber_maps_equivalent(const FiberMap& a, const FiberMap& b) {
  if (!(a.total_map.domain() == b.total_map.domain()) || !(a.total_map.codomain() == b.total_map.codomain())) return false;
  for (std::size_t u = 0; u < a.source.total.size(); ++u)
    if (!a.target.total.related(a.total_map(u), b.total_map(u))) return false;
  return true;
}

void for_each_fiber_map(const FiberSpace& S, const FiberSpace& T,
                        const std::function<bool(const PointMap&, const PointMap&)>& visit) {
  const auto sb = std::make_shared<const FinER>(S.base), tb = std::make_shared<const FinER>(T.base);
  const auto st = std::make_shared<const FinER>(S.total), tt = std::make_shared<const FinER>(T.total);
  std::vector<std::vector<std::size_t>> tfib(T.base.size());
  for (std::size_t y = 0; y < T.base.size(); ++y) tfib[y] = T.fiber(y);
  const std::size_t n = S.total.size();
  bool stop = false;
  for_each_hom(S.base, T.base, HomClass{HomFlag::Hom}, [&](const std::vector<std::size_t>& g) {
    std::vector<std::size_t> img(n);
    std::function<void(std::size_t)> rec = [&](std::size_t u) {
      if (stop) return;
      if (u == n) {
        if (!visit(PointMap(sb, tb, g), PointMap(st, tt, img))) stop = true;
        return;
      }
      for (std::size_t v : tfib[g[S.p(u)]]) {
        bool ok = true;
        for (std::size_t w = 0; w < u && ok; ++w)
          if (S.total.related(u, w) && !T.total.related(v, img[w])) ok = false;
        if (!ok) continue;
        img[u] = v;
        rec(u + 1);
        if (stop) return;
      }
    };
    rec(0);
    return !stop;
  });
}

// ---------------------------------------------------------------- factorization

FiberFactorization fiber_factorize(const FiberMap& m) {
  m.validate();
  const FiberSpace& P = m.source;
  const FiberSpace& Q = m.target;
  const FinER& E = P.base;
  FiberPullback pb = pullback_fiber(Q, m.base_map);
  std::vector<std::size_t> canon(P.total.size());
  for (std::size_t u = 0; u < P.total.size(); ++u)
    canon[u] = pb.space.total.index(tuple_name({E.point(P.p(u)), Q.total.point(m.total_map(u))}));
  std::vector<std::size_t> image = canon;
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  FinER mt = restrict_to(pb.space.total, image);
  std::vector<std::size_t> mp(mt.size()), incl(mt.size()), first(P.total.size());
  for (std::size_t k : image) {
    const std::size_t i = mt.index(pb.space.total.point(k));
    mp[i] = pb.space.p(k);
    incl[i] = k;
  }
  FiberSpace M(mt, E, PointMap(mt, E, mp));
  for (std::size_t u = 0; u < P.total.size(); ++u) first[u] = mt.index(pb.space.total.point(canon[u]));
  FiberFactorization out{
      {P, M, identity_map(E), PointMap(P.total, mt, first)},
      {M, pb.space, identity_map(E), PointMap(mt, pb.space.total, incl)},
      {pb.space, Q, m.base_map, pb.lift},
  };
  out.surjection.validate();
  out.injection.validate();
  out.bijection.validate();
  if (!out.surjection.fiber_surjective()) throw contract_error("fiber_factorize: first stage is not fiberwise surjective");
  if (!out.injection.fiber_injective()) throw contract_error("fiber_factorize: second stage is not fiberwise injective");
  if (!out.bijection.fiber_bijective()) throw contract_error("fiber_factorize: third stage is not fiber-bijective");
  if (!(compose(out.bijection.total_map, compose(out.injection.total_map, out.surjection.total_map)) == m.total_map))
    throw contract_error("fiber_factorize: stages do not recompose");
  return out;
}

// ---------------------------------------------------------------- structures on fibers

namespace {

FinStructure transport_structure(const FiberSpace& S, const FinStructure& B, std::size_t x, std::size_t x2) {
  const auto src = S.fiber(x);
  const auto tr = fiber_transport(S, x, x2);
  std::map<Point, Point> rename;
  for (std::size_t k = 0; k < src.size(); ++k) rename[S.total.point(src[k])] = S.total.point(tr[k]);
  return pushforward(B, rename);
}

}  // namespace

FiberLtimes fiber_ltimes(const FiberSpace& S, const Theory& T) {
  FiberLtimes L;
  L.source = S;
  L.theory = T;
  const FinER& E = S.base;
  for (std::size_t x = 0; x < E.size(); ++x) {
    std::vector<Point> names;
    for (std::size_t u : S.fiber(x)) names.push_back(S.total.point(u));
    L.fiber_models.push_back(models(T, names));
  }
  std::vector<Point> names;
  std::vector<std::size_t> labels, proj, model_of;
  std::size_t offset = 0;
  for (const auto& C : E.classes()) {
    const std::size_t x0 = C.front();
    const auto& m0 = L.fiber_models[x0];
    for (std::size_t x : C)
      for (std::size_t j = 0; j < L.fiber_models[x].size(); ++j) {
        const FinStructure back = transport_structure(S, L.fiber_models[x][j], x, x0);
        auto it = std::find(m0.begin(), m0.end(), back);
        if (it == m0.end()) throw contract_error("fiber_ltimes: transport does not preserve models");
        names.push_back(tuple_name({E.point(x), std::to_string(j)}));
        labels.push_back(offset + static_cast<std::size_t>(it - m0.begin()));
        proj.push_back(x);
        model_of.push_back(j);
      }
    offset += m0.size();
  }
  L.base = FinER::from_labels(names, labels);
  std::vector<std::size_t> bp(names.size()), bj(names.size());
  for (std::size_t k = 0; k < names.size(); ++k) {
    bp[L.base.index(names[k])] = proj[k];
    bj[L.base.index(names[k])] = model_of[k];
  }
  L.base_projection = PointMap(L.base, E, bp);
  FiberPullback pb = pullback_fiber(S, L.base_projection);
  L.space = pb.space;
  L.lift = pb.lift;
  L.structure = FinStructure(T.language, L.space.total.points());
  for (std::size_t z = 0; z < L.base.size(); ++z) {
    const std::size_t x = L.base_projection(z);
    const FinStructure& B = L.fiber_models[x][bj[z]];
    const auto fx = S.fiber(x);
    // B's universe is fiber(x) in order; (z,u) sits over u.
    std::vector<std::size_t> lift(fx.size());
    for (std::size_t k = 0; k < fx.size(); ++k)
      lift[k] = L.space.total.index(tuple_name({L.base.point(z), S.total.point(fx[k])}));
    for (std::size_t s = 0; s < T.language.size(); ++s)
      for (auto t : B.tuples(s)) {
        for (std::size_t& v : t) v = lift[v];
        L.structure.set(s, t, true);
      }
  }
  if (!fiber_structure_compatible(L.space, L.structure)) throw contract_error("fiber_ltimes: structure is not transport-compatible");
  if (!classify_hom(L.lift).has(HomFlag::ClassBijective)) throw contract_error("fiber_ltimes: lift is not class-bijective");
  return L;
}

bool fiber_structure_compatible(const FiberSpace& S, const FinStructure& A) {
  if (A.universe() != S.total.points()) return false;
  for (std::size_t s = 0; s < A.language().size(); ++s)
    for (const auto& t : A.tuples(s))
      for (std::size_t v : t)
        if (S.p(v) != S.p(t.front())) return false;
  for (const auto& C : S.base.classes())
    for (std::size_t x : C) {
      const FinStructure Bx = restrict_structure(A, S.fiber(x));
      for (std::size_t x2 : C)
        if (!(transport_structure(S, Bx, x, x2) == restrict_structure(A, S.fiber(x2)))) return false;
    }
  return true;
}

bool fiberwise_satisfies(const FiberSpace& S, const FinStructure& A, const Theory& T) {
  const CompiledFormula cf(T.sentence, T.language);
  for (std::size_t x = 0; x < S.base.size(); ++x)
    if (!cf.eval(restrict_structure(A, S.fiber(x)))) return false;
  return true;
}

std::pair<PointMap, PointMap> fiber_ltimes_universal(const FiberLtimes& L, const FiberMap& m, const FinStructure& A) {
  m.validate();
  if (!(m.target.total == L.source.total) || !(m.target.base == L.source.base))
    throw input_error("fiber map does not land in the ltimes source");
  if (!m.fiber_bijective()) throw input_error("fiber map is not fiber-bijective");
  const FiberSpace& R = m.source;
  if (!fiber_structure_compatible(R, A)) throw input_error("structure is not transport-compatible");
  std::vector<std::size_t> h(R.base.size()), ht(R.total.size());
  for (std::size_t w = 0; w < R.base.size(); ++w) {
    const std::size_t x = m.base_map(w);
    const auto fw = R.fiber(w);
    std::map<Point, Point> rename;
    for (std::size_t v : fw) rename[R.total.point(v)] = L.source.total.point(m.total_map(v));
    const FinStructure pushed = pushforward(restrict_structure(A, fw), rename);
    const auto& ms = L.fiber_models[x];
    auto it = std::find(ms.begin(), ms.end(), pushed);
    if (it == ms.end()) throw input_error("structure on the fiber over '" + R.base.point(w) + "' is not a model");
    h[w] = L.base.index(tuple_name({L.source.base.point(x), std::to_string(it - ms.begin())}));
  }
  for (std::size_t v = 0; v < R.total.size(); ++v)
    ht[v] = L.space.total.index(tuple_name({L.base.point(h[R.p(v)]), L.source.total.point(m.total_map(v))}));
  PointMap hb(R.base, L.base, h), htot(R.total, L.space.total, ht);
  return {hb, htot};
}

}  // namespace structo

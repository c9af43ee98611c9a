#include "structo/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <iomanip>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

#include "json.hpp"

#include "structo/combinat.hpp"
#include "structo/constructions.hpp"
#include "structo/error.hpp"
#include "structo/factorize.hpp"
#include "structo/fiber.hpp"
#include "structo/io.hpp"
#include "structo/lattice.hpp"
#include "structo/scott.hpp"
#include "structo/theoryalg.hpp"
#include "structo/util.hpp"

namespace structo {

bool SuiteReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Runs body, recording the elapsed time; an escaping exception is a failure.
CheckResult timed(std::string name, const std::function<void(CheckResult&)>& body) {
  CheckResult r;
  r.name = std::move(name);
  const auto t0 = Clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what() + (r.detail.empty() ? "" : " after " + r.detail);
  }
  r.seconds = since(t0);
  return r;
}

// Keeps the first counterexample only.
void fail(CheckResult& r, const std::string& why) {
  if (!r.pass) return;
  r.pass = false;
  r.detail = why;
}

std::string brief(const FinER& E) {
  std::vector<std::string> parts;
  for (const auto& c : E.named_classes()) parts.push_back(join(c, " "));
  return "[" + join(parts, "|") + "]";
}

std::string brief(const PointMap& f) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < f.domain().size(); ++i)
    parts.push_back(f.domain().point(i) + ">" + f.codomain().point(f(i)));
  return "{" + join(parts, " ") + "}";
}

std::string brief(const FinStructure& A) {
  std::vector<std::string> parts;
  for (std::size_t s = 0; s < A.language().size(); ++s)
    for (const auto& t : A.tuples(s)) {
      std::vector<std::string> names;
      for (std::size_t v : t) names.push_back(A.universe()[v]);
      parts.push_back(A.language()[s].name + tuple_name(names));
    }
  return "{" + join(parts, " ") + "}";
}

Theory theory(const std::string& lang, const std::string& sentence) {
  return Theory(parse_language(lang), parse_formula(sentence));
}

const char* kLinearOrder =
    "(and (forall x (not (rel L x x)))"
    "     (forall x (forall y (forall z (implies (and (rel L x y) (rel L y z)) (rel L x z)))))"
    "     (forall x (forall y (or (eq x y) (rel L x y) (rel L y x)))))";
const char* kMarkedPoint = "(exists x (and (rel P x) (forall y (implies (rel P y) (eq x y)))))";

Theory truth() { return Theory(Language(), f_true()); }
Theory linear_order() { return theory("L/2", kLinearOrder); }
Theory marked_point() { return theory("P/1", kMarkedPoint); }

std::vector<Perm> all_perms(std::size_t n) {
  std::vector<Perm> out;
  Perm p = identity_perm(n);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Every cocycle on E with fiber n everywhere: α(c0, x) is free for each
// class representative c0, and α(x, y) = α(c0, y) ∘ α(c0, x)^{-1}.
std::vector<Cocycle> all_cocycles(const FinER& E, std::size_t n) {
  const auto perms = all_perms(n);
  std::vector<std::size_t> free_points;
  for (const auto& c : E.classes())
    for (std::size_t i = 1; i < c.size(); ++i) free_points.push_back(c[i]);
  std::vector<Cocycle> out;
  std::vector<std::size_t> choice(free_points.size(), 0);
  while (true) {
    std::vector<Perm> from_rep(E.size(), identity_perm(n));
    for (std::size_t i = 0; i < free_points.size(); ++i) from_rep[free_points[i]] = perms[choice[i]];
    Cocycle a;
    a.base = E;
    a.fiber.assign(E.size(), n);
    for (const auto& c : E.classes())
      for (std::size_t x : c)
        for (std::size_t y : c) a.alpha[{x, y}] = compose(from_rep[y], inverse(from_rep[x]));
    a.validate();
    out.push_back(std::move(a));
    std::size_t i = free_points.size();
    while (i > 0) {
      --i;
      if (++choice[i] < perms.size()) break;
      choice[i] = 0;
      if (i == 0) return out;
    }
    if (free_points.empty()) return out;
  }
}

FinStructure make_structure(const Language& L, std::size_t n, const std::vector<std::vector<std::uint8_t>>& bits) {
  FinStructure A(L, canonical_points(n));
  A.mutable_bits() = bits;
  return A;
}

// Calls visit on every L-structure on n canonical points.
void for_each_structure(const Language& L, std::size_t n, const std::function<void(const FinStructure&)>& visit) {
  FinStructure A(L, canonical_points(n));
  std::size_t total = 0;
  for (std::size_t s = 0; s < L.size(); ++s) total += A.tuple_count(s);
  if (total >= 40) throw input_error("for_each_structure: too many tuples");
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << total); ++code) {
    std::size_t bit = 0;
    for (std::size_t s = 0; s < L.size(); ++s)
      for (std::size_t k = 0; k < A.tuple_count(s); ++k, ++bit) A.set_code(s, k, (code >> bit) & 1);
    visit(A);
  }
}

}  // namespace

// ---------------------------------------------------------------- shared helpers

std::vector<FinER> relations_upto(std::size_t max_points, std::size_t min_points) {
  std::vector<FinER> out;
  for (std::size_t n = min_points; n <= max_points; ++n)
    for (const auto& sizes : integer_partitions(n)) out.push_back(FinER::from_class_sizes(sizes));
  return out;
}

std::vector<Theory> ltimes_theories() { return {truth(), linear_order(), marked_point()}; }

std::vector<Theory> theory_battery() {
  return {
      truth(),
      linear_order(),
      marked_point(),
      theory("Q/1", "(exists x (rel Q x))"),
      theory("M/2",
             "(and (forall x (not (rel M x x)))"
             "     (forall x (forall y (implies (rel M x y) (rel M y x))))"
             "     (forall x (exists y (and (rel M x y) (forall z (implies (rel M x z) (eq z y)))))))"),
      theory("", "(forall x (forall y (forall z (or (eq x y) (eq x z) (eq y z)))))"),
  };
}

std::vector<StructuredER> classwise_structures(const FinER& F, const Theory& T) {
  std::vector<std::vector<FinStructure>> per_class;
  for (const auto& c : F.classes()) {
    std::vector<Point> names;
    for (std::size_t x : c) names.push_back(F.point(x));
    per_class.push_back(models(T, names));
    if (per_class.back().empty()) return {};
  }
  std::vector<StructuredER> out;
  std::vector<std::size_t> choice(per_class.size(), 0);
  while (true) {
    FinStructure A(T.language, F.points());
    for (std::size_t ci = 0; ci < per_class.size(); ++ci) {
      const FinStructure& M = per_class[ci][choice[ci]];
      for (std::size_t s = 0; s < T.language.size(); ++s)
        for (const auto& t : M.tuples(s)) {
          std::vector<Point> names;
          for (std::size_t v : t) names.push_back(M.universe()[v]);
          A.add(T.language[s].name, names);
        }
    }
    out.emplace_back(F, std::move(A));
    std::size_t i = per_class.size();
    while (i > 0) {
      --i;
      if (++choice[i] < per_class[i].size()) break;
      choice[i] = 0;
      if (i == 0) return out;
    }
    if (per_class.empty()) return out;
  }
}

// ---------------------------------------------------------------- constructions

CheckResult check_ltimes_universal(std::size_t max_base, std::size_t max_source) {
  return timed("ltimes-universal", [&](CheckResult& r) {
    const auto bases = relations_upto(max_base);
    const auto sources = relations_upto(max_source);
    for (const Theory& T : ltimes_theories()) {
      for (const FinER& E : bases) {
        const LtimesResult L = ltimes(E, T);
        for (const FinER& F : sources) {
          // Every cb lift F -> E⋉σ, keyed by the pair (π∘h, pulled-back structure).
          std::map<std::pair<std::vector<std::size_t>, std::vector<std::vector<std::uint8_t>>>,
                   std::pair<std::size_t, std::vector<std::size_t>>>
              lifts;
          for_each_hom(F, L.space, {HomFlag::ClassBijective}, [&](const std::vector<std::size_t>& img) {
            PointMap h(F, L.space, img);
            const auto key = std::make_pair(compose(L.projection, h).images(),
                                            classwise_pullback(L.structure.structure, h).structure.bits());
            auto& slot = lifts[key];
            if (slot.first++ == 0) slot.second = img;
            return true;
          });
          const auto structures = classwise_structures(F, T);
          std::size_t pairs = 0;
          for_each_hom(F, E, {HomFlag::ClassBijective}, [&](const std::vector<std::size_t>& img) {
            PointMap f(F, E, img);
            for (const StructuredER& A : structures) {
              ++pairs;
              ++r.cases;
              auto it = lifts.find({img, A.structure.bits()});
              const std::string where = "E=" + brief(E) + " F=" + brief(F) + " f=" + brief(f) +
                                        " A=" + brief(A.structure) + " T=" + print(T.sentence);
              if (it == lifts.end()) {
                fail(r, "no lift for " + where);
                continue;
              }
              if (it->second.first != 1) fail(r, std::to_string(it->second.first) + " lifts for " + where);
              if (ltimes_universal_map(L, f, A).images() != it->second.second)
                fail(r, "constructed lift differs from the searched one for " + where);
            }
            return true;
          });
          if (lifts.size() != pairs)
            fail(r, "lifts outside the (f, A) pairs for E=" + brief(E) + " F=" + brief(F));
        }
      }
    }
  });
}

CheckResult check_tensor_universal(std::size_t max_points) {
  return timed("tensor-universal", [&](CheckResult& r) {
    const auto rels = relations_upto(max_points);
    for (const FinER& E : rels)
      for (const FinER& F : rels) {
        const TensorResult T = tensor(E, F);
        for (const FinER& G : rels) {
          std::map<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>,
                   std::pair<std::size_t, std::vector<std::size_t>>>
              mediators;
          for_each_hom(G, T.product, {HomFlag::ClassBijective}, [&](const std::vector<std::size_t>& img) {
            PointMap h(G, T.product, img);
            auto& slot = mediators[{compose(T.pi1, h).images(), compose(T.pi2, h).images()}];
            if (slot.first++ == 0) slot.second = img;
            return true;
          });
          const auto fs = enumerate_homs(G, E, {HomFlag::ClassBijective});
          const auto gs = enumerate_homs(G, F, {HomFlag::ClassBijective});
          for (const PointMap& f : fs)
            for (const PointMap& g : gs) {
              ++r.cases;
              const std::string where = "E=" + brief(E) + " F=" + brief(F) + " f=" + brief(f) + " g=" + brief(g);
              auto it = mediators.find({f.images(), g.images()});
              if (it == mediators.end() || it->second.first != 1) {
                fail(r, "mediating map not unique for " + where);
                continue;
              }
              if (pairing(T, f, g).images() != it->second.second) fail(r, "pairing differs from search for " + where);
            }
          if (mediators.size() != fs.size() * gs.size()) fail(r, "stray mediators for G=" + brief(G));
        }
      }
  });
}

CheckResult check_tensor_identities(std::size_t max_points) {
  return timed("tensor-identities", [&](CheckResult& r) {
    auto iso = [&](const FinER& A, const FinER& B, const std::string& what) {
      ++r.cases;
      auto phi = find_isomorphism(A, B);
      if (!phi || !is_isomorphism(*phi)) fail(r, what);
    };
    // Δm ⊗ Δn ≅ Δm × Δn = Δmn.
    for (std::size_t m = 1; m <= max_points; ++m)
      for (std::size_t n = 1; n <= max_points; ++n) {
        const FinER prod = tensor(FinER::delta(m), FinER::delta(n)).product;
        iso(prod, FinER::delta(m * n), "D" + std::to_string(m) + " x D" + std::to_string(n) + " is not Delta");
        iso(prod, cross_product(FinER::delta(m), FinER::delta(n)).product, "Delta tensor differs from cross");
      }
    const auto rels = relations_upto(max_points);
    const auto theories = ltimes_theories();
    for (const FinER& E : rels)
      for (const FinER& F : rels) {
        const std::string where = " E=" + brief(E) + " F=" + brief(F);
        const TensorResult T = tensor(E, F);
        // Class count Σ_{|C|=|D|} |C|!.
        std::size_t predicted = 0;
        for (const auto& C : E.classes())
          for (const auto& D : F.classes())
            if (C.size() == D.size()) predicted += factorial(C.size());
        ++r.cases;
        if (T.product.num_classes() != predicted || tensor_class_count(E, F) != predicted)
          fail(r, "class count" + where);
        iso(T.product, tensor(F, E).product, "tensor not commutative" + where);
        // (π1,π2) is class-injective; surjective iff E and F share one class size.
        const TensorCrossReport rep = tensor_vs_cross(E, F);
        std::set<std::size_t> sizes;
        for (std::size_t s : E.class_sizes()) sizes.insert(s);
        for (std::size_t s : F.class_sizes()) sizes.insert(s);
        ++r.cases;
        if (!classify_hom(rep.map).has(HomFlag::ClassInjective)) fail(r, "(pi1,pi2) not class-injective" + where);
        if (is_surjective(rep.map) != (sizes.size() == 1) || rep.surjective != is_surjective(rep.map))
          fail(r, "surjectivity criterion" + where);
        // Two discrete inputs give an isomorphism.
        if (E.num_classes() == E.size() && F.num_classes() == F.size() && !is_isomorphism(rep.map))
          fail(r, "(pi1,pi2) not an isomorphism for discrete inputs" + where);
        for (const Theory& sigma : theories) {
          const std::string tw = where + " T=" + print(sigma.sentence);
          // A σ-structure on E pulls back along π1 to E ⊗ F.
          const SearchResult se = structure_search(E, sigma);
          if (se.witness) {
            ++r.cases;
            const StructuredER pulled = classwise_pullback(se.witness->structure, T.pi1);
            if (!classwise_satisfies(pulled, sigma)) fail(r, "pulled structure is not a model" + tw);
            if (!structure_search(T.product, sigma).witness) fail(r, "E|=s but E(x)F does not" + tw);
          }
          // (E⊗F)⋉σ ≅ E⊗(F⋉σ).
          iso(ltimes(T.product, sigma).space, tensor(E, ltimes(F, sigma).space).product, "ltimes does not commute with tensor" + tw);
        }
      }
    // Tensor and ltimes both distribute over sums; checked on pairs of summands.
    const auto small = relations_upto(std::max<std::size_t>(1, max_points - 1));
    for (const FinER& E1 : small)
      for (const FinER& E2 : small) {
        const SumResult S = disjoint_sum({E1, E2});
        for (const FinER& F : rels) {
          const SumResult lhs = disjoint_sum({tensor(E1, F).product, tensor(E2, F).product});
          iso(lhs.sum, tensor(S.sum, F).product, "tensor does not distribute over sum E1=" + brief(E1) + " E2=" + brief(E2) + " F=" + brief(F));
        }
        for (const Theory& sigma : theories) {
          const std::string where = " E1=" + brief(E1) + " E2=" + brief(E2) + " T=" + print(sigma.sentence);
          const LtimesResult L1 = ltimes(E1, sigma), L2 = ltimes(E2, sigma), LS = ltimes(S.sum, sigma);
          const SumResult left = disjoint_sum({L1.space, L2.space});
          // d restricted to summand i is the lift of ι_i ∘ π_i.
          std::vector<std::size_t> d(left.sum.size());
          const LtimesResult* parts[2] = {&L1, &L2};
          std::vector<std::size_t> base_img(left.sum.size());
          for (std::size_t i = 0; i < 2; ++i) {
            const PointMap down = compose(S.injections[i], parts[i]->projection);
            const PointMap u = ltimes_universal_map(LS, down, parts[i]->structure);
            for (std::size_t p = 0; p < parts[i]->space.size(); ++p) {
              d[left.injections[i](p)] = u(p);
              base_img[left.injections[i](p)] = down(p);
            }
          }
          ++r.cases;
          const PointMap dmap(left.sum, LS.space, d);
          if (!is_isomorphism(dmap)) fail(r, "sum comparison map is not an isomorphism" + where);
          if (compose(LS.projection, dmap).images() != base_img) fail(r, "sum comparison map does not commute" + where);
        }
      }
  });
}

CheckResult check_skew_ltimes(std::size_t max_points) {
  return timed("skew-ltimes", [&](CheckResult& r) {
    const Theory sigma = linear_order();
    for (const FinER& E : relations_upto(max_points)) {
      std::map<std::size_t, std::vector<std::size_t>> by_size;
      for (const auto& c : E.classes()) by_size[c.size()].insert(by_size[c.size()].end(), c.begin(), c.end());
      for (auto& [s, members] : by_size) {
        std::sort(members.begin(), members.end());
        const FinER Es = restrict_to(E, members);
        const std::string where = " E=" + brief(Es);
        const auto T = cyclic_enumeration(Es);
        cocycle_from_enumeration(Es, T).validate();
        const auto Bm = models(sigma, canonical_points(s));
        std::vector<std::string> ys;
        for (std::size_t j = 0; j < Bm.size(); ++j) ys.push_back(std::to_string(j));
        auto index_of = [](const std::vector<FinStructure>& v, const FinStructure& A) {
          auto it = std::find(v.begin(), v.end(), A);
          if (it == v.end()) throw contract_error("transported structure is not a model");
          return static_cast<std::size_t>(it - v.begin());
        };
        const SkewResult K = skew_product_action(Es, ys, [&](std::size_t x, std::size_t x2, std::size_t j) {
          return index_of(Bm, pushforward(Bm[j], canonical_points(s), compose(inverse(T[x2]), T[x])));
        });
        const LtimesResult L = ltimes(Es, sigma);
        std::vector<std::size_t> phi(K.space.size());
        for (std::size_t x = 0; x < Es.size(); ++x) {
          const auto& cls = Es.class_members(x);
          std::vector<Point> names;
          for (std::size_t v : cls) names.push_back(Es.point(v));
          for (std::size_t j = 0; j < Bm.size(); ++j) {
            const std::size_t m = index_of(L.models[Es.class_of(x)], pushforward(Bm[j], names, T[x]));
            phi[K.space.index(tuple_name({Es.point(x), ys[j]}))] = L.point_index(x, m);
          }
        }
        ++r.cases;
        if (!is_iso_over(PointMap(K.space, L.space, phi), K.pi1, L.projection))
          fail(r, "skew product is not isomorphic over the base" + where);
      }
    }
  });
}

// ---------------------------------------------------------------- scott

CheckResult check_scott_counts(std::size_t max_base, std::size_t max_source) {
  return timed("scott-counts", [&](CheckResult& r) {
    const auto sources = relations_upto(max_source);
    for (const FinER& E : relations_upto(max_base)) {
      const CodedER C = code_er(E);
      const Theory sE = scott_theory(C).theory();
      ModelCache cache;
      for (const FinER& F : sources) {
        ++r.cases;
        const std::string where = " E=" + brief(E) + " F=" + brief(F);
        const std::size_t homs = count_homs(F, E, {HomFlag::ClassBijective});
        const std::size_t structs = count_structures(F, sE);
        if (homs != structs)
          fail(r, "count " + std::to_string(structs) + " != cb homs " + std::to_string(homs) + where);
        const SearchResult s = structure_search(F, sE, &cache);
        if (s.witness.has_value() != (homs > 0)) fail(r, "structurability differs from cb existence" + where);
        if (s.witness && !classify_hom(structures_to_cb(*s.witness, C)).has(HomFlag::ClassBijective))
          fail(r, "search witness does not decode" + where);
      }
    }
  });
}

CheckResult check_scott_semantics(std::size_t max_base, std::size_t max_source) {
  return timed("scott-semantics", [&](CheckResult& r) {
    const auto sources = relations_upto(max_source);
    for (const FinER& E : relations_upto(max_base)) {
      const CodedER C = code_er(E);
      for (std::size_t width : {C.bits, C.bits + 1}) {
        const ScottTheory S = scott_theory(C, width);
        const CompiledFormula h(S.h().sentence, S.language), ci(S.ci().sentence, S.language),
            cs(S.cs().sentence, S.language);
        for (const FinER& F : sources) {
          for_each_structure(S.language, F.size(), [&](const FinStructure& A) {
            ++r.cases;
            std::vector<std::size_t> code(F.size());
            for (std::size_t y = 0; y < F.size(); ++y) code[y] = read_code(A, y);
            for (const auto& cls : F.classes()) {
              const FinStructure part = restrict_structure(A, cls);
              bool in_x = true, hom = true, inj = true, invariant = true;
              std::set<std::size_t> image;
              for (std::size_t y : cls) {
                in_x = in_x && code[y] < E.size();
                image.insert(code[y]);
              }
              inj = image.size() == cls.size();
              if (in_x) {
                for (std::size_t y : cls) hom = hom && E.related(code[y], code[cls.front()]);
                for (std::size_t c : image)
                  for (std::size_t z : E.class_members(c)) invariant = invariant && image.count(z);
              }
              // Codes at or above 2^bits only arise from padded bits.
              const bool padded_zero =
                  std::all_of(cls.begin(), cls.end(), [&](std::size_t y) { return code[y] >> C.bits == 0; });
              const bool want_h = in_x && hom, want_ci = inj && padded_zero, want_cs = in_x && invariant;
              if (h.eval(part) != want_h || ci.eval(part) != want_ci || cs.eval(part) != want_cs) {
                fail(r, "E=" + brief(E) + " width=" + std::to_string(width) + " F=" + brief(F) +
                            " A=" + brief(A) + " class of " + F.point(cls.front()));
                return;
              }
            }
          });
        }
      }
    }
  });
}

CheckResult check_scott_roundtrip(std::size_t max_base, std::size_t max_source) {
  return timed("scott-roundtrip", [&](CheckResult& r) {
    const auto sources = relations_upto(max_source);
    for (const FinER& E : relations_upto(max_base)) {
      const CodedER C = code_er(E);
      const ScottTheory S = scott_theory(C);
      for (const FinER& F : sources) {
        for (const PointMap& f : enumerate_homs(F, E, {HomFlag::ClassBijective})) {
          ++r.cases;
          const StructuredER A = cb_to_structure(f, C);
          if (!classwise_satisfies(A, S.theory()) || !(structures_to_cb(A, C) == f))
            fail(r, "map does not survive coding: " + brief(f));
        }
        for (const StructuredER& A : enumerate_structures(F, S.theory())) {
          ++r.cases;
          if (!(cb_to_structure(structures_to_cb(A, C), C) == A))
            fail(r, "structure does not survive decoding: " + brief(A.structure));
        }
      }
    }
  });
}

// ---------------------------------------------------------------- factorize

CheckResult check_factorizations(std::size_t max_points) {
  return timed("factorizations", [&](CheckResult& r) {
    const auto rels = relations_upto(max_points);
    for (const FinER& E : rels)
      for (const FinER& F : rels)
        for_each_hom(E, F, {HomFlag::Hom}, [&](const std::vector<std::size_t>& img) {
          const PointMap f(E, F, img);
          const HomClass kind = classify_hom(f);
          const std::string where = " E=" + brief(E) + " F=" + brief(F) + " f=" + brief(f);
          ++r.cases;
          const SmoothFactorization s = factor_smooth(f);
          const HomClass sg = classify_hom(s.g), sh = classify_hom(s.h), sk = classify_hom(s.k);
          if (!(compose(s.k, compose(s.h, s.g)) == f)) fail(r, "smooth stages do not recompose" + where);
          if (!sg.has(HomFlag::Reduction) || !is_surjective(s.g)) fail(r, "smooth g not a surjective reduction" + where);
          if (!sh.has(HomFlag::Embedding) || !has_complete_section_image(s.h))
            fail(r, "smooth h not a complete-section embedding" + where);
          if (!sk.has(HomFlag::ClassBijective)) fail(r, "smooth k not class-bijective" + where);
          if (kind.has(HomFlag::ClassInjective)) {
            const CiFactorization c = factor_ci(f);
            if (!(compose(c.h, c.g) == f)) fail(r, "ci stages do not recompose" + where);
            if (!classify_hom(c.g).has(HomFlag::Embedding) || !has_complete_section_image(c.g))
              fail(r, "ci g not a complete-section embedding" + where);
            if (!classify_hom(c.h).has(HomFlag::ClassBijective)) fail(r, "ci h not class-bijective" + where);
          }
          if (kind.has(HomFlag::ClassSurjective)) {
            const CsFactorization c = factor_cs_smooth(f);
            if (!(compose(c.k, c.g) == f)) fail(r, "cs stages do not recompose" + where);
            if (!classify_hom(c.g).has(HomFlag::Reduction) || !is_surjective(c.g))
              fail(r, "cs g not a surjective reduction" + where);
            if (!classify_hom(c.k).has(HomFlag::ClassBijective)) fail(r, "cs k not class-bijective" + where);
          }
          return true;
        });
  });
}

CheckResult check_factor_uniqueness(std::size_t max_points) {
  return timed("factor-uniqueness", [&](CheckResult& r) {
    const auto rels = relations_upto(max_points);
    for (const FinER& E : rels)
      for (const FinER& F : rels)
        for (const PointMap& f : enumerate_homs(E, F, {HomFlag::ClassInjective})) {
          const CiFactorization a = factor_ci(f);
          // Independent construction: one class per E-class C, holding a copy
          // of the F-class of f(C), named "<C>/y".
          std::vector<Point> names;
          std::vector<std::size_t> labels, back;
          std::vector<std::size_t> g_img(E.size());
          std::map<std::pair<std::size_t, std::size_t>, std::size_t> slot;
          for (std::size_t c = 0; c < E.num_classes(); ++c) {
            const std::size_t rep = E.classes()[c].front();
            for (std::size_t y : F.class_members(f(rep))) {
              slot[{c, y}] = names.size();
              names.push_back("<" + std::to_string(c) + ">/" + F.point(y));
              labels.push_back(c);
              back.push_back(y);
            }
          }
          const FinER G2 = FinER::from_labels(names, labels);
          std::vector<std::size_t> h_img(G2.size());
          for (std::size_t k = 0; k < names.size(); ++k) h_img[G2.index(names[k])] = back[k];
          for (std::size_t x = 0; x < E.size(); ++x) g_img[x] = G2.index(names[slot[{E.class_of(x), f(x)}]]);
          const PointMap g2(E, G2, g_img), h2(G2, F, h_img);
          const std::string where = " E=" + brief(E) + " F=" + brief(F) + " f=" + brief(f);
          ++r.cases;
          if (!(compose(h2, g2) == f) || !has_complete_section_image(g2))
            fail(r, "alternate factorization is malformed" + where);
          std::size_t linking = 0;
          for_each_hom(a.G, G2, {HomFlag::ClassBijective}, [&](const std::vector<std::size_t>& img) {
            const PointMap phi(a.G, G2, img);
            if (is_isomorphism(phi) && compose(phi, a.g) == g2 && compose(h2, phi) == a.h) ++linking;
            return true;
          });
          if (linking != 1) fail(r, std::to_string(linking) + " linking isomorphisms" + where);
        }
  });
}

// ---------------------------------------------------------------- theory lattice

CheckResult check_lattice_laws(std::size_t n) {
  return timed("lattice-laws", [&](CheckResult& r) {
    const auto B = theory_battery();
    std::map<std::pair<std::string, std::string>, bool> memo;
    auto implies = [&](const Theory& a, const Theory& b) {
      const auto key = std::make_pair(a.to_string(), b.to_string());
      auto it = memo.find(key);
      if (it != memo.end()) return it->second;
      ++r.cases;
      return memo[key] = implies_star_n(a, b, n).pass;
    };
    for (std::size_t i = 0; i < B.size(); ++i)
      for (std::size_t j = 0; j < B.size(); ++j) {
        const std::string where = " sigma=" + print(B[i].sentence) + " tau=" + print(B[j].sentence);
        const Theory meet = theory_tensor({B[i], B[j]}).theory;
        const Theory join = theory_oplus({B[i], B[j]}).theory;
        if (!implies(meet, B[i]) || !implies(meet, B[j])) fail(r, "tensor is not a lower bound" + where);
        if (!implies(B[i], join) || !implies(B[j], join)) fail(r, "oplus is not an upper bound" + where);
        for (const Theory& rho : B) {
          if (implies(rho, B[i]) && implies(rho, B[j]) && !implies(rho, meet))
            fail(r, "tensor is not greatest" + where + " rho=" + print(rho.sentence));
          if (implies(B[i], rho) && implies(B[j], rho) && !implies(join, rho))
            fail(r, "oplus is not least" + where + " rho=" + print(rho.sentence));
        }
      }
  });
}

CheckResult check_distributivity(std::size_t n) {
  return timed("distributivity", [&](CheckResult& r) {
    const auto B = theory_battery();
    const auto rels = relations_upto(n);
    for (const Theory& s : B)
      for (std::size_t a = 0; a < B.size(); ++a)
        for (std::size_t b = a; b < B.size(); ++b) {
          const Theory lhs = theory_oplus({s, theory_tensor({B[a], B[b]}).theory}).theory;
          const Theory rhs =
              theory_tensor({theory_oplus({s, B[a]}).theory, theory_oplus({s, B[b]}).theory}).theory;
          ModelCache cl, cr;
          for (const FinER& E : rels) {
            ++r.cases;
            if (structure_search(E, lhs, &cl).witness.has_value() != structure_search(E, rhs, &cr).witness.has_value())
              fail(r, "E=" + brief(E) + " sigma=" + print(s.sentence) + " tau1=" + print(B[a].sentence) +
                          " tau2=" + print(B[b].sentence));
          }
        }
  });
}

// ---------------------------------------------------------------- fiber spaces

namespace {

std::vector<FiberSpace> small_fiber_spaces(std::size_t max_base, std::size_t max_fiber) {
  std::vector<FiberSpace> out;
  for (const FinER& E : relations_upto(max_base)) {
    for (std::size_t n = 1; n <= max_fiber; ++n)
      for (const Cocycle& a : all_cocycles(E, n)) out.push_back(fiberspace_of(a));
    out.push_back(tautological(E));
  }
  return out;
}

bool same_fiber(const FiberSpace& S, std::size_t u, std::size_t v) { return S.p(u) == S.p(v); }

}  // namespace

CheckResult check_cocycle_roundtrip(std::size_t max_base, std::size_t max_fiber) {
  return timed("cocycle-roundtrip", [&](CheckResult& r) {
    for (const FinER& E : relations_upto(max_base))
      for (std::size_t n = 1; n <= max_fiber; ++n)
        for (const Cocycle& a : all_cocycles(E, n)) {
          ++r.cases;
          std::string where = " E=" + brief(E) + " n=" + std::to_string(n);
          for (const auto& [xy, p] : a.alpha) where += " " + std::to_string(xy.first) + std::to_string(xy.second) + perm_name(p);
          const FiberSpace S = fiberspace_of(a);
          const Cocycle b = cocycle_of(S);
          auto phi = cohomologous(a, b);
          if (!phi) {
            fail(r, "recovered cocycle not cohomologous" + where);
            continue;
          }
          for (const auto& [xy, p] : a.alpha)
            if (compose((*phi)[xy.second], p) != compose(b(xy.first, xy.second), (*phi)[xy.first]))
              fail(r, "cohomology witness fails" + where);
          if (!fiberwise_isomorphism(S, fiberspace_of(b))) fail(r, "round trip changes the fiber space" + where);
          // Another enumeration of the fibers gives a cohomologous cocycle.
          std::vector<Perm> T(E.size());
          for (std::size_t x = 0; x < E.size(); ++x) {
            T[x] = identity_perm(n);
            std::reverse(T[x].begin(), T[x].end());
          }
          if (!cohomologous(a, cocycle_of(S, T))) fail(r, "re-enumerated cocycle not cohomologous" + where);
        }
  });
}

CheckResult check_hom_correspondence(std::size_t max_points) {
  return timed("hom-correspondence", [&](CheckResult& r) {
    const auto rels = relations_upto(max_points);
    for (const FinER& E : rels)
      for (const FinER& F : rels) {
        const std::string where = " E=" + brief(E) + " F=" + brief(F);
        const FiberSpace S = tautological(E), T = tautological(F);
        // Pointwise Q-relatedness is equality of the class vectors.
        std::map<std::vector<std::size_t>, FiberMap> reps;
        for_each_fiber_map(S, T, [&](const PointMap& base, const PointMap& total) {
          ++r.cases;
          FiberMap m{S, T, base, total};
          std::vector<std::size_t> key(S.total.size());
          for (std::size_t v = 0; v < key.size(); ++v) key[v] = T.total.class_of(total(v));
          auto it = reps.find(key);
          if (it == reps.end()) {
            reps.emplace(key, m);
          } else if (!fiber_maps_equivalent(it->second, m) || !(decode_fiber_map(it->second) == decode_fiber_map(m))) {
            fail(r, "equivalent fiber maps decode differently" + where);
          }
          return true;
        });
        const auto homs = enumerate_homs(E, F, {HomFlag::Hom});
        if (reps.size() != homs.size())
          fail(r, std::to_string(reps.size()) + " classes vs " + std::to_string(homs.size()) + " homs" + where);
        std::set<std::vector<std::size_t>> hit;
        for (const PointMap& f : homs) {
          const FiberMap m = hom_correspondence(f);
          if (!(decode_fiber_map(m) == f)) fail(r, "decode of hat is not the identity" + where + " f=" + brief(f));
          std::vector<std::size_t> key(S.total.size());
          for (std::size_t v = 0; v < key.size(); ++v) key[v] = T.total.class_of(m.total_map(v));
          hit.insert(key);
        }
        if (hit.size() != homs.size()) fail(r, "distinct homs share a class" + where);
      }
  });
}

CheckResult check_fiber_factorization(std::size_t max_base, std::size_t max_fiber) {
  return timed("fiber-factorization", [&](CheckResult& r) {
    const auto spaces = small_fiber_spaces(max_base, max_fiber);
    for (const FiberSpace& S : spaces)
      for (const FiberSpace& T : spaces)
        for_each_fiber_map(S, T, [&](const PointMap& base, const PointMap& total) {
          ++r.cases;
          const FiberMap m{S, T, base, total};
          const FiberFactorization fz = fiber_factorize(m);
          const std::string where = " source=" + brief(S.total) + " target=" + brief(T.total) + " map=" + brief(total);
          fz.surjection.validate();
          fz.injection.validate();
          fz.bijection.validate();
          if (!(compose(fz.bijection.total_map, compose(fz.injection.total_map, fz.surjection.total_map)) == total) ||
              !(compose(fz.bijection.base_map, compose(fz.injection.base_map, fz.surjection.base_map)) == base))
            fail(r, "stages do not recompose" + where);
          if (!(fz.surjection.base_map == identity_map(S.base)) || !(fz.injection.base_map == identity_map(S.base)))
            fail(r, "first stages are not over the identity" + where);
          if (!fz.surjection.fiber_surjective() || !fz.injection.fiber_injective() || !fz.bijection.fiber_bijective())
            fail(r, "stage classification" + where);
          return true;
        });
  });
}

CheckResult check_fiber_ltimes_universal(std::size_t max_base, std::size_t max_fiber) {
  return timed("fiber-ltimes-universal", [&](CheckResult& r) {
    const Theory sigma = linear_order();
    std::vector<FiberSpace> spaces;
    for (const FinER& E : relations_upto(max_base))
      for (std::size_t n = 1; n <= max_fiber; ++n)
        for (const Cocycle& a : all_cocycles(E, n)) spaces.push_back(fiberspace_of(a));
    for (const FiberSpace& S : spaces) {
      const FiberLtimes L = fiber_ltimes(S, sigma);
      for (const FiberSpace& R : spaces) {
        // Compatible fiberwise models on R: choose on a class representative, transport.
        std::vector<std::vector<FinStructure>> per_class;
        for (const auto& cls : R.base.classes()) {
          const auto f0 = R.fiber(cls.front());
          std::vector<Point> names;
          for (std::size_t u : f0) names.push_back(R.total.point(u));
          std::vector<FinStructure> options;
          for (const FinStructure& M : models(sigma, names)) {
            FinStructure A(sigma.language, R.total.points());
            for (std::size_t x : cls) {
              const auto tr = fiber_transport(R, cls.front(), x);
              for (std::size_t s = 0; s < sigma.language.size(); ++s)
                for (const auto& t : M.tuples(s)) {
                  std::vector<Point> moved;
                  for (std::size_t v : t) moved.push_back(R.total.point(tr[v]));
                  A.add(sigma.language[s].name, moved);
                }
            }
            options.push_back(std::move(A));
          }
          per_class.push_back(std::move(options));
        }
        std::vector<FinStructure> structures;
        std::vector<std::size_t> choice(per_class.size(), 0);
        bool more = std::all_of(per_class.begin(), per_class.end(), [](const auto& v) { return !v.empty(); });
        while (more) {
          FinStructure A(sigma.language, R.total.points());
          for (std::size_t c = 0; c < per_class.size(); ++c)
            for (std::size_t s = 0; s < sigma.language.size(); ++s)
              for (const auto& t : per_class[c][choice[c]].tuples(s)) A.set(s, t, true);
          structures.push_back(std::move(A));
          std::size_t i = per_class.size();
          more = false;
          while (i > 0) {
            --i;
            if (++choice[i] < per_class[i].size()) {
              more = true;
              break;
            }
            choice[i] = 0;
          }
        }
        for_each_fiber_map(R, S, [&](const PointMap& base, const PointMap& total) {
          const FiberMap m{R, S, base, total};
          if (!m.fiber_bijective()) return true;
          for (const FinStructure& A : structures) {
            ++r.cases;
            const std::string where = " R=" + brief(R.total) + " S=" + brief(S.total) + " m=" + brief(total) + " A=" + brief(A);
            if (!fiber_structure_compatible(R, A)) fail(r, "transported structure rejected" + where);
            // h satisfies the three equations; the structure condition only
            // constrains tuples inside one fiber of R.
            auto works = [&](const PointMap& hb, const PointMap& ht) {
              if (!(compose(L.base_projection, hb) == base) || !(compose(L.lift, ht) == total)) return false;
              const FinStructure pulled = pullback(L.structure, R.total.points(), ht.images());
              FinStructure masked(sigma.language, R.total.points());
              for (std::size_t s = 0; s < sigma.language.size(); ++s)
                for (const auto& t : pulled.tuples(s))
                  if (std::all_of(t.begin(), t.end(), [&](std::size_t v) { return same_fiber(R, v, t.front()); }))
                    masked.set(s, t, true);
              return masked == A;
            };
            const auto [hb, ht] = fiber_ltimes_universal(L, m, A);
            FiberMap{R, L.space, hb, ht}.validate();
            if (!works(hb, ht)) fail(r, "constructed map fails the equations" + where);
            std::size_t count = 0;
            for_each_fiber_map(R, L.space, [&](const PointMap& b2, const PointMap& t2) {
              if (works(b2, t2)) ++count;
              return true;
            });
            if (count != 1) fail(r, std::to_string(count) + " mediating fiber maps" + where);
          }
          return true;
        });
      }
    }
  });
}

// ---------------------------------------------------------------- interpretations

namespace {

const std::vector<std::string> kFormulaVars = {"x1", "x2", "y", "z"};

Formula random_formula(std::mt19937_64& rng, const Language& L, std::size_t depth) {
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  auto var = [&] { return kFormulaVars[pick(kFormulaVars.size())]; };
  const std::size_t choice = depth == 0 ? pick(5) % 2 : pick(8);
  switch (choice) {
    case 0:
    case 2: {
      const Symbol& s = L[pick(L.size())];
      std::vector<std::string> args;
      for (std::size_t i = 0; i < s.arity; ++i) args.push_back(var());
      return f_atom(s.name, args);
    }
    case 1:
      return f_eq(var(), var());
    case 3:
      return f_not(random_formula(rng, L, depth - 1));
    case 4:
      return f_and({random_formula(rng, L, depth - 1), random_formula(rng, L, depth - 1)});
    case 5:
      return f_or({random_formula(rng, L, depth - 1), random_formula(rng, L, depth - 1)});
    case 6:
      return f_exists(var(), random_formula(rng, L, depth - 1));
    default:
      return f_forall(var(), random_formula(rng, L, depth - 1));
  }
}

// Random formula over M whose free variables lie among x1..x{arity}.
Formula random_assignment(std::mt19937_64& rng, const Language& M, std::size_t arity) {
  while (true) {
    Formula f = random_formula(rng, M, 2);
    const auto fv = free_vars(f);
    const auto allowed = interp_vars(arity);
    if (std::all_of(fv.begin(), fv.end(), [&](const std::string& v) {
          return std::find(allowed.begin(), allowed.end(), v) != allowed.end();
        }))
      return f;
  }
}

}  // namespace

CheckResult check_substitution(std::size_t max_points, std::uint64_t seed) {
  return timed("substitution", [&](CheckResult& r) {
    std::mt19937_64 rng(seed);
    const Language source = parse_language("R/2 P/1");
    const Theory target = theory("S/2 Q/1", "(true)");
    std::vector<Interpretation> alphas;
    auto add = [&](const std::string& R, const std::string& P) {
      alphas.emplace_back(source, target, std::map<std::string, Formula>{{"R", parse_formula(R)}, {"P", parse_formula(P)}});
    };
    add("(rel S x1 x2)", "(rel Q x1)");
    add("(exists x2 (and (rel S x1 x2) (rel S x2 x2)))", "(forall y (or (rel S x1 y) (rel Q y)))");
    add("(or (rel S x2 x1) (forall y (rel S x1 y)))", "(exists y (and (rel S x1 y) (not (rel Q y))))");
    for (int i = 0; i < 2; ++i)
      alphas.emplace_back(source, target,
                          std::map<std::string, Formula>{{"R", random_assignment(rng, target.language, 2)},
                                                         {"P", random_assignment(rng, target.language, 1)}});
    std::vector<Formula> battery;
    while (battery.size() < 16) {
      Formula f = random_formula(rng, source, 3);
      if (free_vars(f).size() <= 2) battery.push_back(f);
    }
    struct Prepared {
      std::vector<std::string> free;
      std::vector<CompiledFormula> lhs;  // over the source, once
      std::vector<std::vector<CompiledFormula>> rhs;  // [alpha], over the target
    };
    std::vector<Prepared> prepared;
    for (const Formula& phi : battery) {
      Prepared p;
      const auto fv = free_vars(phi);
      p.free.assign(fv.begin(), fv.end());
      p.lhs.emplace_back(phi, source, p.free);
      p.rhs.resize(alphas.size());
      for (std::size_t a = 0; a < alphas.size(); ++a) p.rhs[a].emplace_back(interp_apply(alphas[a], phi), target.language, p.free);
      prepared.push_back(std::move(p));
    }
    for (std::size_t n = 1; n <= max_points; ++n)
      for_each_structure(target.language, n, [&](const FinStructure& A) {
        if (!r.pass) return;
        for (std::size_t a = 0; a < alphas.size(); ++a) {
          const FinStructure reduct_A = alpha_reduct(alphas[a], A);
          for (std::size_t k = 0; k < prepared.size(); ++k) {
            const Prepared& p = prepared[k];
            std::vector<std::size_t> values(p.free.size(), 0);
            while (true) {
              ++r.cases;
              if (p.lhs[0].eval(reduct_A, values) != p.rhs[a][0].eval(A, values)) {
                fail(r, "phi=" + print(battery[k]) + " alpha#" + std::to_string(a) + " A=" + brief(A));
                return;
              }
              std::size_t i = 0;
              while (i < values.size() && ++values[i] == n) values[i++] = 0;
              if (i == values.size()) break;
            }
          }
        }
      });
  });
}

CheckResult check_morleyization(std::size_t max_points) {
  return timed("morleyization", [&](CheckResult& r) {
    const std::vector<Theory> samples = {
        theory("R/2", "(forall x (exists y (rel R x y)))"),
        linear_order(),
        theory("P/1 R/2", "(and (exists x (rel P x)) (forall x (forall y (implies (rel R x y) (rel R y x)))))"),
        theory("P/1 R/2", "(not (exists x (and (rel P x) (forall y (rel R x y)))))"),
        theory("P/1 R/2", "(forall x (exists y (and (rel R x y) (forall z (implies (rel R y z) (rel P z))))))"),
    };
    for (const Theory& T : samples) {
      const Morleyized m = morleyize(T);
      const std::string where = " T=" + print(T.sentence);
      if (!has_forall_exists_shape(m.theory.sentence)) fail(r, "expanded sentence has the wrong shape" + where);
      for (std::size_t n = 1; n <= max_points; ++n) {
        std::map<std::vector<std::vector<std::uint8_t>>, std::size_t> expansions;
        for_each_model_bits(T, n, [&](const auto& bits) {
          expansions[bits] = 0;
          return true;
        });
        for_each_model_bits(m.theory, n, [&](const auto& bits) {
          ++r.cases;
          const FinStructure red = alpha_reduct(m.reduct, make_structure(m.theory.language, n, bits));
          auto it = expansions.find(red.bits());
          if (it == expansions.end()) fail(r, "reduct is not a model n=" + std::to_string(n) + where);
          else ++it->second;
          return true;
        });
        for (const auto& [bits, count] : expansions)
          if (count != 1)
            fail(r, std::to_string(count) + " expansions of " + brief(make_structure(T.language, n, bits)) + where);
      }
    }
  });
}

CheckResult check_cross_theory(std::size_t max_points) {
  return timed("cross-theory", [&](CheckResult& r) {
    const std::vector<std::pair<Theory, Theory>> pairs = {{linear_order(), marked_point()}, {truth(), marked_point()}};
    for (const auto& [sigma, tau] : pairs) {
      const Theory X = theory_cross(sigma, tau);
      for (std::size_t n = 1; n <= max_points; ++n) {
        std::size_t count = 0;
        for_each_model_bits(X, n, [&](const auto& bits) {
          ++count;
          ++r.cases;
          const FinStructure A = make_structure(X.language, n, bits);
          if (!(cross_encode(sigma, tau, A.universe(), cross_decode(sigma, tau, A)) == A))
            fail(r, "decode then encode changes " + brief(A));
          return true;
        });
        if (count != cross_model_count(sigma, tau, n))
          fail(r, "model count " + std::to_string(count) + " at n=" + std::to_string(n));
      }
    }
  });
}

// ---------------------------------------------------------------- lattices

namespace {

// Product of chains with the given lengths as a sublattice of 2^k.
FinLattice chain_product(const std::vector<std::size_t>& lengths) {
  std::vector<std::uint32_t> masks = {0};
  std::size_t shift = 0;
  for (std::size_t len : lengths) {
    std::vector<std::uint32_t> next;
    for (std::uint32_t m : masks)
      for (std::size_t i = 0; i < len; ++i) next.push_back(m | (((1u << i) - 1) << shift));
    masks = std::move(next);
    shift += len - 1;
  }
  return FinLattice::from_sets(masks);
}

std::vector<std::pair<std::string, FinLattice>> lattice_corpus(std::size_t max_elements) {
  std::vector<std::pair<std::string, FinLattice>> out;
  for (std::size_t n = 1; n <= max_elements; ++n) out.emplace_back("chain" + std::to_string(n), FinLattice::chain(n));
  for (std::size_t k = 0; (std::size_t{1} << k) <= max_elements && k <= 4; ++k)
    out.emplace_back("powerset" + std::to_string(k), FinLattice::powerset(k));
  for (std::size_t a = 2; a <= max_elements; ++a)
    for (std::size_t b = a; a * b <= max_elements; ++b) {
      out.emplace_back("chains" + std::to_string(a) + "x" + std::to_string(b), chain_product({a, b}));
      for (std::size_t c = b; a * b * c <= max_elements; ++c)
        out.emplace_back("chains" + std::to_string(a) + "x" + std::to_string(b) + "x" + std::to_string(c),
                         chain_product({a, b, c}));
    }
  const std::vector<std::pair<std::string, std::vector<std::uint32_t>>> sets = {
      {"sets-v", {0, 1, 3, 5, 7}},
      {"sets-diamond-tail", {0, 1, 2, 3, 7}},
      {"sets-kite", {0, 1, 3, 7, 11, 15}},
  };
  for (const auto& [name, masks] : sets)
    if (masks.size() <= max_elements) out.emplace_back(name, FinLattice::from_sets(masks));
  return out;
}

std::size_t join_irreducibles(const FinLattice& L) {
  std::size_t count = 0;
  for (std::size_t j = 0; j < L.size(); ++j) {
    if (j == L.bottom()) continue;
    bool reducible = false;
    for (std::size_t a = 0; a < L.size() && !reducible; ++a)
      for (std::size_t b = 0; b < L.size() && !reducible; ++b)
        reducible = a != j && b != j && L.join(a, b) == j;
    if (!reducible) ++count;
  }
  return count;
}

}  // namespace

CheckResult check_priestley(std::size_t max_elements, std::size_t random_count, std::uint64_t seed) {
  return timed("priestley", [&](CheckResult& r) {
    auto one = [&](const std::string& name, const FinLattice& L) {
      ++r.cases;
      if (!L.distributive()) {
        fail(r, name + " is not distributive");
        return;
      }
      const PriestleyReport p = priestley(L);
      if (!p.iso() || p.upset_count != L.size()) fail(r, name + ": lattice differs from the upsets of its spectrum");
      if (p.filters.size() != join_irreducibles(L)) fail(r, name + ": prime filter count differs from join-irreducibles");
    };
    for (const auto& [name, L] : lattice_corpus(max_elements)) one(name, L);
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < random_count; ++i) {
      const std::size_t k = 1 + rng() % 5;
      one("random#" + std::to_string(i), random_distributive_lattice(rng, k, std::min<std::size_t>(max_elements, 16)));
    }
  });
}

CheckResult check_nondistributive_rejected() {
  return timed("nondistributive-rejected", [&](CheckResult& r) {
    for (const auto& [name, L] : {std::pair{"N5", FinLattice::n5()}, std::pair{"M3", FinLattice::m3()}}) {
      ++r.cases;
      if (L.distributive()) fail(r, std::string(name) + " reported distributive");
      try {
        priestley(L);
        fail(r, std::string(name) + " accepted by the duality");
      } catch (const input_error&) {
      }
    }
  });
}

CheckResult check_transfer(std::size_t pairs, std::uint64_t seed) {
  return timed("transfer", [&](CheckResult& r) {
    std::mt19937_64 rng(seed);
    const std::vector<std::string> vars = {"x", "y", "z"};
    std::vector<std::pair<std::string, FinLattice>> pool = lattice_corpus(12);
    for (int i = 0; i < 8; ++i) pool.emplace_back("random#" + std::to_string(i), random_distributive_lattice(rng, 4, 12));
    const FinLattice two = FinLattice::chain(2);
    std::size_t held = 0;
    for (std::size_t i = 0; i < pairs; ++i) {
      ++r.cases;
      const Term s = random_term(rng, vars, 5);
      const Term t = i % 2 == 0 ? monotone_dnf(s, vars) : random_term(rng, vars, 5);
      const auto& [name, L] = pool[rng() % pool.size()];
      const bool in_two = check_equation(s, t, two).holds;
      const bool in_L = check_equation(s, t, L).holds;
      held += in_two;
      // 2 embeds in every nontrivial distributive lattice, and conversely
      // identities of 2 hold in all of them.
      if (in_two && !in_L) fail(r, print(s) + " = " + print(t) + " holds in 2 but not in " + name);
      if (!in_two && in_L && L.size() >= 2) fail(r, print(s) + " = " + print(t) + " fails in 2 but holds in " + name);
    }
    if (held < pairs / 2) fail(r, "only " + std::to_string(held) + " identities held in 2");
  });
}

CheckResult check_retracts(std::size_t max_elements) {
  return timed("retracts", [&](CheckResult& r) {
    for (const auto& [name, L] : lattice_corpus(std::max<std::size_t>(max_elements, 4) * 2)) {
      const FinPoset& P = L.order();
      const std::size_t n = P.size();
      auto check = [&](const std::vector<std::size_t>& e) {
        if (!check_projection(P, e).projection()) return;
        ++r.cases;
        if (!retract_iso(P, e).verified) fail(r, name + ": retract iso fails for e=" + perm_name(e));
      };
      if (n <= max_elements) {
        std::vector<std::size_t> e(n, 0);
        while (true) {
          check(e);
          std::size_t i = 0;
          while (i < n && ++e[i] == n) e[i++] = 0;
          if (i == n) break;
        }
      } else {
        for (std::size_t a = 0; a < n; ++a) {
          std::vector<std::size_t> up(n), down(n);
          for (std::size_t x = 0; x < n; ++x) {
            up[x] = L.join(x, a);
            down[x] = L.meet(x, a);
          }
          check(up);
          check(down);
        }
      }
    }
  });
}

CheckResult check_catalog(std::size_t max_points) {
  return timed("catalog", [&](CheckResult& r) {
    const auto rels = relations_upto(max_points);
    r.cases = rels.size();
    const CatalogReport c = catalog_poset(rels);
    if (!c.is_preorder) fail(r, "cb reachability is not a preorder");
    if (!c.tensor_projections_cb) fail(r, "tensor projections are not class-bijective");
    if (!c.sum_injections_invariant) fail(r, "sum injections are not invariant embeddings");
    if (!c.tensor_mediates) fail(r, "tensor does not mediate");
  });
}

// ---------------------------------------------------------------- combinatorics

CheckResult check_wdp_harness(std::size_t structures, std::uint64_t seed) {
  return timed("wdp-harness", [&](CheckResult& r) {
    const Language L = parse_language("R/2");
    const std::size_t f_max = 2;
    const WdpBattery b = wdp_formulas(L, f_max, 100000);
    std::mt19937_64 rng(seed);
    std::size_t failing = 0, attempts = 0;
    while (failing < structures && attempts < 100000) {
      ++attempts;
      const std::size_t n = 2 + rng() % 3;
      FinStructure A(L, canonical_points(n));
      for (std::size_t k = 0; k < A.tuple_count(0); ++k) A.set_code(0, k, rng() % 3 == 0);
      const WdpHarnessResult h = wdp_harness(b, A, f_max);
      ++r.cases;
      if (!h.ok) fail(r, "harness inconsistent on " + brief(A));
      if (h.wdp_holds) continue;
      ++failing;
      if (!h.firing_n || !intersecting_check(h.family)) fail(r, "no intersecting family for " + brief(A));
    }
    if (failing < structures) fail(r, "only " + std::to_string(failing) + " structures failing the property found");
    r.detail = r.pass ? std::to_string(failing) + " failing structures" : r.detail;
  });
}

CheckResult check_family_reduce(std::size_t points, std::size_t arity, std::size_t t, double time_limit) {
  return timed("family-reduce", [&](CheckResult& r) {
    const auto t0 = Clock::now();
    std::vector<std::string> notes;
    // Unused time from quick sizes carries over to the larger ones.
    for (std::size_t p = arity; p <= points; ++p) {
      double budget = 0.0;
      if (time_limit > 0) budget = std::max(1e-3, (time_limit - since(t0)) / static_cast<double>(points - p + 1));
      const ExhaustiveReduceReport rep = reduce_all_intersecting(p, arity, t, budget);
      r.cases += rep.visited;
      std::ostringstream os;
      os << "p=" << p << " total=" << rep.total << " visited=" << rep.visited << " certified=" << rep.certified
         << " artifacts=" << rep.artifacts;
      if (rep.malformed) {
        os << " malformed=" << rep.malformed;
        r.pass = false;
      }
      if (!rep.complete) {
        const double rate = rep.families_per_second();
        os << " incomplete at " << static_cast<std::uint64_t>(rate) << " families/s, projected " << std::scientific
           << std::setprecision(2) << (rate > 0 ? static_cast<double>(rep.total) / rate : INFINITY) << " s";
        r.pass = false;
      }
      notes.push_back(os.str());
    }
    r.detail = join(notes, "; ");
  });
}

CheckResult check_subdivide(std::size_t max_vertices, std::size_t max_k) {
  return timed("subdivide", [&](CheckResult& r) {
    for (std::size_t n = 1; n <= max_vertices; ++n)
      for (const SimpleGraph& g : graphs_up_to_iso(n)) {
        const Graphing G = Graphing::from_graph(g.n, g.edges);
        for (std::size_t k = 1; k <= max_k; ++k) {
          ++r.cases;
          const Subdivision S = k_subdivide(G, k);
          const bool labeled = potential_labeling(S.graphing, k).has_value();
          const CycleReport cycles = enumerate_cycles(S.graphing, k);
          std::string where = " n=" + std::to_string(n) + " k=" + std::to_string(k) + " edges=";
          for (const auto& [a, b] : g.edges) where += std::to_string(a) + "-" + std::to_string(b) + ",";
          if (labeled != cycles.all_divisible()) fail(r, "labeling and cycle enumeration disagree" + where);
          if (!labeled) fail(r, "subdivision fails the mod-k check" + where);
          if (!classify_hom(S.inclusion).has(HomFlag::Embedding) || !has_complete_section_image(S.inclusion))
            fail(r, "inclusion is not a complete-section embedding" + where);
        }
      }
  });
}

CheckResult check_bipartite(std::size_t max_points) {
  return timed("bipartite", [&](CheckResult& r) {
    for (const FinER& E : relations_upto(max_points)) {
      const auto sizes = E.class_sizes();
      if (std::any_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s < 2; })) continue;
      ++r.cases;
      const Graphing G = bipartite_graphing(E);
      std::size_t want = 0;
      for (std::size_t s : sizes) want += (s / 2) * (s - s / 2);
      if (!two_coloring(G) || G.edges().size() != want || !(G.er() == E)) fail(r, "E=" + brief(E));
    }
  });
}

// ---------------------------------------------------------------- suites

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"constructions", "scott",   "factorize", "fiber",
                                                 "theoryalg",     "lattice", "combinat"};
  return names;
}

SuiteReport run_suite(const std::string& name, std::size_t max_size, std::uint64_t seed) {
  SuiteReport rep;
  rep.suite = name;
  rep.max_size = max_size;
  rep.seed = seed;
  const std::size_t m = std::max<std::size_t>(max_size, 1);
  auto cap = [&](std::size_t extra, std::size_t limit) { return std::min(m + extra, limit); };
  auto& c = rep.checks;
  if (name == "constructions") {
    c.push_back(check_ltimes_universal(cap(0, 3), cap(1, 4)));
    c.push_back(check_tensor_universal(cap(0, 3)));
    c.push_back(check_tensor_identities(cap(0, 3)));
    c.push_back(check_skew_ltimes(cap(0, 3)));
  } else if (name == "scott") {
    c.push_back(check_scott_counts(cap(0, 3), cap(0, 3)));
    c.push_back(check_scott_semantics(cap(0, 3), cap(0, 3)));
    c.push_back(check_scott_roundtrip(cap(0, 3), cap(0, 3)));
  } else if (name == "factorize") {
    c.push_back(check_factorizations(cap(1, 4)));
    c.push_back(check_factor_uniqueness(cap(0, 3)));
  } else if (name == "fiber") {
    c.push_back(check_cocycle_roundtrip(cap(0, 3), cap(0, 3)));
    c.push_back(check_hom_correspondence(cap(0, 3)));
    c.push_back(check_fiber_factorization(cap(0, 2), 2));
    c.push_back(check_fiber_ltimes_universal(cap(0, 2), 2));
  } else if (name == "theoryalg") {
    c.push_back(check_lattice_laws(cap(1, 4)));
    c.push_back(check_distributivity(cap(1, 4)));
    c.push_back(check_substitution(cap(0, 3), seed));
    c.push_back(check_morleyization(cap(0, 3)));
    c.push_back(check_cross_theory(cap(0, 3)));
  } else if (name == "lattice") {
    c.push_back(check_priestley(max_size >= 4 ? std::min<std::size_t>(max_size, 16) : 8, 100, seed));
    c.push_back(check_nondistributive_rejected());
    c.push_back(check_transfer(1000, seed));
    c.push_back(check_retracts(cap(2, 5)));
    c.push_back(check_catalog(cap(0, 3)));
  } else if (name == "combinat") {
    c.push_back(check_wdp_harness(50, seed));
    c.push_back(check_family_reduce(cap(3, 6), 4, 4, 0.0));
    c.push_back(check_subdivide(cap(3, 8), 4));
    c.push_back(check_bipartite(cap(1, 5)));
  } else {
    throw input_error("unknown suite '" + name + "' (expected one of " + join(suite_names(), ", ") + ", all)");
  }
  return rep;
}

std::vector<SuiteReport> run_suites(const std::vector<std::string>& names, std::size_t max_size, std::uint64_t seed,
                                    bool parallel) {
  std::vector<std::string> expanded;
  for (const auto& n : names) {
    if (n == "all") expanded.insert(expanded.end(), suite_names().begin(), suite_names().end());
    else if (std::find(suite_names().begin(), suite_names().end(), n) != suite_names().end()) expanded.push_back(n);
    else throw input_error("unknown suite '" + n + "' (expected one of " + join(suite_names(), ", ") + ", all)");
  }
  std::vector<SuiteReport> out(expanded.size());
  if (!parallel || expanded.size() < 2) {
    for (std::size_t i = 0; i < expanded.size(); ++i) out[i] = run_suite(expanded[i], max_size, seed);
    return out;
  }
  // Each thread owns one slot; checks catch their own exceptions.
  std::vector<std::thread> workers;
  for (std::size_t i = 0; i < expanded.size(); ++i)
    workers.emplace_back([&, i] { out[i] = run_suite(expanded[i], max_size, seed); });
  for (auto& w : workers) w.join();
  return out;
}

std::string format_reports(const std::vector<SuiteReport>& reports, bool timing) {
  std::ostringstream os;
  std::size_t total = 0, passed = 0;
  for (const auto& rep : reports) {
    os << "suite " << rep.suite << " (max " << rep.max_size << ", seed " << rep.seed << ")\n";
    for (const auto& c : rep.checks) {
      ++total;
      passed += c.pass;
      os << "  " << (c.pass ? "PASS" : "FAIL") << " " << rep.suite << "/" << c.name << " cases=" << c.cases;
      if (timing) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", c.seconds);
        os << " time=" << buf << "s";
      }
      if (!c.detail.empty()) os << " :: " << c.detail;
      os << "\n";
    }
  }
  os << "verdict: " << (passed == total ? "PASS" : "FAIL") << " (" << passed << "/" << total << " checks)\n";
  return os.str();
}

std::string reports_to_json(const std::vector<SuiteReport>& reports, bool timing) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& rep : reports) {
    nlohmann::ordered_json s;
    s["suite"] = rep.suite;
    s["max"] = rep.max_size;
    s["seed"] = rep.seed;
    s["pass"] = rep.pass();
    s["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : rep.checks) {
      nlohmann::ordered_json j;
      j["name"] = c.name;
      j["pass"] = c.pass;
      j["cases"] = c.cases;
      if (!c.detail.empty()) j["detail"] = c.detail;
      if (timing) j["seconds"] = c.seconds;
      s["checks"].push_back(std::move(j));
    }
    out.push_back(std::move(s));
  }
  return out.dump(2) + "\n";
}

}  // namespace structo

#include "structo/factorize.hpp"

#include "structo/error.hpp"
#include "structo/util.hpp"

namespace structo {

CiFactorization factor_ci(const PointMap& f) {
  if (!classify_hom(f).has(HomFlag::ClassInjective)) throw input_error("factor_ci: map is not a class-injective homomorphism");
  const FinER& E = f.domain();
  const FinER& F = f.codomain();
  std::vector<Point> names;
  std::vector<std::size_t> labels, second;
  for (std::size_t c = 0; c < E.num_classes(); ++c) {
    const std::size_t m = E.classes()[c].front();
    for (std::size_t y : F.class_members(f(m))) {
      names.push_back(tuple_name({E.point(m), F.point(y)}));
      labels.push_back(c);
      second.push_back(y);
    }
  }
  CiFactorization out;
  out.G = FinER::from_labels(names, labels);
  auto G = std::make_shared<const FinER>(out.G);
  std::vector<std::size_t> h(names.size()), g(E.size());
  for (std::size_t k = 0; k < names.size(); ++k) h[G->index(names[k])] = second[k];
  for (std::size_t x = 0; x < E.size(); ++x)
    g[x] = G->index(tuple_name({E.point(E.class_members(x).front()), F.point(f(x))}));
  out.g = PointMap(f.domain_ptr(), G, g);
  out.h = PointMap(G, f.codomain_ptr(), h);

  const HomClass gc = classify_hom(out.g);
  if (!gc.has(HomFlag::Embedding) || !has_complete_section_image(out.g))
    throw contract_error("factor_ci: first stage is not a complete-section embedding");
  if (!classify_hom(out.h).has(HomFlag::ClassBijective)) throw contract_error("factor_ci: second stage is not class-bijective");
  if (!(compose(out.h, out.g) == f)) throw contract_error("factor_ci: stages do not recompose");
  return out;
}

Descent descend(const PointMap& f) {
  if (!classify_hom(f).has(HomFlag::Hom)) throw input_error("map is not a homomorphism");
  QuotientResult q = quotient_by_subrelation(f.domain(), kernel_meet(f));
  const FinER& G = q.quotient;
  std::vector<std::size_t> img(G.size());
  for (std::size_t x = 0; x < f.domain().size(); ++x) img[q.projection(x)] = f(x);
  PointMap d(q.projection.codomain_ptr(), f.codomain_ptr(), img);
  return {std::move(q), std::move(d)};
}

SmoothFactorization factor_smooth(const PointMap& f) {
  Descent d = descend(f);
  // Distinct (E ∩ ker f)-blocks in one E-class have distinct images, so the
  // descended map is class-injective; checked rather than assumed.
  if (!classify_hom(d.descended).has(HomFlag::ClassInjective)) {
    for (const auto& c : d.quotient.quotient.classes())
      for (std::size_t a : c)
        for (std::size_t b : c)
          if (a < b && d.descended(a) == d.descended(b))
            throw input_error("factor_smooth: descended map is not class-injective on the class of '" +
                              d.quotient.quotient.point(a) + "'");
  }
  CiFactorization ci = factor_ci(d.descended);
  SmoothFactorization out{d.quotient.quotient, ci.G, d.quotient.projection, ci.g, ci.h};
  const HomClass gc = classify_hom(out.g);
  if (!gc.has(HomFlag::Reduction) || !is_surjective(out.g)) throw contract_error("factor_smooth: g is not a surjective reduction");
  if (!(compose(out.k, compose(out.h, out.g)) == f)) throw contract_error("factor_smooth: stages do not recompose");
  return out;
}

CsFactorization factor_cs_smooth(const PointMap& f) {
  if (!classify_hom(f).has(HomFlag::ClassSurjective)) throw input_error("factor_cs_smooth: map is not class-surjective");
  Descent d = descend(f);
  if (!classify_hom(d.descended).has(HomFlag::ClassBijective))
    throw contract_error("factor_cs_smooth: descended map is not class-bijective");
  CsFactorization out{d.quotient.quotient, d.quotient.projection, d.descended};
  if (!classify_hom(out.g).has(HomFlag::Reduction) || !is_surjective(out.g))
    throw contract_error("factor_cs_smooth: g is not a surjective reduction");
  if (!(compose(out.k, out.g) == f)) throw contract_error("factor_cs_smooth: stages do not recompose");
  return out;
}

}  // namespace structo

#pragma once

#include "structo/eqrel.hpp"

namespace structo {

// f = h ∘ g with g : E -> G an embedding whose image meets every G-class and
// h : G -> F class-bijective. G has points "(m,y)" with m the least point of an
// E-class C and y ranging over the F-class of f(C).
struct CiFactorization {
  FinER G;
  PointMap g, h;
};
CiFactorization factor_ci(const PointMap& f);

// f = k ∘ h ∘ g: g a surjective reduction onto the quotient by E ∩ ker f,
// h a complete-section embedding, k class-bijective.
struct SmoothFactorization {
  FinER G, H;
  PointMap g, h, k;
};
SmoothFactorization factor_smooth(const PointMap& f);

// For class-surjective f: f = k ∘ g, g a surjective reduction, k class-bijective.
struct CsFactorization {
  FinER G;
  PointMap g, k;
};
CsFactorization factor_cs_smooth(const PointMap& f);

// The map induced on the quotient by E ∩ ker f, with the quotient map.
struct Descent {
  QuotientResult quotient;
  PointMap descended;
};
Descent descend(const PointMap& f);

}  // namespace structo

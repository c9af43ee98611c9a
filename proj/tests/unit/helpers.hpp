#pragma once

#include <map>
#include <string>
#include <vector>

#include "structo/structo.hpp"

namespace structo::test {

// "a b | c" : blocks separated by '|'.
inline FinER er(const std::string& blocks_text) {
  std::vector<std::vector<Point>> blocks(1);
  std::vector<Point> points;
  for (const auto& tok : split_ws(blocks_text)) {
    if (tok == "|") {
      blocks.emplace_back();
      continue;
    }
    blocks.back().push_back(tok);
    points.push_back(tok);
  }
  if (points.empty()) return FinER{};
  return FinER(points, blocks);
}

inline PointMap map(const FinER& E, const FinER& F, const std::map<Point, Point>& m) {
  return PointMap::from_names(E, F, m);
}

inline Theory theory(const std::string& lang, const std::string& sentence) {
  return Theory(parse_language(lang), parse_formula(sentence));
}

inline Theory linear_order() {
  return theory("R/2",
                "(and (forall x (not (rel R x x)))"
                " (forall x (forall y (forall z (implies (and (rel R x y) (rel R y z)) (rel R x z)))))"
                " (forall x (forall y (or (eq x y) (rel R x y) (rel R y x)))))");
}

inline Theory exactly_two() {
  return theory("R/2", "(exists x (exists y (and (not (eq x y)) (forall z (or (eq z x) (eq z y))))))");
}

inline Theory exactly_one() { return theory("R/2", "(exists x (forall y (eq x y)))"); }

inline Theory truth(const std::string& lang = "R/2") { return theory(lang, "(true)"); }

inline std::vector<std::size_t> sizes(const FinER& E) { return E.class_sizes(); }

}  // namespace structo::test

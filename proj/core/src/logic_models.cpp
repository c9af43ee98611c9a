#include <algorithm>

#include "structo/error.hpp"
#include "structo/logic.hpp"
#include "structo/util.hpp"

namespace structo {

void for_each_model_bits(const Theory& T, std::size_t n,
                         const std::function<bool(const std::vector<std::vector<std::uint8_t>>&)>& visit) {
  const CompiledFormula cf(T.sentence, T.language);
  std::vector<std::vector<std::uint8_t>> bits;
  std::vector<std::pair<std::size_t, std::size_t>> positions;
  for (std::size_t s = 0; s < T.language.size(); ++s) {
    const std::size_t count = ipow(n, T.language[s].arity);
    bits.emplace_back(count, 2);
    for (std::size_t c = 0; c < count; ++c) positions.emplace_back(s, c);
  }
  bool stop = false;
  // Every completion of positions [pos, end) is a model.
  std::function<void(std::size_t)> complete = [&](std::size_t pos) {
    if (stop) return;
    if (pos == positions.size()) {
      if (!visit(bits)) stop = true;
      return;
    }
    auto [s, c] = positions[pos];
    for (std::uint8_t b : {0, 1}) {
      bits[s][c] = b;
      complete(pos + 1);
      if (stop) break;
    }
    bits[s][c] = 2;
  };
  std::function<void(std::size_t)> search = [&](std::size_t pos) {
    if (stop) return;
    const int r = cf.eval3(n, bits);
    if (r == 0) return;
    if (r == 1) {
      complete(pos);
      return;
    }
    // Unknown with every bit fixed cannot happen; guard anyway.
    if (pos == positions.size()) return;
    auto [s, c] = positions[pos];
    for (std::uint8_t b : {0, 1}) {
      bits[s][c] = b;
      search(pos + 1);
      if (stop) break;
    }
    bits[s][c] = 2;
  };
  search(0);
}

std::vector<FinStructure> models(const Theory& T, const std::vector<Point>& universe) {
  std::vector<FinStructure> out;
  const FinStructure blank(T.language, universe);
  for_each_model_bits(T, universe.size(), [&](const std::vector<std::vector<std::uint8_t>>& bits) {
    FinStructure A = blank;
    A.mutable_bits() = bits;
    out.push_back(std::move(A));
    return true;
  });
  return out;
}

std::size_t count_models(const Theory& T, std::size_t n) {
  std::size_t count = 0;
  for_each_model_bits(T, n, [&](const std::vector<std::vector<std::uint8_t>>&) {
    ++count;
    return true;
  });
  return count;
}

std::optional<FinStructure> first_model(const Theory& T, const std::vector<Point>& universe) {
  std::optional<FinStructure> out;
  for_each_model_bits(T, universe.size(), [&](const std::vector<std::vector<std::uint8_t>>& bits) {
    FinStructure A(T.language, universe);
    A.mutable_bits() = bits;
    out = std::move(A);
    return false;
  });
  return out;
}

SearchResult structure_search(const FinER& E, const Theory& T, ModelCache* cache) {
  ModelCache local;
  ModelCache& memo = cache ? *cache : local;
  SearchResult result;
  FinStructure global(T.language, E.points());
  for (std::size_t ci = 0; ci < E.num_classes(); ++ci) {
    const auto& members = E.classes()[ci];
    const std::size_t m = members.size();
    auto it = memo.find(m);
    if (it == memo.end()) {
      std::optional<std::vector<std::vector<std::uint8_t>>> first;
      for_each_model_bits(T, m, [&](const std::vector<std::vector<std::uint8_t>>& bits) {
        first = bits;
        return false;
      });
      it = memo.emplace(m, std::move(first)).first;
    }
    if (!it->second) {
      result.failed_class = ci;
      return result;
    }
    // Class members are sorted, so index i of the class model is members[i].
    const auto& bits = *it->second;
    for (std::size_t s = 0; s < T.language.size(); ++s) {
      const std::size_t r = T.language[s].arity;
      for (std::size_t code = 0; code < bits[s].size(); ++code) {
        if (!bits[s][code]) continue;
        std::vector<std::size_t> t(r);
        std::size_t x = code;
        for (std::size_t k = r; k-- > 0;) {
          t[k] = members[x % m];
          x /= m;
        }
        global.set(s, t, true);
      }
    }
  }
  StructuredER witness(E, std::move(global));
  for (std::size_t ci = 0; ci < E.num_classes(); ++ci)
    if (!satisfies(class_structure(witness, E.classes()[ci].front()), T))
      throw contract_error("structure_search produced a non-model on class " + std::to_string(ci));
  result.witness = std::move(witness);
  return result;
}

ImpliesResult implies_star_n(const Theory& sigma, const Theory& tau, std::size_t n) {
  ImpliesResult out;
  out.size_warning = n > 6;
  ModelCache cs, ct;
  for (std::size_t m = 0; m <= n; ++m) {
    const auto pts = canonical_points(m);
    for (const auto& labels : set_partitions(m)) {
      FinER E = FinER::from_labels(pts, labels);
      ++out.relations_checked;
      if (!structure_search(E, sigma, &cs).witness) continue;
      if (structure_search(E, tau, &ct).witness) continue;
      out.pass = false;
      out.counterexample = std::move(E);
      return out;
    }
  }
  return out;
}

}  // namespace structo

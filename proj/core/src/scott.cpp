#include "structo/scott.hpp"

#include <algorithm>

#include "structo/error.hpp"
#include "structo/util.hpp"

namespace structo {

CodedER code_er(const FinER& E) {
  if (E.empty()) throw input_error("cannot code an empty relation");
  CodedER C;
  C.er = E;
  C.bits = 1;
  while ((std::size_t{1} << C.bits) < E.size()) ++C.bits;
  C.codes.resize(E.size());
  for (std::size_t i = 0; i < E.size(); ++i) C.codes[i] = i;
  std::size_t max_class = 0;
  for (const auto& c : E.classes()) max_class = std::max(max_class, c.size());
  C.g.assign(max_class, std::vector<std::size_t>(E.size()));
  for (const auto& c : E.classes())
    for (std::size_t pos = 0; pos < c.size(); ++pos)
      for (std::size_t i = 0; i < max_class; ++i) C.g[i][c[pos]] = c[(pos + i) % c.size()];
  // The graphs of the g_i cover E exactly.
  for (const auto& c : E.classes())
    for (std::size_t x : c) {
      std::vector<bool> seen(E.size(), false);
      for (const auto& gi : C.g) seen[gi[x]] = true;
      for (std::size_t y = 0; y < E.size(); ++y)
        if (seen[y] != E.related(x, y)) throw contract_error("code_er: decomposition does not cover E");
    }
  return C;
}

Language scott_language(std::size_t bits, bool with_marker) {
  Language L;
  for (std::size_t j = 0; j < bits; ++j) L.add({"R" + std::to_string(j), 1});
  if (with_marker) L.add({"P", 1});
  return L;
}

namespace {

Formula code_at(std::size_t code, std::size_t bits, const std::string& v) {
  std::vector<Formula> lits;
  for (std::size_t j = 0; j < bits; ++j) {
    Formula a = f_atom("R" + std::to_string(j), {v});
    lits.push_back((code >> j) & 1 ? a : f_not(a));
  }
  return f_and(lits);
}

Formula same_code(std::size_t bits, const std::string& x, const std::string& y) {
  std::vector<Formula> parts;
  for (std::size_t j = 0; j < bits; ++j) {
    const std::string r = "R" + std::to_string(j);
    parts.push_back(f_iff(f_atom(r, {x}), f_atom(r, {y})));
  }
  return f_and(parts);
}

}  // namespace

Formula scott_phi(const CodedER& C, std::size_t i, const std::string& x, const std::string& y) {
  std::vector<Formula> cases;
  for (std::size_t p = 0; p < C.er.size(); ++p)
    cases.push_back(f_and({code_at(C.codes[p], C.bits, x), code_at(C.codes[C.g[i][p]], C.bits, y)}));
  return f_or(cases);
}

ScottTheory scott_theory(const CodedER& C, std::size_t width) {
  if (width == 0) width = C.bits;
  if (width < C.bits) throw input_error("padding width is smaller than the coding width");
  ScottTheory S;
  S.bits = width;
  S.language = scott_language(width);
  S.sm_language = scott_language(width, true);
  std::vector<Formula> any_i, all_i;
  for (std::size_t i = 0; i < C.g.size(); ++i) {
    any_i.push_back(scott_phi(C, i, "x", "y"));
    all_i.push_back(f_exists("y", scott_phi(C, i, "x", "y")));
  }
  S.sigma_h = f_forall("x", f_forall("y", f_or(any_i)));
  S.sigma_ci = f_forall("x", f_forall("y", f_implies(same_code(width, "x", "y"), f_eq("x", "y"))));
  S.sigma_cs = f_forall("x", f_and(all_i));
  S.sigma_sm = f_forall("x", f_exists_unique("y", f_and({f_atom("P", {"y"}), same_code(width, "x", "y")})));
  std::vector<Formula> pads;
  for (std::size_t j = C.bits; j < width; ++j) pads.push_back(f_not(f_atom("R" + std::to_string(j), {"x"})));
  S.pad = pads.empty() ? f_true() : f_forall("x", f_and(pads));
  S.sigma = f_and({S.sigma_h, S.sigma_ci, S.sigma_cs});
  return S;
}

namespace {

Formula with_pad(const ScottTheory& S, std::vector<Formula> parts) {
  if (S.pad->op != Op::True) parts.push_back(S.pad);
  return parts.size() == 1 ? parts.front() : f_and(parts);
}

}  // namespace

Theory ScottTheory::theory() const { return Theory(language, with_pad(*this, {sigma_h, sigma_ci, sigma_cs})); }
Theory ScottTheory::h() const { return Theory(language, with_pad(*this, {sigma_h})); }
Theory ScottTheory::ci() const { return Theory(language, with_pad(*this, {sigma_ci})); }
Theory ScottTheory::cs() const { return Theory(language, with_pad(*this, {sigma_cs})); }
Theory ScottTheory::cih() const { return Theory(language, with_pad(*this, {sigma_h, sigma_ci})); }
Theory ScottTheory::smh() const { return Theory(sm_language, with_pad(*this, {sigma_h, sigma_sm})); }
Theory ScottTheory::cssmh() const { return Theory(sm_language, with_pad(*this, {sigma_h, sigma_cs, sigma_sm})); }

Theory ScottTheory::by_name(const std::string& name) const {
  if (name == "sigma") return theory();
  if (name == "sigma-h") return h();
  if (name == "sigma-ci") return ci();
  if (name == "sigma-cs") return cs();
  if (name == "sigma-sm") return Theory(sm_language, with_pad(*this, {sigma_sm}));
  if (name == "sigma-cih") return cih();
  if (name == "sigma-smh") return smh();
  if (name == "sigma-cssmh") return cssmh();
  throw input_error("unknown sentence '" + name +
                    "' (expected sigma, sigma-h, sigma-ci, sigma-cs, sigma-sm, sigma-cih, sigma-smh or sigma-cssmh)");
}

std::size_t read_code(const FinStructure& A, std::size_t point) {
  std::size_t code = 0;
  for (std::size_t s = 0; s < A.language().size(); ++s) {
    const Symbol& sym = A.language()[s];
    if (sym.arity != 1 || sym.name.size() < 2 || sym.name[0] != 'R') continue;
    const std::string digits = sym.name.substr(1);
    if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) continue;
    if (A.holds_code(s, point)) code |= std::size_t{1} << std::stoul(digits);
  }
  return code;
}

bool classwise_satisfies(const StructuredER& A, const Theory& T) {
  const CompiledFormula cf(T.sentence, T.language);
  for (const auto& c : A.er.classes())
    if (!cf.eval(restrict_structure(A.structure, c))) return false;
  return true;
}

PointMap structures_to_cb(const StructuredER& A, const CodedER& C) {
  const ScottTheory S = scott_theory(C, std::max(C.bits, A.structure.language().size()));
  if (!(A.structure.language() == S.language)) throw input_error("structure is not over the coded language");
  std::vector<std::size_t> img(A.er.size());
  for (std::size_t y = 0; y < A.er.size(); ++y) {
    const std::size_t code = read_code(A.structure, y);
    auto it = std::find(C.codes.begin(), C.codes.end(), code);
    if (it == C.codes.end())
      throw decode_error("point '" + A.er.point(y) + "' carries code " + std::to_string(code) +
                         " which names no point of the coded relation");
    img[y] = static_cast<std::size_t>(it - C.codes.begin());
  }
  if (!classwise_satisfies(A, S.theory())) throw input_error("structure does not satisfy the Scott sentence classwise");
  PointMap f(A.er, C.er, img);
  if (!classify_hom(f).has(HomFlag::ClassBijective)) throw contract_error("decoded map is not class-bijective");
  return f;
}

StructuredER cb_to_structure(const PointMap& f, const CodedER& C) {
  if (!(f.codomain() == C.er)) throw input_error("map does not land in the coded relation");
  if (!classify_hom(f).has(HomFlag::ClassBijective)) throw input_error("map is not class-bijective");
  FinStructure A(scott_language(C.bits), f.domain().points());
  for (std::size_t y = 0; y < f.domain().size(); ++y)
    for (std::size_t j = 0; j < C.bits; ++j)
      if ((C.codes[f(y)] >> j) & 1) A.set(j, {y}, true);
  return StructuredER(f.domain(), A);
}

std::size_t count_structures(const FinER& F, const Theory& T) {
  std::map<std::size_t, std::size_t> per_size;
  std::size_t total = 1;
  for (const auto& c : F.classes()) {
    auto it = per_size.find(c.size());
    if (it == per_size.end()) it = per_size.emplace(c.size(), count_models(T, c.size())).first;
    total *= it->second;
  }
  return total;
}

std::vector<StructuredER> enumerate_structures(const FinER& F, const Theory& T) {
  if (T.language.max_arity() > 1) throw input_error("enumerate_structures handles unary languages only");
  std::vector<std::vector<std::vector<std::vector<std::uint8_t>>>> per_class;
  for (const auto& c : F.classes()) {
    std::vector<std::vector<std::vector<std::uint8_t>>> ms;
    for_each_model_bits(T, c.size(), [&](const std::vector<std::vector<std::uint8_t>>& b) {
      ms.push_back(b);
      return true;
    });
    per_class.push_back(std::move(ms));
  }
  std::vector<StructuredER> out;
  std::vector<std::size_t> choice(per_class.size(), 0);
  for (const auto& ms : per_class)
    if (ms.empty()) return out;
  while (true) {
    FinStructure A(T.language, F.points());
    for (std::size_t ci = 0; ci < per_class.size(); ++ci) {
      const auto& members = F.classes()[ci];
      const auto& b = per_class[ci][choice[ci]];
      for (std::size_t s = 0; s < T.language.size(); ++s)
        for (std::size_t k = 0; k < members.size(); ++k)
          if (b[s][k]) A.set(s, {members[k]}, true);
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

}  // namespace structo

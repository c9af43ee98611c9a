// structo command-line front end.
//
// Exit codes: 0 success or PASS, 1 counterexample or refusal, 2 input error.
// Reports start with ';' comment lines naming the command and the FNV-1a
// hash of every input, so a report is itself a valid input file and equal
// inputs give byte-identical output.

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "structo/structo.hpp"

namespace {

using namespace structo;
using json = nlohmann::ordered_json;

struct Options {
  bool json = false;
  bool timing = false;
  std::size_t max = 3;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> emit;
  std::size_t t = 0;
  std::size_t k = 0;
  std::string kind;
};

// Collects one command's output as titled sections.
class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  std::string load(const std::string& path) {
    std::string text = read_file(path);
    inputs_.emplace_back(path, hex64(fnv1a(text)));
    return text;
  }
  void note(const std::string& line) { notes_.push_back(line); }
  void add(const std::string& title, const std::string& text, json j = nullptr) {
    sections_.push_back({title, text, j.is_null() ? json(text) : std::move(j)});
  }
  void verdict(std::string v) { verdict_ = std::move(v); }

  int finish(const Options& o, int code) const {
    if (o.json) {
      json out;
      out["command"] = command_;
      out["inputs"] = json::array();
      for (const auto& [p, h] : inputs_) out["inputs"].push_back({{"path", p}, {"fnv1a", h}});
      if (!verdict_.empty()) out["verdict"] = verdict_;
      if (!notes_.empty()) out["notes"] = notes_;
      out["results"] = json::object();
      for (const auto& s : sections_) out["results"][s.title] = s.j;
      out["exit"] = code;
      std::cout << out.dump(2) << "\n";
      return code;
    }
    std::cout << "; structo " << command_ << "\n";
    for (const auto& [p, h] : inputs_) std::cout << "; input " << p << " fnv1a " << h << "\n";
    for (const auto& n : notes_) std::cout << "; " << n << "\n";
    for (const auto& s : sections_) {
      if (sections_.size() > 1) std::cout << "; -- " << s.title << "\n";
      std::cout << s.text;
      if (!s.text.empty() && s.text.back() != '\n') std::cout << "\n";
    }
    if (!verdict_.empty()) std::cout << "; verdict: " << verdict_ << "\n";
    return code;
  }

 private:
  struct Section {
    std::string title, text;
    json j;
  };
  std::string command_;
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::vector<std::string> notes_;
  std::vector<Section> sections_;
  std::string verdict_;
};

bool wants(const Options& o, const std::string& what, bool by_default = false) {
  if (o.emit.empty()) return by_default;
  for (const auto& e : o.emit)
    if (e == what || e == "all") return true;
  return false;
}

json as_json(const std::string& text) { return json::parse(text); }

void add_er(Report& r, const std::string& title, const FinER& E) { r.add(title, format_er(E), as_json(er_to_json(E))); }
void add_map(Report& r, const std::string& title, const PointMap& f) {
  r.add(title, format_map(f), as_json(map_to_json(f)));
}

FinER load_er(Report& r, const std::string& path) { return parse_er(r.load(path)); }
Theory load_theory(Report& r, const std::string& path) { return parse_theory(r.load(path)); }

// ---------------------------------------------------------------- relations

int cmd_check_hom(const Options& o, const std::vector<std::string>& a) {
  Report r("check-hom");
  const FinER E = load_er(r, a[0]), F = load_er(r, a[1]);
  const PointMap f = parse_map(r.load(a[2]), E, F);
  const HomClass c = classify_hom(f);
  r.add("classification", "flags: " + c.to_string() + "\n", json(c.to_string()));
  bool ok = c.has(HomFlag::Hom);
  if (!o.kind.empty()) ok = c.contains(HomClass::parse(o.kind));
  r.verdict(ok ? "PASS" : "FAIL");
  return r.finish(o, ok ? 0 : 1);
}

int cmd_enumerate_homs(const Options& o, const std::vector<std::string>& a) {
  Report r("enumerate-homs");
  const FinER E = load_er(r, a[0]), F = load_er(r, a[1]);
  const HomClass kind = o.kind.empty() ? HomClass{HomFlag::Hom} : HomClass::parse(o.kind);
  const auto maps = enumerate_homs(E, F, kind);
  r.note("kind " + kind.to_string());
  r.add("count", "; count " + std::to_string(maps.size()) + "\n", json(maps.size()));
  if (wants(o, "maps", true)) {
    std::string text;
    json arr = json::array();
    for (std::size_t i = 0; i < maps.size(); ++i) {
      text += "; map " + std::to_string(i) + "\n" + format_map(maps[i]);
      arr.push_back(as_json(map_to_json(maps[i])));
    }
    r.add("maps", text, arr);
  }
  return r.finish(o, 0);
}

int cmd_sum(const Options& o, const std::vector<std::string>& a) {
  Report r("sum");
  std::vector<FinER> Es;
  for (const auto& p : a) Es.push_back(load_er(r, p));
  const SumResult s = disjoint_sum(Es);
  add_er(r, "sum", s.sum);
  if (wants(o, "injections"))
    for (std::size_t i = 0; i < s.injections.size(); ++i) add_map(r, "injection " + std::to_string(i), s.injections[i]);
  return r.finish(o, 0);
}

int emit_product(Report& r, const Options& o, const ProductResult& p) {
  add_er(r, "product", p.product);
  if (wants(o, "projections")) {
    add_map(r, "pi1", p.pi1);
    add_map(r, "pi2", p.pi2);
  }
  return r.finish(o, 0);
}

int cmd_cross(const Options& o, const std::vector<std::string>& a) {
  Report r("cross");
  const FinER E = load_er(r, a[0]), F = load_er(r, a[1]);
  return emit_product(r, o, cross_product(E, F));
}

int cmd_fiber_product(const Options& o, const std::vector<std::string>& a) {
  Report r("fiber-product");
  const FinER E = load_er(r, a[0]), F = load_er(r, a[1]), G = load_er(r, a[2]);
  const PointMap f = parse_map(r.load(a[3]), E, G), g = parse_map(r.load(a[4]), F, G);
  return emit_product(r, o, fiber_product(f, g));
}

int cmd_independent(const Options& o, const std::vector<std::string>& a) {
  Report r("independent");
  std::vector<FinER> Es;
  for (const auto& p : a) Es.push_back(load_er(r, p));
  const JoinResult j = independent_join(Es);
  add_er(r, "join", j.join);
  r.verdict(j.independent ? "independent" : "not independent");
  return r.finish(o, j.independent ? 0 : 1);
}

// ---------------------------------------------------------------- constructions

int cmd_ltimes(const Options& o, const std::vector<std::string>& a) {
  Report r("ltimes");
  const FinER E = load_er(r, a[0]);
  const Theory T = load_theory(r, a[1]);
  const LtimesResult L = ltimes(E, T);
  for (std::size_t c : L.empty_classes) r.note("class of " + E.point(E.classes()[c].front()) + " admits no model");
  add_er(r, "space", L.space);
  if (wants(o, "projection")) add_map(r, "projection", L.projection);
  if (wants(o, "structure"))
    r.add("structure", format_structure(L.structure.structure), as_json(structure_to_json(L.structure.structure)));
  return r.finish(o, 0);
}

int cmd_tensor(const Options& o, const std::vector<std::string>& a) {
  Report r("tensor");
  const FinER E = load_er(r, a[0]), F = load_er(r, a[1]);
  const TensorResult T = tensor(E, F);
  add_er(r, "product", T.product);
  if (wants(o, "projections")) {
    add_map(r, "pi1", T.pi1);
    add_map(r, "pi2", T.pi2);
  }
  if (wants(o, "cross")) {
    const TensorCrossReport c = tensor_vs_cross(E, F);
    std::ostringstream os;
    os << "; (pi1,pi2) flags " << c.classification.to_string() << "\n; surjective " << c.surjective
       << "\n; injective " << c.injective << "\n; isomorphism " << c.isomorphism << "\n";
    r.add("cross", os.str());
  }
  return r.finish(o, 0);
}

int cmd_skew(const Options& o, const std::vector<std::string>& a) {
  Report r("skew");
  // With two inputs the cocycle file may omit the base relation lines.
  const std::string base = a.size() == 2 ? r.load(a[0]) : std::string();
  std::string text = r.load(a.back());
  if (a.size() == 2) {
    if (text.find("points:") == std::string::npos) text = base + "\n" + text;
    else if (!(parse_cocycle(text).base == parse_er(base))) throw input_error("cocycle base differs from " + a[0]);
  }
  const Cocycle c = parse_cocycle(text);
  const SkewResult s = skew_product(c);
  add_er(r, "space", s.space);
  if (wants(o, "projection")) add_map(r, "projection", s.pi1);
  return r.finish(o, 0);
}

// ---------------------------------------------------------------- Scott sentences

int cmd_scott(const Options& o, const std::vector<std::string>& a) {
  Report r("scott");
  const FinER E = load_er(r, a[0]);
  const CodedER C = code_er(E);
  const ScottTheory S = scott_theory(C, o.k);
  r.note("coding width " + std::to_string(C.bits) + (S.bits > C.bits ? ", padded to " + std::to_string(S.bits) : ""));
  const std::vector<std::string> names =
      o.emit.empty() ? std::vector<std::string>{"sigma"} : o.emit;
  for (const auto& n : names) r.add(n, format_theory(S.by_name(n)));
  return r.finish(o, 0);
}

int cmd_structure_search(const Options& o, const std::vector<std::string>& a) {
  Report r("structure-search");
  const FinER E = load_er(r, a[0]);
  const Theory T = load_theory(r, a[1]);
  const SearchResult s = structure_search(E, T);
  if (s.witness) {
    r.add("structure", format_structure(s.witness->structure), as_json(structure_to_json(s.witness->structure)));
    r.verdict("structurable");
    return r.finish(o, 0);
  }
  const auto cls = E.named_classes()[*s.failed_class];
  r.verdict("refused: class {" + join(cls, ",") + "} of size " + std::to_string(cls.size()) + " admits no model");
  return r.finish(o, 1);
}

int cmd_implies_star(const Options& o, const std::vector<std::string>& a) {
  Report r("implies-star");
  const Theory s = load_theory(r, a[0]), t = load_theory(r, a[1]);
  const ImpliesResult res = implies_star_n(s, t, o.max);
  r.note("relations checked " + std::to_string(res.relations_checked) + " up to " + std::to_string(o.max) + " points");
  if (res.size_warning) r.note("warning: sweep size is large");
  if (res.counterexample) {
    r.note("counterexample follows");
    add_er(r, "counterexample", *res.counterexample);
  }
  r.verdict(res.pass ? "PASS" : "FAIL");
  return r.finish(o, res.pass ? 0 : 1);
}

// ---------------------------------------------------------------- factorizations

int cmd_factorize(const Options& o, const std::string& which, const std::vector<std::string>& a) {
  Report r("factorize " + which);
  const FinER E = load_er(r, a[0]), F = load_er(r, a[1]);
  const PointMap f = parse_map(r.load(a[2]), E, F);
  auto stage = [&](const std::string& name, const PointMap& m) {
    r.add(name + " flags", "; " + name + " flags " + classify_hom(m).to_string() + "\n",
          json(classify_hom(m).to_string()));
    add_map(r, name, m);
  };
  if (which == "ci") {
    const CiFactorization c = factor_ci(f);
    add_er(r, "G", c.G);
    stage("g", c.g);
    stage("h", c.h);
  } else if (which == "smooth") {
    const SmoothFactorization s = factor_smooth(f);
    add_er(r, "G", s.G);
    add_er(r, "H", s.H);
    stage("g", s.g);
    stage("h", s.h);
    stage("k", s.k);
  } else {
    const CsFactorization c = factor_cs_smooth(f);
    add_er(r, "G", c.G);
    stage("g", c.g);
    stage("k", c.k);
  }
  return r.finish(o, 0);
}

// ---------------------------------------------------------------- fiber spaces

void add_fiber_space(Report& r, const std::string& title, const FiberSpace& S) { r.add(title, format_fiber_space(S)); }

int cmd_fiber(const Options& o, const std::string& which, const std::vector<std::string>& a) {
  Report r("fiber " + which);
  if (which == "pullback") {
    const FiberSpace S = parse_fiber_space(r.load(a[0]));
    const FinER E = load_er(r, a[1]);
    const FiberPullback P = pullback_fiber(S, parse_map(r.load(a[2]), E, S.base));
    add_fiber_space(r, "pullback", P.space);
    if (wants(o, "lift")) add_map(r, "lift", P.lift);
  } else if (which == "cocycle") {
    const FiberSpace S = parse_fiber_space(r.load(a[0]));
    r.add("cocycle", format_cocycle(cocycle_of(S)));
  } else if (which == "tautological") {
    add_fiber_space(r, "tautological", tautological(load_er(r, a[0])));
  } else if (which == "factorize") {
    const FiberSpace S = parse_fiber_space(r.load(a[0]));
    const FiberSpace T = parse_fiber_space(r.load(a[1]));
    const PointMap base = parse_map(r.load(a[2]), S.base, T.base);
    const PointMap total = parse_map(r.load(a[3]), S.total, T.total);
    const FiberMap m{S, T, base, total};
    m.validate();
    const FiberFactorization fz = fiber_factorize(m);
    add_fiber_space(r, "M", fz.surjection.target);
    add_map(r, "surjection", fz.surjection.total_map);
    add_fiber_space(r, "pullback", fz.injection.target);
    add_map(r, "injection", fz.injection.total_map);
    add_map(r, "bijection", fz.bijection.total_map);
  } else {
    const FiberSpace S = parse_fiber_space(r.load(a[0]));
    const FiberLtimes L = fiber_ltimes(S, load_theory(r, a[1]));
    add_er(r, "base", L.base);
    add_fiber_space(r, "space", L.space);
    if (wants(o, "structure")) r.add("structure", format_structure(L.structure), as_json(structure_to_json(L.structure)));
  }
  return r.finish(o, 0);
}

// ---------------------------------------------------------------- theory algebra

int cmd_theory(const Options& o, const std::string& which, const std::vector<std::string>& a) {
  Report r("theory " + which);
  if (which == "coeq") {
    const Interpretation x = parse_interpretation(r.load(a[0]));
    const Interpretation y = parse_interpretation(r.load(a[1]));
    r.add("theory", format_theory(coequalizer(x, y)));
    return r.finish(o, 0);
  }
  std::vector<Theory> Ts;
  for (const auto& p : a) Ts.push_back(load_theory(r, p));
  if (which == "tensor") {
    r.add("theory", format_theory(theory_tensor(Ts).theory));
  } else if (which == "oplus") {
    r.add("theory", format_theory(theory_oplus(Ts).theory));
  } else if (which == "cross") {
    if (Ts.size() != 2) throw input_error("theory cross takes exactly two theories");
    r.add("theory", format_theory(theory_cross(Ts[0], Ts[1])));
  } else {
    if (Ts.size() != 1) throw input_error("theory morleyize takes exactly one theory");
    const Morleyized m = morleyize(Ts[0]);
    r.note("new symbols " + join(m.new_symbols, " "));
    r.note(std::string("forall-exists shape ") + (has_forall_exists_shape(m.theory.sentence) ? "yes" : "no"));
    r.add("theory", format_theory(m.theory));
  }
  return r.finish(o, 0);
}

// ---------------------------------------------------------------- lattices

int cmd_lattice(const Options& o, const std::string& which, const std::vector<std::string>& a) {
  Report r("lattice " + which);
  if (which == "catalog") {
    std::vector<FinER> Es;
    for (const auto& p : a) Es.push_back(load_er(r, p));
    const CatalogReport c = catalog_poset(Es);
    std::string text;
    json rows = json::array();
    for (const auto& row : c.cb) {
      std::string line = "cb:";
      for (bool b : row) line += b ? " 1" : " 0";
      text += line + "\n";
      rows.push_back(row);
    }
    r.add("cb", text, rows);
    const bool ok = c.is_preorder && c.tensor_projections_cb && c.sum_injections_invariant && c.tensor_mediates;
    r.note(std::string("preorder ") + (c.is_preorder ? "yes" : "no"));
    r.note(std::string("tensor mediates ") + (c.tensor_mediates ? "yes" : "no"));
    r.verdict(ok ? "PASS" : "FAIL");
    return r.finish(o, ok ? 0 : 1);
  }
  if (which == "check-eq") {
    const Term s = parse_term(a[0]), t = parse_term(a[1]);
    const FinLattice L(parse_poset(r.load(a[2])));
    const EquationResult e = check_equation(s, t, L);
    if (!e.holds) {
      std::string text;
      json env = json::object();
      for (const auto& [v, x] : e.counterexample) {
        text += v + " = " + L.order().element(x) + "\n";
        env[v] = L.order().element(x);
      }
      r.add("counterexample", text, env);
    }
    r.verdict(e.holds ? "holds" : "fails");
    return r.finish(o, e.holds ? 0 : 1);
  }
  const FinLattice L(parse_poset(r.load(a[0])));
  if (auto bad = L.distributivity_failure()) {
    const auto& el = L.order().elements();
    r.verdict("refused: not distributive at (" + el[(*bad)[0]] + "," + el[(*bad)[1]] + "," + el[(*bad)[2]] + ")");
    return r.finish(o, 1);
  }
  const PriestleyReport p = priestley(L);
  r.add("spectrum", format_poset(p.spectrum), as_json(poset_to_json(p.spectrum)));
  r.note("prime filters " + std::to_string(p.filters.size()) + ", upsets " + std::to_string(p.upset_count));
  r.verdict(p.iso() ? "PASS" : "FAIL");
  return r.finish(o, p.iso() ? 0 : 1);
}

// ---------------------------------------------------------------- combinatorics

int cmd_family_reduce(const Options& o, const std::vector<std::string>& a) {
  Report r("family reduce");
  if (o.t < 2) throw input_error("family reduce needs --t with t >= 2");
  const SetFamily F = parse_family(r.load(a[0]));
  const ReduceTrace tr = family_reduce(F, o.t);
  r.note("threshold t = " + std::to_string(o.t));
  std::string text;
  json stages = json::array();
  for (std::size_t i = 0; i < tr.stages.size(); ++i) {
    const auto& s = tr.stages[i];
    text += "; stage " + std::to_string(i) + " m=" + std::to_string(s.m) + " size=" + std::to_string(s.family.size()) +
            (s.certified ? " certified" : " not intersecting") + "\n" + format_family(s.family);
    stages.push_back({{"m", s.m}, {"certified", s.certified}, {"family", as_json(family_to_json(s.family))}});
  }
  r.add("trace", text, stages);
  if (tr.artifact) {
    const auto& art = *tr.artifact;
    std::string why = art.kind == ArtifactKind::NotIntersecting ? "F^(" + std::to_string(art.m) + ") not intersecting"
                                                                 : "no frequent subset below arity";
    if (art.witness) {
      const SetFamily& fam = tr.stages[art.stage].family;
      why += ", disjoint " + fam.set_name(art.witness->first) + " " + fam.set_name(art.witness->second);
    }
    r.verdict("threshold artifact at stage " + std::to_string(art.stage) + ": " + why);
  } else {
    r.verdict("core {" + join(*finite_core(F, o.t), ",") + "}");
  }
  return r.finish(o, 0);
}

int cmd_graph(const Options& o, const std::string& which, const std::vector<std::string>& a) {
  Report r("graph " + which);
  if (which == "bipartite") {
    const Graphing G = bipartite_graphing(load_er(r, a[0]));
    r.add("graphing", format_graphing(G), as_json(graphing_to_json(G)));
    const bool ok = two_coloring(G).has_value();
    r.verdict(ok ? "bipartite" : "FAIL: odd cycle");
    return r.finish(o, ok ? 0 : 1);
  }
  if (o.k < 1) throw input_error("graph subdivide needs --k with k >= 1");
  const Graphing G = parse_graphing(r.load(a[0]));
  const Subdivision S = k_subdivide(G, o.k);
  r.add("graphing", format_graphing(S.graphing), as_json(graphing_to_json(S.graphing)));
  if (wants(o, "inclusion")) add_map(r, "inclusion", S.inclusion);
  const bool labeled = potential_labeling(S.graphing, o.k).has_value();
  const CycleReport cyc = enumerate_cycles(S.graphing, o.k);
  r.note("potential labeling " + std::string(labeled ? "found" : "none"));
  r.note("cycles " + std::to_string(cyc.cycles) + (cyc.all_divisible() ? ", all divisible" : ", some not divisible"));
  const bool ok = labeled && cyc.all_divisible();
  r.verdict(ok ? "PASS" : "FAIL");
  return r.finish(o, ok ? 0 : 1);
}

// ---------------------------------------------------------------- verification

int cmd_verify(const Options& o, const std::vector<std::string>& a) {
  std::vector<std::string> names = a.empty() ? std::vector<std::string>{"all"} : a;
  static const std::vector<std::string> randomized = {"theoryalg", "lattice", "combinat"};
  for (const auto& n : names) {
    const bool random = n == "all" || std::find(randomized.begin(), randomized.end(), n) != randomized.end();
    if (random && !o.seed) throw input_error("suite '" + n + "' is randomized; pass --seed");
  }
  const auto reports = run_suites(names, o.max, o.seed.value_or(0));
  bool ok = true;
  for (const auto& rep : reports) ok = ok && rep.pass();
  std::cout << (o.json ? reports_to_json(reports, o.timing) : format_reports(reports, o.timing));
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite structurability toolkit"};
  app.require_subcommand(1);
  Options o;
  std::string emit;
  auto global = [&](CLI::App* sub) {
    sub->add_flag("--json", o.json, "JSON output");
    sub->add_flag("--timing", o.timing, "Include timings (verify)");
    sub->add_option("--max", o.max, "Size bound");
    sub->add_option("--seed", o.seed, "Random seed");
    sub->add_option("--emit", emit, "Comma separated extra outputs");
    sub->add_option("--t", o.t, "Largeness threshold (family reduce)");
    sub->add_option("--k", o.k, "Subdivision length or Scott padding width");
    sub->add_option("--kind", o.kind, "Homomorphism flags, comma separated");
  };
  std::vector<std::string> files;
  std::function<int()> action;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, std::size_t min_files,
                  int max_files, std::function<int(const std::vector<std::string>&)> run) {
    CLI::App* sub = parent->add_subcommand(name, help);
    global(sub);
    sub->add_option("files", files, "Inputs")->expected(static_cast<int>(min_files), max_files);
    sub->callback([&, name = std::string(name), run, min_files] {
      if (files.size() < min_files) throw CLI::ValidationError(name, "needs " + std::to_string(min_files) + " inputs");
      action = [&, run] { return run(files); };
    });
    return sub;
  };
  using Files = const std::vector<std::string>&;
  auto with = [&](int (*fn)(const Options&, Files)) { return [&o, fn](Files f) { return fn(o, f); }; };
  auto with2 = [&](int (*fn)(const Options&, const std::string&, Files), std::string which) {
    return [&o, fn, which](Files f) { return fn(o, which, f); };
  };

  leaf(&app, "check-hom", "Classify a map E -> F", 3, 3, with(cmd_check_hom));
  leaf(&app, "enumerate-homs", "List maps E -> F of a kind", 2, 2, with(cmd_enumerate_homs));
  leaf(&app, "sum", "Disjoint sum", 1, -1, with(cmd_sum));
  leaf(&app, "cross", "Cross product", 2, 2, with(cmd_cross));
  leaf(&app, "fiber-product", "Fiber product of f : E -> G and g : F -> G", 5, 5, with(cmd_fiber_product));
  leaf(&app, "independent", "Independence and join of relations on one set", 1, -1, with(cmd_independent));
  leaf(&app, "ltimes", "E ltimes T", 2, 2, with(cmd_ltimes));
  leaf(&app, "tensor", "Tensor product", 2, 2, with(cmd_tensor));
  leaf(&app, "skew", "Skew product of a cocycle ([E] A.coc)", 1, 2, with(cmd_skew));
  leaf(&app, "scott", "Scott sentence of a relation", 1, 1, with(cmd_scott));
  leaf(&app, "structure-search", "Find a classwise model", 2, 2, with(cmd_structure_search));
  leaf(&app, "implies-star", "Bounded structurability implication", 2, 2, with(cmd_implies_star));
  CLI::App* fac = app.add_subcommand("factorize", "Factor a homomorphism");
  fac->require_subcommand(1);
  for (const char* w : {"ci", "smooth", "cs"})
    leaf(fac, w, std::string("Factorization ") + w, 3, 3, with2(cmd_factorize, w));
  CLI::App* fib = app.add_subcommand("fiber", "Fiber spaces");
  fib->require_subcommand(1);
  leaf(fib, "pullback", "Pull back S along f : E -> base", 3, 3, with2(cmd_fiber, "pullback"));
  leaf(fib, "cocycle", "Cocycle of a fiber space", 1, 1, with2(cmd_fiber, "cocycle"));
  leaf(fib, "tautological", "Tautological fiber space of E", 1, 1, with2(cmd_fiber, "tautological"));
  leaf(fib, "factorize", "Factor a fiber map (S T base.map total.map)", 4, 4, with2(cmd_fiber, "factorize"));
  leaf(fib, "ltimes", "Fiber space ltimes T", 2, 2, with2(cmd_fiber, "ltimes"));
  CLI::App* th = app.add_subcommand("theory", "Theory algebra");
  th->require_subcommand(1);
  leaf(th, "tensor", "Tensor of theories", 1, -1, with2(cmd_theory, "tensor"));
  leaf(th, "oplus", "Sum of theories", 1, -1, with2(cmd_theory, "oplus"));
  leaf(th, "cross", "Cross of two theories", 2, 2, with2(cmd_theory, "cross"));
  leaf(th, "morleyize", "Forall-exists expansion", 1, 1, with2(cmd_theory, "morleyize"));
  leaf(th, "implies-star", "Same as top-level implies-star", 2, 2, with(cmd_implies_star));
  leaf(th, "coeq", "Coequalizer of two interpretations", 2, 2, with2(cmd_theory, "coeq"));
  CLI::App* lat = app.add_subcommand("lattice", "Finite lattices");
  lat->require_subcommand(1);
  leaf(lat, "priestley", "Prime-filter spectrum of a distributive lattice", 1, 1, with2(cmd_lattice, "priestley"));
  leaf(lat, "check-eq", "Check an identity (terms, then lattice file)", 3, 3, with2(cmd_lattice, "check-eq"));
  leaf(lat, "catalog", "Class-bijective reachability among relations", 1, -1, with2(cmd_lattice, "catalog"));
  CLI::App* fam = app.add_subcommand("family", "Set families");
  fam->require_subcommand(1);
  leaf(fam, "reduce", "Threshold reduction of an intersecting family", 1, 1, with(cmd_family_reduce));
  CLI::App* gr = app.add_subcommand("graph", "Graphings");
  gr->require_subcommand(1);
  leaf(gr, "bipartite", "Complete bipartite graphing per class", 1, 1, with2(cmd_graph, "bipartite"));
  leaf(gr, "subdivide", "Subdivide every edge into a k-path", 1, 1, with2(cmd_graph, "subdivide"));
  leaf(&app, "verify", "Run property suites (names or all)", 0, -1, with(cmd_verify));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  std::stringstream ss(emit);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) o.emit.push_back(item);
  try {
    return action();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

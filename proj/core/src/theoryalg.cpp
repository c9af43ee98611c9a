#include "structo/theoryalg.hpp"

#include <algorithm>
#include <set>

#include "structo/error.hpp"
#include "structo/util.hpp"

namespace structo {

std::vector<std::string> interp_vars(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= n; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

Interpretation::Interpretation(Language src, Theory tgt, std::map<std::string, Formula> a)
    : source(std::move(src)), target(std::move(tgt)), assign(std::move(a)) {
  for (const Symbol& s : source.symbols()) {
    auto it = assign.find(s.name);
    if (it == assign.end()) throw input_error("interpretation has no formula for '" + s.name + "'");
    check_formula(it->second, target.language);
    const auto allowed = interp_vars(s.arity);
    for (const auto& v : free_vars(it->second))
      if (std::find(allowed.begin(), allowed.end(), v) == allowed.end())
        throw input_error("formula for '" + s.name + "' has free variable '" + v + "' outside x1..x" +
                          std::to_string(s.arity));
  }
  for (const auto& [name, _] : assign)
    if (!source.contains(name)) throw input_error("interpretation assigns unknown symbol '" + name + "'");
}

Interpretation Interpretation::identity(const Theory& T) {
  std::map<std::string, Formula> a;
  for (const Symbol& s : T.language.symbols()) a[s.name] = f_atom(s.name, interp_vars(s.arity));
  return Interpretation(T.language, T, a);
}

const Formula& Interpretation::operator[](const std::string& symbol) const {
  auto it = assign.find(symbol);
  if (it == assign.end()) throw input_error("interpretation has no formula for '" + symbol + "'");
  return it->second;
}

Formula substitute_symbols(const Formula& f, const std::map<std::string, Formula>& assign) {
  switch (f->op) {
    case Op::True:
    case Op::False:
    case Op::Eq: return f;
    case Op::Atom: {
      auto it = assign.find(f->name);
      if (it == assign.end()) return f;
      std::map<std::string, std::string> ren;
      const auto xs = interp_vars(f->vars.size());
      for (std::size_t i = 0; i < xs.size(); ++i) ren[xs[i]] = f->vars[i];
      return rename_free(it->second, ren);
    }
    case Op::Not: return f_not(substitute_symbols(f->kids[0], assign));
    case Op::And:
    case Op::Or: {
      std::vector<Formula> kids;
      for (const auto& k : f->kids) kids.push_back(substitute_symbols(k, assign));
      return f->op == Op::And ? f_and(kids) : f_or(kids);
    }
    case Op::Exists: return f_exists(f->name, substitute_symbols(f->kids[0], assign));
    case Op::Forall: return f_forall(f->name, substitute_symbols(f->kids[0], assign));
  }
  return f;
}

Formula interp_apply(const Interpretation& alpha, const Formula& phi) {
  check_formula(phi, alpha.source);
  return substitute_symbols(phi, alpha.assign);
}

FinStructure alpha_reduct(const Interpretation& alpha, const FinStructure& A) {
  if (!(A.language() == alpha.target.language)) throw input_error("structure is not over the target language");
  FinStructure B(alpha.source, A.universe());
  for (std::size_t s = 0; s < alpha.source.size(); ++s) {
    const std::size_t r = alpha.source[s].arity;
    const CompiledFormula cf(alpha[alpha.source[s].name], A.language(), interp_vars(r));
    for (std::size_t code = 0; code < B.tuple_count(s); ++code)
      if (cf.eval(A, B.tuple_at(s, code))) B.set_code(s, code, true);
  }
  return B;
}

Interpretation compose(const Interpretation& beta, const Interpretation& alpha) {
  if (!(alpha.target.language == beta.source)) throw input_error("interpretations are not composable");
  std::map<std::string, Formula> a;
  for (const auto& [name, f] : alpha.assign) a[name] = substitute_symbols(f, beta.assign);
  return Interpretation(alpha.source, beta.target, a);
}

bool interp_valid_upto(const Interpretation& alpha, const Theory& sigma, std::size_t n) {
  if (!(sigma.language == alpha.source)) throw input_error("sentence is not over the interpretation's source language");
  const Formula img = interp_apply(alpha, sigma.sentence);
  const CompiledFormula cf(img, alpha.target.language);
  for (std::size_t m = 0; m <= n; ++m) {
    bool ok = true;
    for_each_model_bits(alpha.target, m, [&](const std::vector<std::vector<std::uint8_t>>& bits) {
      FinStructure A(alpha.target.language, canonical_points(m));
      A.mutable_bits() = bits;
      if (!cf.eval(A)) ok = false;
      return ok;
    });
    if (!ok) return false;
  }
  return true;
}

bool interp_equivalent_upto(const Interpretation& a, const Interpretation& b, std::size_t n) {
  if (!(a.source == b.source) || !(a.target.language == b.target.language)) return false;
  for (std::size_t m = 0; m <= n; ++m) {
    bool ok = true;
    for_each_model_bits(a.target, m, [&](const std::vector<std::vector<std::uint8_t>>& bits) {
      FinStructure A(a.target.language, canonical_points(m));
      A.mutable_bits() = bits;
      if (!(alpha_reduct(a, A) == alpha_reduct(b, A))) ok = false;
      return ok;
    });
    if (!ok) return false;
  }
  return true;
}

Formula rename_symbols(const Formula& f, const std::map<std::string, std::string>& renaming) {
  std::function<Formula(const Formula&)> rec = [&](const Formula& g) -> Formula {
    switch (g->op) {
      case Op::Atom: {
        auto it = renaming.find(g->name);
        return it == renaming.end() ? g : f_atom(it->second, g->vars);
      }
      case Op::True:
      case Op::False:
      case Op::Eq: return g;
      case Op::Not: return f_not(rec(g->kids[0]));
      case Op::And:
      case Op::Or: {
        std::vector<Formula> kids;
        for (const auto& k : g->kids) kids.push_back(rec(k));
        return g->op == Op::And ? f_and(kids) : f_or(kids);
      }
      case Op::Exists: return f_exists(g->name, rec(g->kids[0]));
      case Op::Forall: return f_forall(g->name, rec(g->kids[0]));
    }
    return g;
  };
  return rec(f);
}

namespace {

std::string tagged(const std::string& name, std::size_t i) { return name + "#" + std::to_string(i); }

Language renamed_language(const Language& L, std::size_t i, std::map<std::string, std::string>& ren) {
  Language out;
  for (const Symbol& s : L.symbols()) {
    ren[s.name] = tagged(s.name, i);
    out.add({tagged(s.name, i), s.arity});
  }
  return out;
}

Formula forall_all(const std::vector<std::string>& vars, Formula body) {
  for (std::size_t k = vars.size(); k-- > 0;) body = f_forall(vars[k], body);
  return body;
}

Formula empty_symbol(const Symbol& s) {
  const auto xs = interp_vars(s.arity);
  return forall_all(xs, f_not(f_atom(s.name, xs)));
}

}  // namespace

TheoryTensor theory_tensor(const std::vector<Theory>& Ts) {
  Language lang;
  std::vector<Formula> parts;
  std::vector<std::map<std::string, std::string>> rens(Ts.size());
  for (std::size_t i = 0; i < Ts.size(); ++i) {
    lang = disjoint_union(lang, renamed_language(Ts[i].language, i, rens[i]));
    parts.push_back(rename_symbols(Ts[i].sentence, rens[i]));
  }
  TheoryTensor out;
  out.theory = Theory(lang, parts.empty() ? f_true() : parts.size() == 1 ? parts.front() : f_and(parts));
  for (std::size_t i = 0; i < Ts.size(); ++i) {
    std::map<std::string, Formula> a;
    for (const Symbol& s : Ts[i].language.symbols()) a[s.name] = f_atom(tagged(s.name, i), interp_vars(s.arity));
    out.injections.emplace_back(Ts[i].language, out.theory, a);
  }
  return out;
}

Interpretation tensor_pairing(const TheoryTensor& T, const std::vector<Interpretation>& alphas) {
  if (alphas.size() != T.injections.size()) throw input_error("pairing needs one interpretation per factor");
  std::map<std::string, Formula> a;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i].source == T.injections[i].source)) throw input_error("pairing: source language mismatch");
    if (i && !(alphas[i].target.language == alphas[0].target.language))
      throw input_error("pairing: interpretations have different targets");
    for (const auto& [name, f] : alphas[i].assign) a[tagged(name, i)] = f;
  }
  if (alphas.empty()) throw input_error("pairing of an empty family needs an explicit target");
  return Interpretation(T.theory.language, alphas[0].target, a);
}

TheoryOplus theory_oplus(const std::vector<Theory>& Ts) {
  Language lang;
  std::vector<std::map<std::string, std::string>> rens(Ts.size());
  std::vector<Language> parts_lang;
  for (std::size_t i = 0; i < Ts.size(); ++i) {
    parts_lang.push_back(renamed_language(Ts[i].language, i, rens[i]));
    lang = disjoint_union(lang, parts_lang.back());
  }
  for (std::size_t i = 0; i < Ts.size(); ++i) lang.add({"#P" + std::to_string(i), 1});
  std::vector<Formula> cases;
  for (std::size_t i = 0; i < Ts.size(); ++i) {
    std::vector<Formula> c{f_forall("x", f_atom("#P" + std::to_string(i), {"x"})), rename_symbols(Ts[i].sentence, rens[i])};
    for (std::size_t j = 0; j < Ts.size(); ++j) {
      if (j == i) continue;
      c.push_back(f_forall("x", f_not(f_atom("#P" + std::to_string(j), {"x"}))));
      for (const Symbol& s : parts_lang[j].symbols()) c.push_back(empty_symbol(s));
    }
    cases.push_back(f_and(c));
  }
  TheoryOplus out;
  out.theory = Theory(lang, cases.empty() ? f_false() : f_or(cases));
  for (std::size_t i = 0; i < Ts.size(); ++i) {
    std::map<std::string, Formula> a;
    for (std::size_t j = 0; j < Ts.size(); ++j) {
      a["#P" + std::to_string(j)] = j == i ? f_true() : f_false();
      for (const Symbol& s : Ts[j].language.symbols())
        a[tagged(s.name, j)] = j == i ? f_atom(s.name, interp_vars(s.arity)) : f_false();
    }
    out.projections.emplace_back(lang, Ts[i], a);
  }
  return out;
}

// ---------------------------------------------------------------- σ × τ

namespace {

Formula eq_rel(const std::string& R) {
  return f_and({
      f_forall("x", f_atom(R, {"x", "x"})),
      f_forall("x", f_forall("y", f_implies(f_atom(R, {"x", "y"}), f_atom(R, {"y", "x"})))),
      f_forall("x", f_forall("y", f_forall("z", f_implies(f_and({f_atom(R, {"x", "y"}), f_atom(R, {"y", "z"})}),
                                                          f_atom(R, {"x", "z"}))))),
  });
}

Formula invariant(const Symbol& s, const std::string& R) {
  std::vector<std::string> xs, ys;
  std::vector<Formula> rel;
  for (std::size_t i = 1; i <= s.arity; ++i) {
    xs.push_back("a" + std::to_string(i));
    ys.push_back("b" + std::to_string(i));
    rel.push_back(f_atom(R, {xs.back(), ys.back()}));
  }
  std::vector<std::string> all = xs;
  all.insert(all.end(), ys.begin(), ys.end());
  return forall_all(all, f_implies(f_and(rel), f_iff(f_atom(s.name, xs), f_atom(s.name, ys))));
}

// Replaces v = w by R(v, w).
Formula eq_to(const Formula& f, const std::string& R) {
  switch (f->op) {
    case Op::Eq: return f_atom(R, {f->vars[0], f->vars[1]});
    case Op::True:
    case Op::False:
    case Op::Atom: return f;
    case Op::Not: return f_not(eq_to(f->kids[0], R));
    case Op::And:
    case Op::Or: {
      std::vector<Formula> kids;
      for (const auto& k : f->kids) kids.push_back(eq_to(k, R));
      return f->op == Op::And ? f_and(kids) : f_or(kids);
    }
    case Op::Exists: return f_exists(f->name, eq_to(f->kids[0], R));
    case Op::Forall: return f_forall(f->name, eq_to(f->kids[0], R));
  }
  return f;
}

}  // namespace

Theory theory_cross(const Theory& sigma, const Theory& tau) {
  Language lang({{"#R1", 2}, {"#R2", 2}});
  std::map<std::string, std::string> r0, r1;
  const Language L0 = renamed_language(sigma.language, 0, r0);
  const Language L1 = renamed_language(tau.language, 1, r1);
  lang = disjoint_union(disjoint_union(lang, L0), L1);
  std::vector<Formula> parts{
      eq_rel("#R1"),
      eq_rel("#R2"),
      f_forall("x", f_forall("y", f_implies(f_and({f_atom("#R1", {"x", "y"}), f_atom("#R2", {"x", "y"})}),
                                            f_eq("x", "y")))),
      f_forall("x", f_forall("y", f_exists("z", f_and({f_atom("#R1", {"x", "z"}), f_atom("#R2", {"y", "z"})})))),
  };
  for (const Symbol& s : L0.symbols()) parts.push_back(invariant(s, "#R1"));
  for (const Symbol& s : L1.symbols()) parts.push_back(invariant(s, "#R2"));
  parts.push_back(eq_to(rename_symbols(sigma.sentence, r0), "#R1"));
  parts.push_back(eq_to(rename_symbols(tau.sentence, r1), "#R2"));
  return Theory(lang, f_and(parts));
}

CrossDecoded cross_decode(const Theory& sigma, const Theory& tau, const FinStructure& A) {
  const Theory X = theory_cross(sigma, tau);
  if (!(A.language() == X.language)) throw input_error("structure is not over the product language");
  if (!satisfies(A, X)) throw input_error("structure is not a model of the product theory");
  const std::size_t n = A.size();
  auto blocks = [&](std::size_t sym) {
    std::vector<std::size_t> rep(n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y <= x; ++y)
        if (A.holds(sym, {x, y})) {
          rep[x] = y;
          break;
        }
    return rep;
  };
  const auto rep1 = blocks(0), rep2 = blocks(1);
  std::vector<std::size_t> reps1, reps2;
  for (std::size_t x = 0; x < n; ++x) {
    if (rep1[x] == x) reps1.push_back(x);
    if (rep2[x] == x) reps2.push_back(x);
  }
  auto make = [&](const Theory& T, const std::vector<std::size_t>& reps, std::size_t tag) {
    std::vector<Point> pts;
    for (std::size_t r : reps) pts.push_back(A.universe()[r]);
    FinStructure S(T.language, pts);
    for (std::size_t s = 0; s < T.language.size(); ++s) {
      const std::size_t src = A.language().index(tagged(T.language[s].name, tag));
      for (std::size_t code = 0; code < S.tuple_count(s); ++code) {
        auto t = S.tuple_at(s, code);
        for (std::size_t& v : t) v = reps[v];  // S's universe is sorted like reps
        if (A.holds(src, t)) S.set_code(s, code, true);
      }
    }
    return S;
  };
  CrossDecoded d{make(sigma, reps1, 0), make(tau, reps2, 1), {}};
  for (std::size_t x = 0; x < n; ++x)
    d.coords.emplace_back(
        static_cast<std::size_t>(std::lower_bound(reps1.begin(), reps1.end(), rep1[x]) - reps1.begin()),
        static_cast<std::size_t>(std::lower_bound(reps2.begin(), reps2.end(), rep2[x]) - reps2.begin()));
  return d;
}

FinStructure cross_encode(const Theory& sigma, const Theory& tau, const std::vector<Point>& universe,
                          const CrossDecoded& d) {
  const Theory X = theory_cross(sigma, tau);
  FinStructure A(X.language, universe);
  const std::size_t n = A.size();
  if (d.coords.size() != n) throw input_error("coordinates do not cover the universe");
  std::set<std::pair<std::size_t, std::size_t>> seen(d.coords.begin(), d.coords.end());
  if (seen.size() != n || n != d.left.size() * d.right.size()) throw input_error("coordinates are not a bijection onto the grid");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (d.coords[x].first == d.coords[y].first) A.set(0, {x, y}, true);
      if (d.coords[x].second == d.coords[y].second) A.set(1, {x, y}, true);
    }
  auto fill = [&](const FinStructure& S, std::size_t tag, bool first) {
    for (std::size_t s = 0; s < S.language().size(); ++s) {
      const std::size_t dst = X.language.index(tagged(S.language()[s].name, tag));
      for (std::size_t code = 0; code < A.tuple_count(dst); ++code) {
        auto t = A.tuple_at(dst, code);
        for (std::size_t& v : t) v = first ? d.coords[v].first : d.coords[v].second;
        if (S.holds(s, t)) A.set_code(dst, code, true);
      }
    }
  };
  fill(d.left, 0, true);
  fill(d.right, 1, false);
  return A;
}

std::size_t cross_model_count(const Theory& sigma, const Theory& tau, std::size_t n) {
  if (n == 0) return count_models(sigma, 0) * count_models(tau, 0);
  std::size_t total = 0;
  for (std::size_t a = 1; a <= n; ++a) {
    if (n % a) continue;
    const std::size_t b = n / a;
    total += factorial(n) / (factorial(a) * factorial(b)) * count_models(sigma, a) * count_models(tau, b);
  }
  return total;
}

// ---------------------------------------------------------------- Morleyization

namespace {

struct Morley {
  std::map<std::string, std::pair<std::size_t, std::vector<std::string>>> ids;  // printed subformula -> (symbol, args)
  std::string dummy;
  std::vector<Symbol> symbols;
  std::vector<Formula> axioms;
  std::set<std::string> taken;

  // Replaces maximal quantifier subformulas by their symbols.
  Formula tr(const Formula& f) {
    switch (f->op) {
      case Op::True:
      case Op::False:
      case Op::Atom:
      case Op::Eq: return f;
      case Op::Not: return f_not(tr(f->kids[0]));
      case Op::And:
      case Op::Or: {
        std::vector<Formula> kids;
        for (const auto& k : f->kids) kids.push_back(tr(k));
        return f->op == Op::And ? f_and(kids) : f_or(kids);
      }
      case Op::Exists:
      case Op::Forall: return define(f);
    }
    return f;
  }

  // Closed subformulas get a unary symbol in `dummy`; any formula whose
  // translation mentions `dummy` carries it as an extra argument. The
  // axioms make such symbols constant in that argument.
  Formula define(const Formula& f) {
    const std::string key = print(f);
    auto it = ids.find(key);
    if (it != ids.end()) return f_atom(symbols[it->second.first].name, it->second.second);
    const Formula body = tr(f->kids[0]);
    const auto fv = free_vars(f);
    std::vector<std::string> args(fv.begin(), fv.end());
    if (args.empty() || free_vars(body).count(dummy)) args.push_back(dummy);
    const std::string name = fresh_symbol();
    ids.emplace(key, std::make_pair(symbols.size(), args));
    symbols.push_back({name, args.size()});
    const Formula S = f_atom(name, args);
    const std::string& y = f->name;
    if (f->op == Op::Exists) {
      axioms.push_back(forall_all(args, f_forall(y, f_or({f_not(body), S}))));
      axioms.push_back(forall_all(args, f_exists(y, f_or({f_not(S), body}))));
    } else {
      axioms.push_back(forall_all(args, f_forall(y, f_or({f_not(S), body}))));
      axioms.push_back(forall_all(args, f_exists(y, f_or({S, f_not(body)}))));
    }
    return S;
  }

  std::string fresh_symbol() {
    for (std::size_t i = symbols.size();; ++i) {
      std::string n = "#M" + std::to_string(i);
      if (!taken.count(n)) return n;
    }
  }
};

}  // namespace

Morleyized morleyize(const Theory& T) {
  Morley m;
  for (const Symbol& s : T.language.symbols()) m.taken.insert(s.name);
  m.dummy = fresh_var(all_vars(T.sentence), "d");
  Formula body = T.sentence;
  std::vector<std::string> prefix;
  while (body->op == Op::Forall) {
    prefix.push_back(body->name);
    body = body->kids[0];
  }
  const Formula matrix = m.tr(body);
  if (free_vars(matrix).count(m.dummy)) prefix.push_back(m.dummy);
  const Formula last = forall_all(prefix, matrix);
  std::vector<Formula> parts = m.axioms;
  parts.push_back(last);
  Language lang = T.language;
  Morleyized out;
  for (const Symbol& s : m.symbols) {
    lang.add(s);
    out.new_symbols.push_back(s.name);
  }
  out.theory = Theory(lang, parts.size() == 1 ? parts.front() : f_and(parts));
  std::map<std::string, Formula> a;
  for (const Symbol& s : T.language.symbols()) a[s.name] = f_atom(s.name, interp_vars(s.arity));
  out.reduct = Interpretation(T.language, out.theory, a);
  return out;
}

bool has_forall_exists_shape(const Formula& f) {
  auto conjunct_ok = [](Formula g) {
    while (g->op == Op::Forall) g = g->kids[0];
    if (g->op == Op::Exists) g = g->kids[0];
    return is_quantifier_free(g);
  };
  if (f->op == Op::And) return std::all_of(f->kids.begin(), f->kids.end(), conjunct_ok);
  return conjunct_ok(f);
}

Theory coequalizer(const Interpretation& alpha, const Interpretation& beta) {
  if (!(alpha.source == beta.source) || !(alpha.target.language == beta.target.language))
    throw input_error("coequalizer needs parallel interpretations");
  std::vector<Formula> parts{alpha.target.sentence};
  for (const Symbol& s : alpha.source.symbols()) {
    const auto xs = interp_vars(s.arity);
    parts.push_back(forall_all(xs, f_iff(alpha[s.name], beta[s.name])));
  }
  return Theory(alpha.target.language, f_and(parts));
}

}  // namespace structo

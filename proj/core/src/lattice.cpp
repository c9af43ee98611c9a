#include "structo/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

#include "structo/constructions.hpp"
#include "structo/error.hpp"
#include "structo/util.hpp"

namespace structo {

// ---------------------------------------------------------------- FinPoset

FinPoset::FinPoset(std::vector<std::string> elements, const std::vector<std::pair<std::string, std::string>>& pairs)
    : elements_(std::move(elements)) {
  const std::size_t n = elements_.size();
  {
    std::set<std::string> seen;
    for (const auto& e : elements_)
      if (!seen.insert(e).second) throw input_error("duplicate element '" + e + "'");
  }
  leq_.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) leq_[i][i] = true;
  for (const auto& [a, b] : pairs) leq_[index(a)][index(b)] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq_[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (leq_[k][j]) leq_[i][j] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (leq_[i][j] && leq_[j][i])
        throw input_error("order is not antisymmetric: '" + elements_[i] + "' and '" + elements_[j] + "'");
}

FinPoset FinPoset::from_matrix(std::vector<std::string> elements, std::vector<std::vector<bool>> leq) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < leq.size(); ++i)
    for (std::size_t j = 0; j < leq.size(); ++j)
      if (leq[i][j]) pairs.emplace_back(elements[i], elements[j]);
  FinPoset P(std::move(elements), pairs);
  if (P.leq_ != leq) throw input_error("matrix is not a partial order");
  return P;
}

std::size_t FinPoset::index(const std::string& name) const {
  auto it = std::find(elements_.begin(), elements_.end(), name);
  if (it == elements_.end()) throw input_error("unknown element '" + name + "'");
  return static_cast<std::size_t>(it - elements_.begin());
}

std::vector<std::vector<bool>> FinPoset::upsets() const {
  const std::size_t n = size();
  if (n > 24) throw input_error("too many elements to enumerate upsets");
  std::vector<std::vector<bool>> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      if ((m >> a) & 1)
        for (std::size_t b = 0; b < n; ++b)
          if (leq_[a][b] && !((m >> b) & 1)) {
            ok = false;
            break;
          }
    if (!ok) continue;
    std::vector<bool> s(n);
    for (std::size_t a = 0; a < n; ++a) s[a] = (m >> a) & 1;
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> FinPoset::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = 0; b < size(); ++b) {
      if (a == b || !leq_[a][b]) continue;
      bool between = false;
      for (std::size_t c = 0; c < size() && !between; ++c)
        if (c != a && c != b && leq_[a][c] && leq_[c][b]) between = true;
      if (!between) out.emplace_back(a, b);
    }
  return out;
}

// ---------------------------------------------------------------- FinLattice

FinLattice::FinLattice(FinPoset order) : order_(std::move(order)) {
  const std::size_t n = order_.size();
  if (n == 0) throw input_error("a lattice needs at least one element");
  meet_.assign(n, std::vector<std::size_t>(n));
  join_.assign(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::optional<std::size_t> glb, lub;
      for (std::size_t c = 0; c < n; ++c) {
        if (order_.leq(c, a) && order_.leq(c, b)) {
          bool greatest = true;
          for (std::size_t d = 0; d < n && greatest; ++d)
            if (order_.leq(d, a) && order_.leq(d, b) && !order_.leq(d, c)) greatest = false;
          if (greatest) glb = c;
        }
        if (order_.leq(a, c) && order_.leq(b, c)) {
          bool least = true;
          for (std::size_t d = 0; d < n && least; ++d)
            if (order_.leq(a, d) && order_.leq(b, d) && !order_.leq(c, d)) least = false;
          if (least) lub = c;
        }
      }
      if (!glb) throw input_error("'" + order_.element(a) + "' and '" + order_.element(b) + "' have no meet");
      if (!lub) throw input_error("'" + order_.element(a) + "' and '" + order_.element(b) + "' have no join");
      meet_[a][b] = *glb;
      join_[a][b] = *lub;
    }
  bottom_ = top_ = 0;
  for (std::size_t a = 1; a < n; ++a) {
    bottom_ = meet_[bottom_][a];
    top_ = join_[top_][a];
  }
}

FinLattice FinLattice::chain(std::size_t n) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i + 1 < n; ++i) pairs.emplace_back(std::to_string(i), std::to_string(i + 1));
  return FinLattice(FinPoset(canonical_points(n), pairs));
}

FinLattice FinLattice::powerset(std::size_t k) {
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 0; m < (1u << k); ++m) masks.push_back(m);
  return from_sets(masks);
}

FinLattice FinLattice::from_sets(const std::vector<std::uint32_t>& masks_in) {
  std::vector<std::uint32_t> masks = masks_in;
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  std::vector<std::string> names;
  for (auto m : masks) names.push_back(std::to_string(m));
  std::vector<std::pair<std::string, std::string>> pairs;
  for (auto a : masks)
    for (auto b : masks)
      if (a != b && (a & b) == a) pairs.emplace_back(std::to_string(a), std::to_string(b));
  return FinLattice(FinPoset(names, pairs));
}

FinLattice FinLattice::n5() {
  return FinLattice(FinPoset({"0", "a", "b", "c", "1"}, {{"0", "a"}, {"a", "b"}, {"b", "1"}, {"0", "c"}, {"c", "1"}}));
}

FinLattice FinLattice::m3() {
  return FinLattice(
      FinPoset({"0", "a", "b", "c", "1"}, {{"0", "a"}, {"0", "b"}, {"0", "c"}, {"a", "1"}, {"b", "1"}, {"c", "1"}}));
}

std::optional<std::array<std::size_t, 3>> FinLattice::distributivity_failure() const {
  const std::size_t n = size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (meet(a, join(b, c)) != join(meet(a, b), meet(a, c))) return std::array<std::size_t, 3>{a, b, c};
  return std::nullopt;
}

// ---------------------------------------------------------------- projections

ProjectionReport check_projection(const FinPoset& P, const std::vector<std::size_t>& e) {
  const std::size_t n = P.size();
  if (e.size() != n) throw input_error("operator does not cover the poset");
  for (std::size_t v : e)
    if (v >= n) throw input_error("operator leaves the poset");
  ProjectionReport r;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n && r.monotone; ++b)
      if (P.leq(a, b) && !P.leq(e[a], e[b])) {
        r.monotone = false;
        r.monotone_witness = {a, b};
      }
    if (r.idempotent && e[e[a]] != e[a]) {
      r.idempotent = false;
      r.idempotent_witness = a;
    }
    if (r.closure && !P.leq(a, e[a])) {
      r.closure = false;
      r.closure_witness = a;
    }
  }
  return r;
}

std::vector<std::vector<bool>> induced_preorder(const FinPoset& P, const std::vector<std::size_t>& e) {
  const std::size_t n = P.size();
  std::vector<std::vector<bool>> out(n, std::vector<bool>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) out[a][b] = P.leq(e[a], e[b]);
  return out;
}

RetractIso retract_iso(const FinPoset& P, const std::vector<std::size_t>& e) {
  const ProjectionReport rep = check_projection(P, e);
  const std::size_t n = P.size();
  const std::size_t npos = static_cast<std::size_t>(-1);
  RetractIso r;
  std::map<std::size_t, std::size_t> class_of_value;
  std::vector<std::size_t> cls(n);
  for (std::size_t x = 0; x < n; ++x) {
    auto [it, fresh] = class_of_value.emplace(e[x], r.classes.size());
    if (fresh) r.classes.emplace_back();
    r.classes[it->second].push_back(x);
    cls[x] = it->second;
  }
  for (const auto& c : r.classes) r.to_image.push_back(e[c.front()]);
  r.from_image.assign(n, npos);
  for (std::size_t x = 0; x < n; ++x)
    if (e[x] == x) r.from_image[x] = cls[x];
  if (!rep.projection()) return r;
  const auto pre = induced_preorder(P, e);
  bool ok = true;
  for (std::size_t c = 0; c < r.classes.size(); ++c) {
    const std::size_t y = r.to_image[c];
    if (r.from_image[y] != c) ok = false;  // [e(x)] = [x]
  }
  for (std::size_t y = 0; y < n; ++y)
    if (r.from_image[y] != npos && r.to_image[r.from_image[y]] != y) ok = false;
  // [x] ≲ [y] iff e(x) ≤ e(y), and the preorder is constant on classes.
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (pre[a][b] != P.leq(r.to_image[cls[a]], r.to_image[cls[b]])) ok = false;
      if (pre[a][b] != pre[r.classes[cls[a]].front()][r.classes[cls[b]].front()]) ok = false;
    }
  r.verified = ok;
  return r;
}

// ---------------------------------------------------------------- Priestley

std::vector<std::vector<bool>> prime_filters(const FinLattice& L) {
  // Every filter of a finite lattice is principal, so the candidates are ↑a.
  const std::size_t n = L.size();
  const auto& P = L.order();
  std::vector<std::vector<bool>> out;
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<bool> F(n);
    for (std::size_t b = 0; b < n; ++b) F[b] = P.leq(a, b);
    if (F[L.bottom()]) continue;  // proper
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      for (std::size_t y = 0; y < n && ok; ++y) {
        if (F[x] && P.leq(x, y) && !F[y]) ok = false;
        if (F[x] && F[y] && !F[L.meet(x, y)]) ok = false;
        if (!F[x] && !F[y] && F[L.join(x, y)]) ok = false;
      }
    if (ok) out.push_back(std::move(F));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PriestleyReport priestley(const FinLattice& L) {
  if (auto t = L.distributivity_failure()) {
    const auto& P = L.order();
    throw input_error("lattice is not distributive at (" + P.element((*t)[0]) + "," + P.element((*t)[1]) + "," +
                      P.element((*t)[2]) + ")");
  }
  PriestleyReport r;
  r.filters = prime_filters(L);
  const std::size_t m = r.filters.size();
  const std::size_t n = L.size();
  std::vector<std::string> names;
  std::vector<std::vector<bool>> incl(m, std::vector<bool>(m));
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t gen = 0;
    for (std::size_t x = 0; x < n; ++x)
      if (r.filters[i][x] && L.order().leq(x, gen)) gen = x;
    // The least element of the filter names it.
    for (std::size_t x = 0; x < n; ++x)
      if (r.filters[i][x]) {
        bool least = true;
        for (std::size_t y = 0; y < n && least; ++y)
          if (r.filters[i][y] && !L.order().leq(x, y)) least = false;
        if (least) gen = x;
      }
    names.push_back("up(" + L.order().element(gen) + ")");
    for (std::size_t j = 0; j < m; ++j) {
      bool sub = true;
      for (std::size_t x = 0; x < n && sub; ++x)
        if (r.filters[i][x] && !r.filters[j][x]) sub = false;
      incl[i][j] = sub;
    }
  }
  r.spectrum = FinPoset::from_matrix(names, incl);
  r.eta.assign(n, std::vector<bool>(m));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t i = 0; i < m; ++i) r.eta[x][i] = r.filters[i][x];
  const auto ups = r.spectrum.upsets();
  r.upset_count = ups.size();
  std::set<std::vector<bool>> images(r.eta.begin(), r.eta.end());
  r.injective = images.size() == n;
  r.order_embedding = true;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      bool sub = true;
      for (std::size_t i = 0; i < m && sub; ++i)
        if (r.eta[x][i] && !r.eta[y][i]) sub = false;
      if (sub != L.order().leq(x, y)) r.order_embedding = false;
    }
  std::set<std::vector<bool>> up_set(ups.begin(), ups.end());
  r.onto_upsets = images == up_set;
  return r;
}

// ---------------------------------------------------------------- terms

namespace {

Term make_term(LatticeTerm::Kind k, std::string name, std::vector<Term> kids) {
  auto t = std::make_shared<LatticeTerm>();
  t->kind = k;
  t->name = std::move(name);
  t->kids = std::move(kids);
  return t;
}

}  // namespace

Term t_var(std::string name) { return make_term(LatticeTerm::Kind::Var, std::move(name), {}); }
Term t_meet(std::vector<Term> kids) { return make_term(LatticeTerm::Kind::Meet, {}, std::move(kids)); }
Term t_join(std::vector<Term> kids) { return make_term(LatticeTerm::Kind::Join, {}, std::move(kids)); }
Term t_top() { return make_term(LatticeTerm::Kind::Top, {}, {}); }
Term t_bottom() { return make_term(LatticeTerm::Kind::Bottom, {}, {}); }

Term parse_term(const std::string& text) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) -> void {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw parse_error(what, pos, line, col);
  };
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto word = [&] {
    std::size_t s = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) && text[pos] != '(' &&
           text[pos] != ')')
      ++pos;
    return text.substr(s, pos - s);
  };
  std::function<Term()> term = [&]() -> Term {
    skip();
    if (pos >= text.size()) fail("unexpected end of term");
    if (text[pos] == ')') fail("unexpected ')'");
    if (text[pos] != '(') {
      std::string w = word();
      if (w == "top") return t_top();
      if (w == "bottom") return t_bottom();
      return t_var(w);
    }
    ++pos;
    skip();
    const std::size_t head_pos = pos;
    std::string head = word();
    std::vector<Term> kids;
    while (true) {
      skip();
      if (pos >= text.size()) fail("expected ')'");
      if (text[pos] == ')') break;
      kids.push_back(term());
    }
    ++pos;
    if (head == "meet") return kids.empty() ? t_top() : t_meet(kids);
    if (head == "join") return kids.empty() ? t_bottom() : t_join(kids);
    pos = head_pos;
    fail("unknown lattice operation '" + head + "'");
    return nullptr;
  };
  Term t = term();
  skip();
  if (pos != text.size()) fail("trailing input");
  return t;
}

std::string print(const Term& t) {
  switch (t->kind) {
    case LatticeTerm::Kind::Var: return t->name;
    case LatticeTerm::Kind::Top: return "top";
    case LatticeTerm::Kind::Bottom: return "bottom";
    case LatticeTerm::Kind::Meet:
    case LatticeTerm::Kind::Join: {
      std::string out = t->kind == LatticeTerm::Kind::Meet ? "(meet" : "(join";
      for (const auto& k : t->kids) out += " " + print(k);
      return out + ")";
    }
  }
  return {};
}

std::vector<std::string> term_vars(const Term& t) {
  std::set<std::string> s;
  std::function<void(const Term&)> rec = [&](const Term& u) {
    if (u->kind == LatticeTerm::Kind::Var) s.insert(u->name);
    for (const auto& k : u->kids) rec(k);
  };
  rec(t);
  return {s.begin(), s.end()};
}

std::size_t eval_term(const FinLattice& L, const Term& t, const std::map<std::string, std::size_t>& env) {
  switch (t->kind) {
    case LatticeTerm::Kind::Var: {
      auto it = env.find(t->name);
      if (it == env.end()) throw input_error("unbound term variable '" + t->name + "'");
      return it->second;
    }
    case LatticeTerm::Kind::Top: return L.top();
    case LatticeTerm::Kind::Bottom: return L.bottom();
    case LatticeTerm::Kind::Meet: {
      std::size_t v = L.top();
      for (const auto& k : t->kids) v = L.meet(v, eval_term(L, k, env));
      return v;
    }
    case LatticeTerm::Kind::Join: {
      std::size_t v = L.bottom();
      for (const auto& k : t->kids) v = L.join(v, eval_term(L, k, env));
      return v;
    }
  }
  return 0;
}

EquationResult check_equation(const Term& lhs, const Term& rhs, const FinLattice& L) {
  std::set<std::string> vs;
  for (const auto& v : term_vars(lhs)) vs.insert(v);
  for (const auto& v : term_vars(rhs)) vs.insert(v);
  const std::vector<std::string> vars(vs.begin(), vs.end());
  std::map<std::string, std::size_t> env;
  for (const auto& v : vars) env[v] = 0;
  EquationResult r;
  while (true) {
    if (eval_term(L, lhs, env) != eval_term(L, rhs, env)) {
      r.holds = false;
      r.counterexample = env;
      return r;
    }
    std::size_t i = vars.size();
    while (i > 0) {
      --i;
      if (++env[vars[i]] < L.size()) break;
      env[vars[i]] = 0;
      if (i == 0) return r;
    }
    if (vars.empty()) return r;
  }
}

Term random_term(std::mt19937_64& rng, const std::vector<std::string>& vars, std::size_t max_ops) {
  if (max_ops == 0 || std::uniform_int_distribution<int>(0, 3)(rng) == 0)
    return t_var(vars[std::uniform_int_distribution<std::size_t>(0, vars.size() - 1)(rng)]);
  const std::size_t budget = max_ops - 1;
  const std::size_t left = std::uniform_int_distribution<std::size_t>(0, budget)(rng);
  Term a = random_term(rng, vars, left);
  Term b = random_term(rng, vars, budget - left);
  return std::uniform_int_distribution<int>(0, 1)(rng) ? t_meet({a, b}) : t_join({a, b});
}

Term monotone_dnf(const Term& t, const std::vector<std::string>& vars) {
  const FinLattice two = FinLattice::chain(2);
  const std::size_t k = vars.size();
  std::vector<bool> val(std::size_t{1} << k);
  for (std::size_t m = 0; m < val.size(); ++m) {
    std::map<std::string, std::size_t> env;
    for (std::size_t i = 0; i < k; ++i) env[vars[i]] = two.order().index((m >> i) & 1 ? "1" : "0");
    val[m] = two.order().element(eval_term(two, t, env)) == "1";
  }
  std::vector<Term> disj;
  for (std::size_t m = 0; m < val.size(); ++m) {
    if (!val[m]) continue;
    bool minimal = true;
    for (std::size_t i = 0; i < k && minimal; ++i)
      if (((m >> i) & 1) && val[m & ~(std::size_t{1} << i)]) minimal = false;
    if (!minimal) continue;
    if (m == 0) return t_top();
    std::vector<Term> conj;
    for (std::size_t i = 0; i < k; ++i)
      if ((m >> i) & 1) conj.push_back(t_var(vars[i]));
    disj.push_back(conj.size() == 1 ? conj.front() : t_meet(conj));
  }
  if (disj.empty()) return t_bottom();
  return disj.size() == 1 ? disj.front() : t_join(disj);
}

FinLattice random_distributive_lattice(std::mt19937_64& rng, std::size_t k, std::size_t max_elements) {
  if (k == 0 || k > 5) throw input_error("random lattices use 1 <= k <= 5");
  if (max_elements < 1) throw input_error("lattice size bound must be positive");
  std::uniform_int_distribution<std::uint32_t> pick(0, (1u << k) - 1);
  const std::size_t target =
      std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(max_elements, std::size_t{1} << k))(rng);
  std::set<std::uint32_t> best{pick(rng)};
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::set<std::uint32_t> fam;
    // Closure can stall below the target; give up after a run of idle picks.
    for (int idle = 0; idle < 64;) {
      std::set<std::uint32_t> next = fam;
      next.insert(pick(rng));
      bool grew = true;
      while (grew) {
        grew = false;
        std::vector<std::uint32_t> cur(next.begin(), next.end());
        for (auto a : cur)
          for (auto b : cur)
            if (next.insert(a & b).second | next.insert(a | b).second) grew = true;
      }
      if (next.size() > max_elements) break;
      idle = next.size() == fam.size() ? idle + 1 : 0;
      fam = std::move(next);
      if (fam.size() > best.size()) best = fam;
      if (fam.size() >= target) return FinLattice::from_sets({fam.begin(), fam.end()});
    }
  }
  return FinLattice::from_sets({best.begin(), best.end()});
}

// ---------------------------------------------------------------- catalog

CatalogReport catalog_poset(const std::vector<FinER>& Es) {
  const HomClass cbk{HomFlag::ClassBijective};
  const std::size_t n = Es.size();
  CatalogReport r;
  r.cb.assign(n, std::vector<bool>(n));
  std::vector<std::vector<std::optional<PointMap>>> witness(n, std::vector<std::optional<PointMap>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for_each_hom(Es[i], Es[j], cbk, [&](const std::vector<std::size_t>& img) {
        r.cb[i][j] = true;
        witness[i][j] = PointMap(Es[i], Es[j], img);
        return false;
      });
  for (std::size_t i = 0; i < n; ++i) {
    if (!r.cb[i][i]) r.is_preorder = false;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (r.cb[i][j] && r.cb[j][k] && !r.cb[i][k]) r.is_preorder = false;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const TensorResult T = tensor(Es[i], Es[j]);
      if (!classify_hom(T.pi1).has(HomFlag::ClassBijective) || !classify_hom(T.pi2).has(HomFlag::ClassBijective))
        r.tensor_projections_cb = false;
      const SumResult S = disjoint_sum({Es[i], Es[j]});
      for (const auto& inj : S.injections)
        if (!classify_hom(inj).has(HomFlag::InvariantEmbedding)) r.sum_injections_invariant = false;
      for (std::size_t k = 0; k < n; ++k) {
        if (!witness[k][i] || !witness[k][j]) continue;
        const PointMap m = pairing(T, *witness[k][i], *witness[k][j]);
        if (!classify_hom(m).has(HomFlag::ClassBijective)) r.tensor_mediates = false;
      }
    }
  return r;
}

}  // namespace structo

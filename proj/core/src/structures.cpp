#include "structo/structures.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "structo/error.hpp"
#include "structo/util.hpp"

namespace structo {

// ---------------------------------------------------------------- Language

Language::Language(std::vector<Symbol> symbols) {
  for (Symbol& s : symbols) add(std::move(s));
}

void Language::add(Symbol s) {
  if (s.name.empty()) throw input_error("empty symbol name");
  if (s.arity < 1) throw input_error("symbol '" + s.name + "' must have positive arity");
  if (contains(s.name)) throw input_error("duplicate symbol '" + s.name + "'");
  symbols_.push_back(std::move(s));
}

std::optional<std::size_t> Language::find(const std::string& name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].name == name) return i;
  return std::nullopt;
}

std::size_t Language::index(const std::string& name) const {
  auto i = find(name);
  if (!i) throw input_error("unknown relation symbol '" + name + "'");
  return *i;
}

Language Language::sublanguage(const std::vector<std::string>& names) const {
  std::set<std::string> want(names.begin(), names.end());
  for (const std::string& n : names) index(n);
  Language out;
  for (const Symbol& s : symbols_)
    if (want.count(s.name)) out.add(s);
  return out;
}

bool Language::is_sublanguage_of(const Language& other) const {
  for (const Symbol& s : symbols_) {
    auto i = other.find(s.name);
    if (!i || other[*i].arity != s.arity) return false;
  }
  return true;
}

std::size_t Language::max_arity() const {
  std::size_t m = 0;
  for (const Symbol& s : symbols_) m = std::max(m, s.arity);
  return m;
}

std::string Language::to_string() const {
  std::vector<std::string> parts;
  for (const Symbol& s : symbols_) parts.push_back(s.name + "/" + std::to_string(s.arity));
  return join(parts, " ");
}

Language disjoint_union(const Language& a, const Language& b) {
  Language out = a;
  for (const Symbol& s : b.symbols()) out.add(s);
  return out;
}

// ---------------------------------------------------------------- FinStructure

FinStructure::FinStructure(Language language, std::vector<Point> universe) : lang_(std::move(language)) {
  std::sort(universe.begin(), universe.end());
  if (std::adjacent_find(universe.begin(), universe.end()) != universe.end())
    throw input_error("duplicate universe element");
  universe_ = std::move(universe);
  for (std::size_t i = 0; i < universe_.size(); ++i) index_.emplace(universe_[i], i);
  for (const Symbol& s : lang_.symbols()) bits_.emplace_back(ipow(universe_.size(), s.arity), 0);
}

std::optional<std::size_t> FinStructure::find(const Point& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FinStructure::index(const Point& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) throw input_error("unknown universe element '" + p + "'");
  return it->second;
}

std::size_t FinStructure::tuple_index(const std::vector<std::size_t>& t) const {
  std::size_t code = 0;
  for (std::size_t v : t) code = code * universe_.size() + v;
  return code;
}

std::vector<std::size_t> FinStructure::tuple_at(std::size_t sym, std::size_t code) const {
  const std::size_t r = lang_[sym].arity, n = universe_.size();
  std::vector<std::size_t> t(r);
  for (std::size_t k = r; k-- > 0;) {
    t[k] = code % n;
    code /= n;
  }
  return t;
}

void FinStructure::add(const std::string& sym, const std::vector<Point>& tuple) {
  const std::size_t s = lang_.index(sym);
  if (tuple.size() != lang_[s].arity)
    throw input_error("tuple for '" + sym + "' has length " + std::to_string(tuple.size()) +
                      ", expected " + std::to_string(lang_[s].arity));
  std::vector<std::size_t> t;
  for (const Point& p : tuple) t.push_back(index(p));
  set(s, t, true);
}

std::vector<std::vector<std::size_t>> FinStructure::tuples(std::size_t sym) const {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t c = 0; c < bits_[sym].size(); ++c)
    if (bits_[sym][c]) out.push_back(tuple_at(sym, c));
  return out;
}

bool FinStructure::operator<(const FinStructure& o) const {
  if (lang_.symbols().size() != o.lang_.symbols().size()) return lang_.size() < o.lang_.size();
  if (universe_ != o.universe_) return universe_ < o.universe_;
  return bits_ < o.bits_;
}

StructuredER::StructuredER(FinER e, FinStructure s) : er(std::move(e)), structure(std::move(s)) {
  if (er.points() != structure.universe()) throw input_error("structure universe differs from relation points");
  for (std::size_t sym = 0; sym < structure.language().size(); ++sym)
    for (const auto& t : structure.tuples(sym))
      for (std::size_t v : t)
        if (!er.related(v, t.front()))
          throw input_error("structure relates points in different classes (symbol '" +
                            structure.language()[sym].name + "')");
}

// ---------------------------------------------------------------- derived structures

FinStructure restrict_structure(const FinStructure& A, const std::vector<std::size_t>& subset) {
  std::vector<Point> pts;
  for (std::size_t i : subset) pts.push_back(A.universe()[i]);
  FinStructure B(A.language(), pts);
  // B's universe is sorted; map each B index back to an A index.
  std::vector<std::size_t> back(B.size());
  for (std::size_t i : subset) back[B.index(A.universe()[i])] = i;
  for (std::size_t s = 0; s < A.language().size(); ++s)
    for (std::size_t c = 0; c < B.tuple_count(s); ++c) {
      auto t = B.tuple_at(s, c);
      for (std::size_t& v : t) v = back[v];
      if (A.holds(s, t)) B.set_code(s, c, true);
    }
  return B;
}

FinStructure reduct(const FinStructure& A, const Language& sub) {
  FinStructure B(sub, A.universe());
  for (std::size_t s = 0; s < sub.size(); ++s) {
    std::size_t a = A.language().index(sub[s].name);
    if (A.language()[a].arity != sub[s].arity) throw input_error("reduct: arity mismatch for '" + sub[s].name + "'");
    B.mutable_bits()[s] = A.bits()[a];
  }
  return B;
}

FinStructure restrict_to_classes(const FinStructure& A, const FinER& E) {
  if (E.points() != A.universe()) throw input_error("restrict_to_classes: point sets differ");
  FinStructure B = A;
  for (std::size_t s = 0; s < A.language().size(); ++s)
    for (std::size_t c = 0; c < A.tuple_count(s); ++c) {
      if (!A.holds_code(s, c)) continue;
      auto t = A.tuple_at(s, c);
      for (std::size_t v : t)
        if (!E.related(v, t.front())) {
          B.set_code(s, c, false);
          break;
        }
    }
  return B;
}

FinStructure class_structure(const StructuredER& A, std::size_t i) {
  return restrict_structure(A.structure, A.er.class_members(i));
}

FinStructure pushforward(const FinStructure& A, const std::vector<Point>& target,
                         const std::vector<std::size_t>& f) {
  if (f.size() != A.size() || target.size() != A.size()) throw input_error("pushforward: not a bijection");
  std::vector<bool> hit(target.size(), false);
  for (std::size_t v : f) {
    if (v >= target.size() || hit[v]) throw input_error("pushforward: not a bijection");
    hit[v] = true;
  }
  FinStructure B(A.language(), target);
  // Index of target[k] inside B's sorted universe.
  std::vector<std::size_t> pos(target.size());
  for (std::size_t k = 0; k < target.size(); ++k) pos[k] = B.index(target[k]);
  for (std::size_t s = 0; s < A.language().size(); ++s)
    for (std::size_t c = 0; c < A.tuple_count(s); ++c) {
      if (!A.holds_code(s, c)) continue;
      auto t = A.tuple_at(s, c);
      for (std::size_t& v : t) v = pos[f[v]];
      B.set(s, t, true);
    }
  return B;
}

FinStructure pushforward(const FinStructure& A, const std::map<Point, Point>& f) {
  std::vector<Point> target;
  std::vector<std::size_t> img(A.size());
  for (std::size_t i = 0; i < A.size(); ++i) {
    auto it = f.find(A.universe()[i]);
    if (it == f.end()) throw input_error("pushforward: no image for '" + A.universe()[i] + "'");
    img[i] = target.size();
    target.push_back(it->second);
  }
  std::vector<Point> sorted = target;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw input_error("pushforward: map is not injective");
  return pushforward(A, target, img);
}

FinStructure pullback(const FinStructure& A, const std::vector<Point>& domain,
                      const std::vector<std::size_t>& f) {
  if (f.size() != domain.size()) throw input_error("pullback: map is not total");
  for (std::size_t v : f)
    if (v >= A.size()) throw input_error("pullback: image outside the structure's universe");
  FinStructure B(A.language(), domain);
  std::vector<std::size_t> img(B.size());
  for (std::size_t k = 0; k < domain.size(); ++k) img[B.index(domain[k])] = f[k];
  for (std::size_t s = 0; s < A.language().size(); ++s)
    for (std::size_t c = 0; c < B.tuple_count(s); ++c) {
      auto t = B.tuple_at(s, c);
      for (std::size_t& v : t) v = img[v];
      if (A.holds(s, t)) B.set_code(s, c, true);
    }
  return B;
}

StructuredER classwise_pullback(const FinStructure& A, const PointMap& f) {
  if (A.universe() != f.codomain().points())
    throw input_error("classwise pullback: structure does not live on the codomain");
  if (!classify_hom(f).has(HomFlag::ClassBijective))
    throw input_error("classwise pullback: map is not class-bijective");
  FinStructure B = pullback(A, f.domain().points(), f.images());
  return StructuredER(f.domain(), restrict_to_classes(B, f.domain()));
}

// ---------------------------------------------------------------- isomorphism

namespace {

std::vector<std::vector<std::size_t>> point_signatures(const FinStructure& A) {
  const std::size_t n = A.size();
  std::vector<std::vector<std::size_t>> sig(n);
  for (std::size_t s = 0; s < A.language().size(); ++s) {
    const std::size_t r = A.language()[s].arity;
    std::vector<std::vector<std::size_t>> cnt(n, std::vector<std::size_t>(r + 1, 0));
    for (std::size_t c = 0; c < A.tuple_count(s); ++c) {
      if (!A.holds_code(s, c)) continue;
      auto t = A.tuple_at(s, c);
      bool diag = std::all_of(t.begin(), t.end(), [&](std::size_t v) { return v == t.front(); });
      if (diag) ++cnt[t.front()][r];
      for (std::size_t k = 0; k < r; ++k) ++cnt[t[k]][k];
    }
    for (std::size_t i = 0; i < n; ++i) sig[i].insert(sig[i].end(), cnt[i].begin(), cnt[i].end());
  }
  return sig;
}

// Checks every tuple over assigned points that involves point a.
bool consistent(const FinStructure& A, const FinStructure& B, const std::vector<std::size_t>& assigned,
                const std::vector<std::size_t>& img, std::size_t a) {
  for (std::size_t s = 0; s < A.language().size(); ++s) {
    const std::size_t r = A.language()[s].arity;
    const std::size_t m = assigned.size();
    std::vector<std::size_t> pick(r, 0);
    std::vector<std::size_t> ta(r), tb(r);
    const std::size_t total = ipow(m, r);
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t x = code;
      bool involves = false;
      for (std::size_t k = r; k-- > 0;) {
        pick[k] = x % m;
        x /= m;
        ta[k] = assigned[pick[k]];
        tb[k] = img[ta[k]];
        if (ta[k] == a) involves = true;
      }
      if (!involves) continue;
      if (A.holds(s, ta) != B.holds(s, tb)) return false;
    }
  }
  return true;
}

}  // namespace

void for_each_isomorphism(const FinStructure& A, const FinStructure& B,
                          const std::vector<std::optional<std::size_t>>& fixed,
                          const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  if (A.size() != B.size() || !(A.language() == B.language())) return;
  for (std::size_t s = 0; s < A.language().size(); ++s) {
    auto ca = std::count(A.bits()[s].begin(), A.bits()[s].end(), 1);
    auto cb = std::count(B.bits()[s].begin(), B.bits()[s].end(), 1);
    if (ca != cb) return;
  }
  const std::size_t n = A.size();
  const auto sa = point_signatures(A), sb = point_signatures(B);
  std::vector<std::size_t> img(n, 0), assigned;
  std::vector<bool> used(n, false);
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t a) {
    if (stop) return;
    if (a == n) {
      if (!visit(img)) stop = true;
      return;
    }
    for (std::size_t b = 0; b < n && !stop; ++b) {
      if (used[b] || sa[a] != sb[b]) continue;
      if (a < fixed.size() && fixed[a] && *fixed[a] != b) continue;
      img[a] = b;
      used[b] = true;
      assigned.push_back(a);
      if (consistent(A, B, assigned, img, a)) rec(a + 1);
      assigned.pop_back();
      used[b] = false;
    }
  };
  rec(0);
}

std::optional<std::vector<std::size_t>> isomorphic(const FinStructure& A, const FinStructure& B) {
  std::optional<std::vector<std::size_t>> out;
  for_each_isomorphism(A, B, {}, [&](const std::vector<std::size_t>& f) {
    out = f;
    return false;
  });
  return out;
}

std::vector<std::vector<std::size_t>> aut_group(const FinStructure& A) {
  std::vector<std::vector<std::size_t>> out;
  for_each_isomorphism(A, A, {}, [&](const std::vector<std::size_t>& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

std::vector<std::vector<Point>> stabilizer_orbits(const FinStructure& A, const std::vector<Point>& F) {
  std::vector<std::optional<std::size_t>> fixed(A.size());
  for (const Point& p : F) {
    std::size_t i = A.index(p);
    fixed[i] = i;
  }
  std::vector<std::size_t> label(A.size());
  std::iota(label.begin(), label.end(), 0);
  std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
    return label[x] == x ? x : label[x] = root(label[x]);
  };
  for_each_isomorphism(A, A, fixed, [&](const std::vector<std::size_t>& g) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      std::size_t a = root(i), b = root(g[i]);
      if (a != b) label[std::max(a, b)] = std::min(a, b);
    }
    return true;
  });
  std::map<std::size_t, std::vector<Point>> orbits;
  for (std::size_t i = 0; i < A.size(); ++i) orbits[root(i)].push_back(A.universe()[i]);
  std::vector<std::vector<Point>> out;
  for (auto& [_, o] : orbits) out.push_back(std::move(o));
  return out;
}

FinStructure canonical_form(const FinStructure& A) {
  const auto pts = canonical_points(A.size());
  std::vector<std::size_t> perm = identity_perm(A.size());
  std::optional<FinStructure> best;
  do {
    FinStructure B = pushforward(A, pts, perm);
    if (!best || B.bits() < best->bits()) best = std::move(B);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return *best;
}

// ---------------------------------------------------------------- WDP and age

std::optional<std::vector<Point>> wdp_check(const FinStructure& A, const Language& sub,
                                            const std::vector<Point>& F) {
  if (F.empty()) throw input_error("wdp_check: F must be nonempty");
  if (!sub.is_sublanguage_of(A.language())) throw input_error("wdp_check: not a sublanguage");
  std::vector<std::size_t> fi;
  for (const Point& p : F) fi.push_back(A.index(p));
  {
    std::vector<std::size_t> s = fi;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw input_error("wdp_check: F has repeated points");
  }
  const FinStructure R = reduct(A, sub);
  std::vector<bool> inF(A.size(), false);
  for (std::size_t i : fi) inF[i] = true;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < A.size(); ++i)
    if (!inF[i]) rest.push_back(i);
  const std::size_t m = fi.size();
  if (rest.size() < m) return std::nullopt;

  std::vector<std::size_t> g(m);
  std::vector<bool> used(A.size(), false);
  std::optional<std::vector<Point>> out;
  // Extends g on F[0..k) to F[k]; checks tuples over F[0..k] that involve F[k].
  std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
    if (k == m) {
      std::vector<Point> G;
      for (std::size_t v : g) G.push_back(A.universe()[v]);
      out = G;
      return true;
    }
    for (std::size_t v : rest) {
      if (used[v]) continue;
      g[k] = v;
      bool ok = true;
      for (std::size_t s = 0; s < sub.size() && ok; ++s) {
        const std::size_t r = sub[s].arity;
        const std::size_t total = ipow(k + 1, r);
        std::vector<std::size_t> ta(r), tb(r);
        for (std::size_t code = 0; code < total && ok; ++code) {
          std::size_t x = code;
          bool involves = false;
          for (std::size_t q = r; q-- > 0;) {
            std::size_t pick = x % (k + 1);
            x /= (k + 1);
            if (pick == k) involves = true;
            ta[q] = fi[pick];
            tb[q] = g[pick];
          }
          if (involves && R.holds(s, ta) != R.holds(s, tb)) ok = false;
        }
      }
      if (!ok) continue;
      used[v] = true;
      if (rec(k + 1)) return true;
      used[v] = false;
    }
    return false;
  };
  rec(0);
  return out;
}

bool WdpTable::holds() const { return first_failure() == nullptr; }

const WdpRow* WdpTable::first_failure() const {
  for (const WdpRow& r : rows)
    if (!r.witness) return &r;
  return nullptr;
}

WdpTable wdp_upto(const FinStructure& A, std::size_t f_max, bool full_language_only) {
  WdpTable table;
  table.f_max = f_max;
  table.full_language_only = full_language_only;
  const std::size_t L = A.language().size();
  std::vector<Language> subs;
  if (full_language_only) {
    subs.push_back(A.language());
  } else {
    for (std::size_t mask = 0; mask < (std::size_t{1} << L); ++mask) {
      Language sub;
      for (std::size_t s = 0; s < L; ++s)
        if (mask & (std::size_t{1} << s)) sub.add(A.language()[s]);
      subs.push_back(sub);
    }
  }
  const std::size_t n = A.size();
  for (const Language& sub : subs)
    for (std::size_t size = 1; size <= std::min(f_max, n); ++size) {
      std::vector<std::size_t> comb(size);
      std::iota(comb.begin(), comb.end(), 0);
      while (true) {
        std::vector<Point> F;
        for (std::size_t i : comb) F.push_back(A.universe()[i]);
        table.rows.push_back({sub, F, wdp_check(A, sub, F)});
        std::size_t k = size;
        while (k > 0 && comb[k - 1] == n - size + k - 1) --k;
        if (k == 0) break;
        ++comb[k - 1];
        for (std::size_t j = k; j < size; ++j) comb[j] = comb[j - 1] + 1;
      }
    }
  return table;
}

std::vector<FinStructure> age(const FinStructure& A, std::size_t n) {
  std::vector<FinStructure> out;
  const std::size_t N = A.size();
  if (n > N) return out;
  std::set<std::vector<std::vector<std::uint8_t>>> seen;
  std::vector<std::size_t> comb(n);
  std::iota(comb.begin(), comb.end(), 0);
  while (true) {
    FinStructure c = canonical_form(restrict_structure(A, comb));
    if (seen.insert(c.bits()).second) out.push_back(std::move(c));
    std::size_t k = n;
    while (k > 0 && comb[k - 1] == N - n + k - 1) --k;
    if (k == 0) break;
    ++comb[k - 1];
    for (std::size_t j = k; j < n; ++j) comb[j] = comb[j - 1] + 1;
  }
  std::sort(out.begin(), out.end(), [](const FinStructure& a, const FinStructure& b) { return a.bits() < b.bits(); });
  return out;
}

}  // namespace structo

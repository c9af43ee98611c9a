#include "structo/combinat.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <set>
#include <unordered_map>

#include "structo/error.hpp"
#include "structo/util.hpp"

namespace structo {

namespace {

// Lexicographic order of the sorted member lists.
bool lex_less(std::uint64_t a, std::uint64_t b) {
  while (a && b) {
    const int la = std::countr_zero(a), lb = std::countr_zero(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return !a && b;
}

}  // namespace

// ---------------------------------------------------------------- SetFamily

SetFamily::SetFamily(std::vector<Point> ground, std::vector<std::uint64_t> sets)
    : ground_(std::move(ground)), sets_(std::move(sets)) {
  if (ground_.size() > 64) throw input_error("set families support at most 64 ground points");
  {
    std::set<Point> seen;
    for (const auto& p : ground_)
      if (!seen.insert(p).second) throw input_error("duplicate ground point '" + p + "'");
  }
  const std::uint64_t all = ground_.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << ground_.size()) - 1;
  std::sort(sets_.begin(), sets_.end(), lex_less);
  sets_.erase(std::unique(sets_.begin(), sets_.end()), sets_.end());
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    if (sets_[i] & ~all) throw input_error("family member leaves the ground set");
    const auto c = static_cast<std::size_t>(std::popcount(sets_[i]));
    if (i == 0) arity_ = c;
    if (c != arity_)
      throw input_error("family is not uniform: " + set_name(sets_[0]) + " and " + set_name(sets_[i]) +
                        " differ in size");
  }
}

SetFamily SetFamily::from_names(std::vector<Point> ground, const std::vector<std::vector<Point>>& sets) {
  std::map<Point, std::size_t> idx;
  for (std::size_t i = 0; i < ground.size(); ++i) idx[ground[i]] = i;
  std::vector<std::uint64_t> masks;
  for (const auto& s : sets) {
    std::uint64_t m = 0;
    for (const auto& p : s) {
      auto it = idx.find(p);
      if (it == idx.end()) throw input_error("unknown ground point '" + p + "'");
      if (m >> it->second & 1) throw input_error("point '" + p + "' repeated in a family member");
      m |= std::uint64_t{1} << it->second;
    }
    masks.push_back(m);
  }
  return SetFamily(std::move(ground), std::move(masks));
}

std::vector<Point> SetFamily::members(std::uint64_t set) const {
  std::vector<Point> out;
  for (std::size_t i = 0; i < ground_.size(); ++i)
    if (set >> i & 1) out.push_back(ground_[i]);
  return out;
}

std::string SetFamily::set_name(std::uint64_t set) const { return "{" + join(members(set), ",") + "}"; }

std::uint64_t SetFamily::union_mask() const {
  std::uint64_t u = 0;
  for (auto s : sets_) u |= s;
  return u;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> disjoint_pair(const SetFamily& F) {
  const auto& s = F.sets();
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if ((s[i] & s[j]) == 0) return std::make_pair(s[i], s[j]);
  return std::nullopt;
}

bool intersecting_check(const SetFamily& F) { return !F.empty() && !disjoint_pair(F); }

SetFamily frequent_subsets(const SetFamily& F, std::size_t m, std::size_t t) {
  std::unordered_map<std::uint64_t, std::size_t> count;
  for (std::uint64_t s : F.sets()) {
    std::vector<std::uint64_t> bits;
    for (std::uint64_t r = s; r; r &= r - 1) bits.push_back(r & (~r + 1));
    if (m > bits.size()) continue;
    // Odometer over m-combinations of the member's points.
    std::vector<std::size_t> pick(m);
    for (std::size_t i = 0; i < m; ++i) pick[i] = i;
    while (true) {
      std::uint64_t sub = 0;
      for (std::size_t i : pick) sub |= bits[i];
      ++count[sub];
      std::size_t i = m;
      while (i > 0 && pick[i - 1] == bits.size() - m + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < m; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  std::vector<std::uint64_t> keep;
  for (const auto& [sub, c] : count)
    if (c >= t) keep.push_back(sub);
  return SetFamily(F.ground(), std::move(keep));
}

// ---------------------------------------------------------------- reduction

std::vector<std::size_t> ReduceTrace::chain() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i < stages.size(); ++i) out.push_back(stages[i].m);
  return out;
}

ReduceTrace family_reduce(const SetFamily& F, std::size_t t) {
  if (t < 2) throw input_error("largeness threshold must be at least 2");
  if (F.empty()) throw input_error("family is empty");
  if (auto p = disjoint_pair(F))
    throw input_error("family is not intersecting: " + F.set_name(p->first) + " and " + F.set_name(p->second) +
                      " are disjoint");
  ReduceTrace tr;
  tr.t = t;
  tr.stages.push_back({F.arity(), F, true});
  while (tr.stages.back().family.size() >= t) {
    const SetFamily& cur = tr.stages.back().family;
    std::optional<SetFamily> next;
    std::size_t m = cur.arity();
    while (m > 1) {
      --m;
      SetFamily g = frequent_subsets(cur, m, t);
      if (!g.empty()) {
        next = std::move(g);
        break;
      }
    }
    if (!next) {
      tr.artifact = ThresholdArtifact{ArtifactKind::NoFrequentSubset, tr.stages.size() - 1, 0, std::nullopt};
      break;
    }
    auto bad = disjoint_pair(*next);
    tr.stages.push_back({m, std::move(*next), !bad});
    if (bad) {
      tr.artifact = ThresholdArtifact{ArtifactKind::NotIntersecting, tr.stages.size() - 1, m, bad};
      break;
    }
  }
  return tr;
}

std::optional<std::vector<Point>> finite_core(const SetFamily& F, std::size_t t) {
  const ReduceTrace tr = family_reduce(F, t);
  if (!tr.sound()) return std::nullopt;
  return tr.terminal().members(tr.terminal().union_mask());
}

// ---------------------------------------------------------------- exhaustive

std::vector<std::uint64_t> uniform_subsets(std::size_t p, std::size_t n) {
  if (p > 64) throw input_error("at most 64 points");
  std::vector<std::uint64_t> out;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t from, std::uint64_t mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) == n) {
      out.push_back(mask);
      return;
    }
    for (std::size_t i = from; i < p; ++i) rec(i + 1, mask | (std::uint64_t{1} << i));
  };
  if (n <= p) rec(0, 0);
  return out;
}

namespace {

using Cand = std::bitset<128>;

std::vector<Cand> disjointness(const std::vector<std::uint64_t>& sets) {
  if (sets.size() > 128) throw input_error("too many candidate sets for exhaustive enumeration");
  std::vector<Cand> d(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = 0; j < sets.size(); ++j)
      if ((sets[i] & sets[j]) == 0) d[i].set(j);
  return d;
}

}  // namespace

void for_each_intersecting_family(std::size_t p, std::size_t n,
                                  const std::function<bool(const std::vector<std::uint64_t>&)>& visit) {
  if (n == 0) throw input_error("family arity must be positive");
  const auto sets = uniform_subsets(p, n);
  const auto dis = disjointness(sets);
  std::vector<std::uint64_t> chosen;
  bool stop = false;
  std::function<void(std::size_t, const Cand&)> rec = [&](std::size_t from, const Cand& allowed) {
    for (std::size_t i = from; i < sets.size() && !stop; ++i) {
      if (!allowed.test(i)) continue;
      chosen.push_back(sets[i]);
      if (!visit(chosen)) stop = true;
      if (!stop) rec(i + 1, allowed & ~dis[i]);
      chosen.pop_back();
    }
  };
  Cand all;
  for (std::size_t i = 0; i < sets.size(); ++i) all.set(i);
  rec(0, all);
}

std::uint64_t intersecting_family_count(std::size_t p, std::size_t n) {
  if (n == 0) throw input_error("family arity must be positive");
  const auto sets = uniform_subsets(p, n);
  const auto dis = disjointness(sets);
  struct Hash {
    std::size_t operator()(const Cand& c) const { return std::hash<Cand>()(c); }
  };
  std::unordered_map<Cand, std::uint64_t, Hash> memo;
  // Independent sets of the disjointness graph restricted to V.
  std::function<std::uint64_t(const Cand&)> count = [&](const Cand& V) -> std::uint64_t {
    if (V.none()) return 1;
    if (auto it = memo.find(V); it != memo.end()) return it->second;
    std::size_t best = 0, best_deg = 0, edges = 0, isolated = 0;
    for (std::size_t v = 0; v < sets.size(); ++v) {
      if (!V.test(v)) continue;
      const std::size_t d = (dis[v] & V).count();
      if (d == 0) ++isolated;
      edges += d;
      if (d >= best_deg) {
        best_deg = d;
        best = v;
      }
    }
    std::uint64_t r;
    if (best_deg <= 1) {
      r = ipow(3, edges / 2) * ipow(2, isolated);
    } else {
      Cand without = V;
      without.reset(best);
      r = count(without) + count(without & ~dis[best]);
    }
    memo.emplace(V, r);
    return r;
  };
  Cand all;
  for (std::size_t i = 0; i < sets.size(); ++i) all.set(i);
  return count(all) - 1;
}

ExhaustiveReduceReport reduce_all_intersecting(std::size_t p, std::size_t n, std::size_t t,
                                               double time_limit_seconds) {
  using clock = std::chrono::steady_clock;
  ExhaustiveReduceReport rep;
  rep.points = p;
  rep.arity = n;
  rep.t = t;
  rep.total = intersecting_family_count(p, n);
  const auto ground = canonical_points(p);
  const auto start = clock::now();
  bool timed_out = false;
  for_each_intersecting_family(p, n, [&](const std::vector<std::uint64_t>& sets) {
    const SetFamily F(ground, sets);
    const ReduceTrace tr = family_reduce(F, t);
    ++rep.visited;
    bool well_formed = true;
    const auto chain = tr.chain();
    for (std::size_t i = 0; i < chain.size(); ++i)
      if (chain[i] >= (i == 0 ? n : chain[i - 1])) well_formed = false;
    if (tr.sound()) {
      ++rep.certified;
      for (const auto& st : tr.stages)
        if (!st.certified) well_formed = false;
      if (tr.terminal().size() >= t || tr.terminal().union_mask() == 0) well_formed = false;
    } else {
      ++rep.artifacts;
      if (!rep.first_artifact) rep.first_artifact = F;
      const auto& a = *tr.artifact;
      if (a.kind == ArtifactKind::NotIntersecting &&
          (!a.witness || (a.witness->first & a.witness->second) != 0 || tr.stages[a.stage].certified))
        well_formed = false;
    }
    if (!well_formed) ++rep.malformed;
    if (time_limit_seconds > 0 && (rep.visited & 1023) == 0 &&
        std::chrono::duration<double>(clock::now() - start).count() > time_limit_seconds) {
      timed_out = true;
      return false;
    }
    return true;
  });
  rep.seconds = std::chrono::duration<double>(clock::now() - start).count();
  rep.complete = !timed_out && rep.visited == rep.total;
  return rep;
}

// ---------------------------------------------------------------- WDP formulas

std::vector<std::string> wdp_vars(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

namespace {

// Distinct points carrying the atomic diagram of the triple's model.
Formula wdp_copy(const WdpTriple& tr, const std::vector<std::string>& v) {
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) parts.push_back(f_not(f_eq(v[i], v[j])));
  const Language& L = tr.sublanguage;
  for (std::size_t s = 0; s < L.size(); ++s)
    for (std::size_t code = 0; code < tr.model.tuple_count(s); ++code) {
      std::vector<std::string> args;
      for (std::size_t a : tr.model.tuple_at(s, code)) args.push_back(v[a]);
      Formula atom = f_atom(L[s].name, std::move(args));
      parts.push_back(tr.model.holds_code(s, code) ? atom : f_not(atom));
    }
  return parts.empty() ? f_true() : f_and(std::move(parts));
}

}  // namespace

Formula wdp_psi(const WdpTriple& tr, const std::vector<std::string>& vars, const std::string& bound_prefix) {
  std::vector<std::string> z;
  for (std::size_t i = 0; i < tr.n; ++i) z.push_back(bound_prefix + std::to_string(i));
  std::vector<Formula> meets;
  for (const auto& zi : z)
    for (const auto& xj : vars) meets.push_back(f_eq(zi, xj));
  Formula body = f_implies(wdp_copy(tr, z), f_or(std::move(meets)));
  for (std::size_t i = tr.n; i-- > 0;) body = f_forall(z[i], body);
  return f_and({wdp_copy(tr, vars), body});
}

WdpBattery wdp_formulas(const Language& L, std::size_t max_size, std::size_t max_index) {
  if (L.size() > 16) throw input_error("language too large for the WDP battery");
  WdpBattery b;
  b.language = L;
  b.max_size = max_size;
  for (std::size_t n = 1; n <= max_size && !b.truncated; ++n) {
    for (std::uint32_t mask = 0; mask < (1u << L.size()) && !b.truncated; ++mask) {
      std::vector<std::string> names;
      for (std::size_t s = 0; s < L.size(); ++s)
        if (mask >> s & 1) names.push_back(L[s].name);
      const Language sub = L.sublanguage(names);
      std::size_t bits = 0;
      for (const auto& sym : sub.symbols()) bits += ipow(n, sym.arity);
      if (bits > 24) throw input_error("WDP battery bounds too large");
      for_each_model_bits(Theory(sub, f_true()), n, [&](const std::vector<std::vector<std::uint8_t>>& mb) {
        if (b.triples.size() >= max_index) {
          b.truncated = true;
          return false;
        }
        FinStructure M(sub, canonical_points(n));
        M.mutable_bits() = mb;
        b.triples.push_back({sub, n, std::move(M)});
        return true;
      });
    }
  }
  std::vector<std::string> ys;
  std::vector<Formula> exists;  // exists y psi_k(y), closed
  for (const auto& tr : b.triples) {
    b.psi.push_back(wdp_psi(tr, wdp_vars(tr.n), "z"));
    std::vector<std::string> y;
    for (std::size_t i = 0; i < tr.n; ++i) y.push_back("y" + std::to_string(i));
    Formula e = wdp_psi(tr, y, "z");
    for (std::size_t i = tr.n; i-- > 0;) e = f_exists(y[i], e);
    exists.push_back(e);
  }
  b.phi.assign(max_size + 1, f_false());
  for (std::size_t n = 1; n <= max_size; ++n) {
    std::vector<Formula> disj;
    for (std::size_t k = 0; k < b.triples.size(); ++k) {
      if (b.triples[k].n != n) continue;
      std::vector<Formula> earlier(exists.begin(), exists.begin() + static_cast<std::ptrdiff_t>(k));
      disj.push_back(f_and({b.psi[k], f_not(f_or(std::move(earlier)))}));
    }
    b.phi[n] = f_or(std::move(disj));
  }
  return b;
}

WdpHarnessResult wdp_harness(const WdpBattery& b, const FinStructure& A, std::size_t f_max) {
  if (!b.language.is_sublanguage_of(A.language()))
    throw input_error("structure language does not contain the battery language");
  if (A.size() > 64) throw input_error("structure too large for the WDP harness");
  WdpHarnessResult r;
  r.wdp_holds = wdp_upto(A, f_max).holds();
  for (std::size_t k = 0; k < b.triples.size() && !r.firing_k; ++k) {
    const auto& tr = b.triples[k];
    const CompiledFormula psi(b.psi[k], A.language(), wdp_vars(tr.n));
    std::vector<std::size_t> tup(tr.n, 0);
    while (tr.n <= A.size()) {
      if (psi.eval(A, tup)) {
        r.firing_k = k;
        break;
      }
      std::size_t i = tr.n;
      while (i > 0 && ++tup[i - 1] == A.size()) tup[--i] = 0;
      if (i == 0) break;
    }
  }
  r.families.resize(b.max_size + 1);
  for (std::size_t n = 1; n <= b.max_size; ++n) {
    const CompiledFormula phi(b.phi[n], A.language(), wdp_vars(n));
    std::vector<std::uint64_t> masks;
    std::vector<std::size_t> tup(n, 0);
    while (n <= A.size()) {
      if (phi.eval(A, tup)) {
        std::uint64_t m = 0;
        for (std::size_t v : tup) m |= std::uint64_t{1} << v;
        masks.push_back(m);
      }
      std::size_t i = n;
      while (i > 0 && ++tup[i - 1] == A.size()) tup[--i] = 0;
      if (i == 0) break;
    }
    r.families[n] = SetFamily(A.universe(), std::move(masks));
    if (!r.firing_n && intersecting_check(r.families[n])) {
      r.firing_n = n;
      r.family = r.families[n];
    }
  }
  const bool fails_at_battery_bound = !wdp_upto(A, b.max_size).holds();
  const bool firing_consistent = b.truncated || r.firing_k.has_value() == fails_at_battery_bound;
  const bool lemma = !r.firing_k || (r.firing_n && *r.firing_n == b.triples[*r.firing_k].n);
  r.ok = firing_consistent && lemma && (r.wdp_holds || r.firing_n.has_value());
  return r;
}

}  // namespace structo

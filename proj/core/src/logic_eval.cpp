#include <algorithm>

#include "structo/error.hpp"
#include "structo/logic.hpp"
#include "structo/util.hpp"

namespace structo {

// Values: 0 false, 1 true, 2 unknown.

CompiledFormula::CompiledFormula(const Formula& f, const Language& lang, const std::vector<std::string>& free_order) {
  check_formula(f, lang);
  std::vector<std::string> order = free_order;
  if (order.empty()) {
    auto fv = free_vars(f);
    order.assign(fv.begin(), fv.end());
  } else {
    for (const auto& v : free_vars(f))
      if (std::find(order.begin(), order.end(), v) == order.end())
        throw input_error("no value supplied for free variable '" + v + "'");
  }
  std::map<std::string, std::size_t> scope;
  for (const auto& v : order) scope[v] = num_slots_++;
  num_free_ = order.size();
  // Symbols are resolved against lang by name at build time.
  lang_symbols_ = lang;
  std::map<std::string, int> closed_ids;
  std::set<std::size_t> used;
  root_ = build(f, scope, closed_ids, used);
}

int CompiledFormula::build(const Formula& f, std::map<std::string, std::size_t>& scope,
                           std::map<std::string, int>& closed_ids, std::set<std::size_t>& used) {
  const bool compound = f->op != Op::True && f->op != Op::False && f->op != Op::Atom && f->op != Op::Eq;
  std::string key;
  if (compound && free_vars(f).empty()) {
    key = print(f);
    auto it = closed_ids.find(key);
    if (it != closed_ids.end()) return it->second;
  }
  Node node{f->op, 0, {}, {}, -1};
  auto slot_of = [&](const std::string& v) {
    auto it = scope.find(v);
    if (it == scope.end()) throw input_error("unbound variable '" + v + "'");
    used.insert(it->second);
    return it->second;
  };
  switch (f->op) {
    case Op::True:
    case Op::False: break;
    case Op::Atom:
      node.sym = lang_symbols_.index(f->name);
      for (const auto& v : f->vars) node.slots.push_back(slot_of(v));
      break;
    case Op::Eq:
      node.slots = {slot_of(f->vars[0]), slot_of(f->vars[1])};
      break;
    case Op::Not:
    case Op::And:
    case Op::Or:
      for (const auto& k : f->kids) node.kids.push_back(build(k, scope, closed_ids, used));
      break;
    case Op::Exists:
    case Op::Forall: {
      const std::size_t slot = num_slots_++;
      auto prev = scope.find(f->name);
      std::optional<std::size_t> saved;
      if (prev != scope.end()) saved = prev->second;
      scope[f->name] = slot;
      std::set<std::size_t> inner;
      node.kids.push_back(build(f->kids[0], scope, closed_ids, inner));
      inner.erase(slot);
      used.insert(inner.begin(), inner.end());
      if (saved) scope[f->name] = *saved;
      else scope.erase(f->name);
      node.slots = {slot};
      break;
    }
  }
  if (!key.empty()) node.cache_id = static_cast<int>(num_cached_++);
  nodes_.push_back(std::move(node));
  const int id = static_cast<int>(nodes_.size() - 1);
  if (!key.empty()) closed_ids.emplace(key, id);
  return id;
}

template <class Get>
int CompiledFormula::run(int id, std::size_t n, Get& get, std::vector<std::size_t>& env,
                         std::vector<std::int8_t>& cache) const {
  const Node& node = nodes_[static_cast<std::size_t>(id)];
  if (node.cache_id >= 0 && cache[static_cast<std::size_t>(node.cache_id)] >= 0)
    return cache[static_cast<std::size_t>(node.cache_id)];
  int r = 0;
  switch (node.op) {
    case Op::True: r = 1; break;
    case Op::False: r = 0; break;
    case Op::Atom: {
      std::size_t code = 0;
      for (std::size_t s : node.slots) code = code * n + env[s];
      r = get(node.sym, code);
      break;
    }
    case Op::Eq: r = env[node.slots[0]] == env[node.slots[1]] ? 1 : 0; break;
    case Op::Not: {
      int a = run(node.kids[0], n, get, env, cache);
      r = a == 2 ? 2 : 1 - a;
      break;
    }
    case Op::And:
    case Op::Or: {
      const int absorb = node.op == Op::And ? 0 : 1;
      r = 1 - absorb;
      for (int k : node.kids) {
        int a = run(k, n, get, env, cache);
        if (a == absorb) {
          r = absorb;
          break;
        }
        if (a == 2) r = 2;
      }
      break;
    }
    case Op::Exists:
    case Op::Forall: {
      const int absorb = node.op == Op::Exists ? 1 : 0;
      const std::size_t slot = node.slots[0];
      r = 1 - absorb;
      for (std::size_t v = 0; v < n; ++v) {
        env[slot] = v;
        int a = run(node.kids[0], n, get, env, cache);
        if (a == absorb) {
          r = absorb;
          break;
        }
        if (a == 2) r = 2;
      }
      break;
    }
  }
  if (node.cache_id >= 0) cache[static_cast<std::size_t>(node.cache_id)] = static_cast<std::int8_t>(r);
  return r;
}

bool CompiledFormula::eval(const FinStructure& A, const std::vector<std::size_t>& free_values) const {
  if (!(A.language() == lang_symbols_)) throw input_error("structure language differs from the formula's language");
  if (free_values.size() != num_free_) throw input_error("wrong number of free variable values");
  std::vector<std::size_t> env(num_slots_, 0);
  std::copy(free_values.begin(), free_values.end(), env.begin());
  std::vector<std::int8_t> cache(num_cached_, -1);
  auto get = [&](std::size_t sym, std::size_t code) { return A.holds_code(sym, code) ? 1 : 0; };
  return run(root_, A.size(), get, env, cache) == 1;
}

int CompiledFormula::eval3(std::size_t n, const std::vector<std::vector<std::uint8_t>>& bits,
                           const std::vector<std::size_t>& free_values) const {
  if (free_values.size() != num_free_) throw input_error("wrong number of free variable values");
  std::vector<std::size_t> env(num_slots_, 0);
  std::copy(free_values.begin(), free_values.end(), env.begin());
  std::vector<std::int8_t> cache(num_cached_, -1);
  auto get = [&](std::size_t sym, std::size_t code) { return static_cast<int>(bits[sym][code]); };
  return run(root_, n, get, env, cache);
}

bool eval(const FinStructure& A, const Formula& f, const Env& env) {
  std::vector<std::string> order;
  std::vector<std::size_t> values;
  for (const auto& v : free_vars(f)) {
    auto it = env.find(v);
    if (it == env.end()) throw input_error("no assignment for free variable '" + v + "'");
    order.push_back(v);
    values.push_back(A.index(it->second));
  }
  if (order.empty()) return CompiledFormula(f, A.language()).eval(A);
  return CompiledFormula(f, A.language(), order).eval(A, values);
}

bool satisfies(const FinStructure& A, const Theory& T) {
  if (!(A.language() == T.language)) throw input_error("structure language differs from the theory's language");
  return CompiledFormula(T.sentence, T.language).eval(A);
}

}  // namespace structo

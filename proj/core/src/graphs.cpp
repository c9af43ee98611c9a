#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "structo/combinat.hpp"
#include "structo/error.hpp"
#include "structo/util.hpp"

namespace structo {

// ---------------------------------------------------------------- Graphing

Graphing::Graphing(FinER er, std::vector<std::pair<std::size_t, std::size_t>> edges)
    : er_(std::move(er)), edges_(std::move(edges)) {
  const std::size_t n = er_.size();
  adj_.assign(n, {});
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& [a, b] : edges_) {
    if (a >= n || b >= n) throw input_error("edge endpoint out of range");
    if (a == b) throw input_error("loop at '" + er_.point(a) + "'");
    if (!er_.related(a, b))
      throw input_error("edge " + er_.point(a) + " " + er_.point(b) + " joins different classes");
    if (!seen.emplace(std::min(a, b), std::max(a, b)).second)
      throw input_error("repeated edge " + er_.point(a) + " " + er_.point(b));
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }
  for (auto& l : adj_) std::sort(l.begin(), l.end());
  for (const auto& cls : er_.classes()) {
    std::vector<bool> seen_pt(n, false);
    std::deque<std::size_t> q{cls.front()};
    seen_pt[cls.front()] = true;
    std::size_t reached = 1;
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop_front();
      for (std::size_t v : adj_[u])
        if (!seen_pt[v]) {
          seen_pt[v] = true;
          ++reached;
          q.push_back(v);
        }
    }
    if (reached != cls.size()) throw input_error("class of '" + er_.point(cls.front()) + "' is not connected");
  }
}

Graphing Graphing::from_graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = root(parent[x]);
  };
  for (const auto& [a, b] : edges) {
    if (a >= n || b >= n) throw input_error("edge endpoint out of range");
    parent[root(a)] = root(b);
  }
  std::vector<std::size_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = root(i);
  const auto names = canonical_points(n);
  FinER E = FinER::from_labels(names, labels);
  std::vector<std::pair<std::size_t, std::size_t>> es;
  for (const auto& [a, b] : edges) {
    const std::size_t ia = E.index(names[a]), ib = E.index(names[b]);
    es.emplace_back(std::min(ia, ib), std::max(ia, ib));
  }
  return Graphing(std::move(E), std::move(es));
}

std::optional<std::vector<std::uint8_t>> two_coloring(const Graphing& G) {
  const std::size_t n = G.er().size();
  std::vector<std::uint8_t> col(n, 2);
  for (std::size_t s = 0; s < n; ++s) {
    if (col[s] != 2) continue;
    col[s] = 0;
    std::deque<std::size_t> q{s};
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop_front();
      for (std::size_t v : G.neighbors()[u]) {
        if (col[v] == 2) {
          col[v] = static_cast<std::uint8_t>(1 - col[u]);
          q.push_back(v);
        } else if (col[v] == col[u]) {
          return std::nullopt;
        }
      }
    }
  }
  return col;
}

Graphing bipartite_graphing(const FinER& E) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& cls : E.classes()) {
    if (cls.size() < 2) throw input_error("class of '" + E.point(cls.front()) + "' is a singleton");
    const std::size_t h = cls.size() / 2;
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = h; j < cls.size(); ++j)
        edges.emplace_back(std::min(cls[i], cls[j]), std::max(cls[i], cls[j]));
  }
  std::sort(edges.begin(), edges.end());
  Graphing G(E, std::move(edges));
  if (!two_coloring(G)) throw contract_error("bipartite graphing has an odd cycle");
  return G;
}

Subdivision k_subdivide(const Graphing& G, std::size_t k) {
  if (k == 0) throw input_error("subdivision length must be positive");
  const FinER& E = G.er();
  std::vector<Point> names = E.points();
  std::vector<std::size_t> labels;
  for (std::size_t i = 0; i < E.size(); ++i) labels.push_back(E.class_of(i));
  std::vector<std::vector<Point>> paths;  // per edge: tail, fresh..., head
  for (const auto& [a, b] : G.edges()) {
    std::vector<Point> path{E.point(a)};
    for (std::size_t i = 1; i < k; ++i) {
      names.push_back(tuple_name({E.point(a), E.point(b), std::to_string(i)}));
      labels.push_back(E.class_of(a));
      path.push_back(names.back());
    }
    path.push_back(E.point(b));
    paths.push_back(std::move(path));
  }
  {
    std::set<Point> uniq(names.begin(), names.end());
    if (uniq.size() != names.size()) throw input_error("fresh subdivision point collides with an existing point");
  }
  FinER X = FinER::from_labels(names, labels);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& path : paths)
    for (std::size_t i = 0; i + 1 < path.size(); ++i) edges.emplace_back(X.index(path[i]), X.index(path[i + 1]));
  std::vector<std::size_t> img;
  for (const auto& p : E.points()) img.push_back(X.index(p));
  PointMap inc(E, X, std::move(img));
  return {Graphing(std::move(X), std::move(edges)), std::move(inc)};
}

std::optional<std::vector<std::size_t>> potential_labeling(const Graphing& G, std::size_t k) {
  if (k == 0) throw input_error("modulus must be positive");
  const std::size_t n = G.er().size();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> step(n);  // (neighbor, delta mod k)
  for (const auto& [t, h] : G.edges()) {
    step[t].emplace_back(h, 1 % k);
    step[h].emplace_back(t, (k - 1 % k) % k);
  }
  std::vector<std::size_t> label(n, 0);
  std::vector<bool> done(n, false);
  for (std::size_t s = 0; s < n; ++s) {
    if (done[s]) continue;
    done[s] = true;
    std::deque<std::size_t> q{s};
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop_front();
      for (const auto& [v, d] : step[u])
        if (!done[v]) {
          done[v] = true;
          label[v] = (label[u] + d) % k;
          q.push_back(v);
        }
    }
  }
  for (const auto& [t, h] : G.edges())
    if ((label[t] + 1) % k != label[h]) return std::nullopt;
  return label;
}

CycleReport enumerate_cycles(const Graphing& G, std::size_t k) {
  if (k == 0) throw input_error("modulus must be positive");
  const std::size_t n = G.er().size();
  const auto& adj = G.neighbors();
  // Rank points by degree (descending) so every cycle is rooted at a branch point.
  std::vector<std::size_t> order(n), rank(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return adj[a].size() > adj[b].size(); });
  for (std::size_t i = 0; i < n; ++i) rank[order[i]] = i;
  CycleReport rep;
  std::vector<bool> on(n, false);
  std::vector<std::size_t> path;
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t root, std::size_t u) {
    for (std::size_t v : adj[u]) {
      if (v == root) {
        // Each cycle is seen in two directions; keep one.
        if (path.size() >= 3 && rank[path[1]] < rank[path.back()]) {
          ++rep.cycles;
          if (path.size() % k != 0 && !rep.bad) rep.bad = path;
        }
        continue;
      }
      if (on[v] || rank[v] < rank[root]) continue;
      on[v] = true;
      path.push_back(v);
      dfs(root, v);
      path.pop_back();
      on[v] = false;
    }
  };
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t root = order[r];
    on[root] = true;
    path.assign(1, root);
    dfs(root, root);
    on[root] = false;
  }
  return rep;
}

// ---------------------------------------------------------------- small graphs

namespace {

std::uint64_t pair_bit(std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return std::uint64_t{1} << (j * (j - 1) / 2 + i);
}

}  // namespace

std::uint64_t graph_code(const SimpleGraph& g) {
  if (g.n > 11) throw input_error("graph codes support at most 11 vertices");
  std::uint64_t c = 0;
  for (const auto& [a, b] : g.edges) c |= pair_bit(a, b);
  return c;
}

std::uint64_t graph_canonical_code(const SimpleGraph& g) {
  const std::size_t n = g.n;
  if (n > 11) throw input_error("graph codes support at most 11 vertices");
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  // Colour refinement; colours are ranks of sorted signatures, so they are
  // invariant under relabeling.
  std::vector<std::size_t> col(n);
  for (std::size_t v = 0; v < n; ++v) col[v] = adj[v].size();
  std::size_t classes = 0;
  while (true) {
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> sig(n);
    for (std::size_t v = 0; v < n; ++v) {
      sig[v].first = col[v];
      for (std::size_t u : adj[v]) sig[v].second.push_back(col[u]);
      std::sort(sig[v].second.begin(), sig[v].second.end());
    }
    auto sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (std::size_t v = 0; v < n; ++v)
      col[v] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
    if (sorted.size() == classes) break;
    classes = sorted.size();
  }
  std::vector<std::vector<std::size_t>> cells(classes);
  for (std::size_t v = 0; v < n; ++v) cells[col[v]].push_back(v);
  std::vector<std::size_t> offset(classes, 0);
  for (std::size_t c = 1; c < classes; ++c) offset[c] = offset[c - 1] + cells[c - 1].size();
  std::vector<std::size_t> pos(n);
  std::uint64_t best = ~std::uint64_t{0};
  while (true) {
    for (std::size_t c = 0; c < classes; ++c)
      for (std::size_t i = 0; i < cells[c].size(); ++i) pos[cells[c][i]] = offset[c] + i;
    std::uint64_t code = 0;
    for (const auto& [a, b] : g.edges) code |= pair_bit(pos[a], pos[b]);
    best = std::min(best, code);
    std::size_t c = 0;
    while (c < classes && !std::next_permutation(cells[c].begin(), cells[c].end())) ++c;
    if (c == classes) break;
  }
  return n == 0 ? 0 : best;
}

std::vector<SimpleGraph> graphs_up_to_iso(std::size_t n) {
  if (n > 8) throw input_error("graph enumeration supports at most 8 vertices");
  auto decode = [](std::size_t m, std::uint64_t code) {
    SimpleGraph g;
    g.n = m;
    for (std::size_t j = 1; j < m; ++j)
      for (std::size_t i = 0; i < j; ++i)
        if (code & pair_bit(i, j)) g.edges.emplace_back(i, j);
    return g;
  };
  std::set<std::uint64_t> level{0};
  for (std::size_t m = 1; m <= n; ++m) {
    std::set<std::uint64_t> next;
    for (std::uint64_t code : level) {
      const SimpleGraph base = decode(m - 1, code);
      for (std::uint64_t nb = 0; nb < (std::uint64_t{1} << (m - 1)); ++nb) {
        SimpleGraph g = base;
        g.n = m;
        for (std::size_t i = 0; i + 1 < m; ++i)
          if (nb >> i & 1) g.edges.emplace_back(i, m - 1);
        next.insert(graph_canonical_code(g));
      }
    }
    level = std::move(next);
  }
  std::vector<SimpleGraph> out;
  for (std::uint64_t code : level) out.push_back(decode(n, code));
  return out;
}

}  // namespace structo

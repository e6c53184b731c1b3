#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mpcsr/matrix.hpp"

namespace mpcsr {

struct Edge {
  std::size_t source = 0;
  std::size_t target = 0;
  double weight = 0.0;

  bool operator==(const Edge&) const = default;
};

/// Weighted digraph on nodes 0..node_count-1 without parallel edges.
class WeightedDigraph {
 public:
  explicit WeightedDigraph(std::size_t node_count) : n_(node_count), out_(node_count) {
    if (node_count == 0) throw DimensionError("digraph needs at least one node");
  }

  /// Edge (i,j) for every finite a(i,j).
  static WeightedDigraph from_matrix(const Matrix& a) {
    detail::require_square(a, "from_matrix");
    WeightedDigraph g(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        if (a(i, j).is_finite()) g.add_edge(i, j, a(i, j).value());
    return g;
  }

  void add_edge(std::size_t source, std::size_t target, double weight) {
    if (source >= n_ || target >= n_) throw DimensionError("edge endpoint out of range");
    for (std::size_t e : out_[source])
      if (edges_[e].target == target)
        throw Error("duplicate edge " + std::to_string(source) + "->" + std::to_string(target));
    out_[source].push_back(edges_.size());
    edges_.push_back({source, target, Scalar(weight).value()});
  }

  Matrix to_matrix() const {
    Matrix m(n_, n_);
    for (const Edge& e : edges_) m(e.source, e.target) = e.weight;
    return m;
  }

  std::size_t node_count() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::vector<std::size_t> successors(std::size_t v) const {
    std::vector<std::size_t> s;
    for (std::size_t e : out_[v]) s.push_back(edges_[e].target);
    return s;
  }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_;
};

/// Maximum cycle mean by Karp's recurrence started from every node at once.
/// Empty when the digraph has no cycle.
inline std::optional<double> max_cycle_mean(const WeightedDigraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<Scalar>> d(n + 1, std::vector<Scalar>(n, eps));
  std::fill(d[0].begin(), d[0].end(), Scalar(0.0));
  for (std::size_t k = 1; k <= n; ++k)
    for (const Edge& e : g.edges()) d[k][e.target] += d[k - 1][e.source] * Scalar(e.weight);

  std::optional<double> best;
  for (std::size_t v = 0; v < n; ++v) {
    if (d[n][v].is_eps()) continue;
    std::optional<double> worst;
    for (std::size_t k = 0; k < n; ++k) {
      if (d[k][v].is_eps()) continue;
      const double mean = (d[n][v].value() - d[k][v].value()) / static_cast<double>(n - k);
      if (!worst || mean < *worst) worst = mean;
    }
    if (worst && (!best || *worst > *best)) best = worst;
  }
  return best;
}

inline std::optional<double> max_cycle_mean(const Matrix& a) {
  return max_cycle_mean(WeightedDigraph::from_matrix(a));
}

/// Strongly connected components (iterative Tarjan). Each component is
/// sorted, and components are ordered by their smallest node.
inline std::vector<std::vector<std::size_t>> strongly_connected_components(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& arcs) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [u, v] : arcs) adj[u].push_back(v);

  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> out;
  std::size_t counter = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    std::vector<std::pair<std::size_t, std::size_t>> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, next] = frames.back();
      if (next < adj[v].size()) {
        const std::size_t w = adj[v][next++];
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::size_t done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
      if (low[done] == index[done]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != done);
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::pair<std::size_t, std::size_t>> arcs_of(const WeightedDigraph& g) {
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  for (const Edge& e : g.edges()) arcs.emplace_back(e.source, e.target);
  return arcs;
}

inline std::vector<std::vector<std::size_t>> strongly_connected_components(const WeightedDigraph& g) {
  return strongly_connected_components(g.node_count(), arcs_of(g));
}

inline bool is_irreducible(const WeightedDigraph& g) {
  return strongly_connected_components(g).size() == 1;
}

inline bool is_irreducible(const Matrix& a) { return is_irreducible(WeightedDigraph::from_matrix(a)); }

/// Result of a breadth-first level analysis of one strongly connected component.
struct ComponentPeriod {
  std::size_t cyclicity = 0;             // 0 when the component has no edge
  std::vector<std::size_t> level;        // BFS level from the smallest node (indexed by node)
};

namespace detail {

/// BFS from the smallest node of `nodes` along arcs inside the component;
/// cyclicity is the gcd of level(u)+1-level(v) over all internal arcs.
inline ComponentPeriod component_period(std::size_t n, const std::vector<std::size_t>& nodes,
                                        const std::vector<std::pair<std::size_t, std::size_t>>& arcs) {
  std::vector<bool> inside(n, false);
  for (std::size_t v : nodes) inside[v] = true;
  std::vector<std::vector<std::size_t>> adj(n);
  std::vector<std::pair<std::size_t, std::size_t>> internal;
  for (auto [u, v] : arcs)
    if (inside[u] && inside[v]) {
      adj[u].push_back(v);
      internal.emplace_back(u, v);
    }

  constexpr std::size_t unseen = static_cast<std::size_t>(-1);
  ComponentPeriod p;
  p.level.assign(n, unseen);
  const std::size_t anchor = *std::min_element(nodes.begin(), nodes.end());
  p.level[anchor] = 0;
  std::queue<std::size_t> q;
  q.push(anchor);
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop();
    for (std::size_t v : adj[u])
      if (p.level[v] == unseen) {
        p.level[v] = p.level[u] + 1;
        q.push(v);
      }
  }
  std::size_t g = 0;
  for (auto [u, v] : internal) {
    if (p.level[u] == unseen || p.level[v] == unseen) throw Error("component is not strongly connected");
    const long long diff = static_cast<long long>(p.level[u]) + 1 - static_cast<long long>(p.level[v]);
    g = std::gcd(g, static_cast<std::size_t>(diff < 0 ? -diff : diff));
  }
  p.cyclicity = g;
  return p;
}

}  // namespace detail

/// Cyclicity of a completely reducible digraph: gcd of cycle lengths per
/// strongly connected component, lcm across components. Components without
/// edges are ignored.
inline std::size_t cyclicity(std::size_t node_count, const std::vector<std::pair<std::size_t, std::size_t>>& arcs) {
  if (arcs.empty()) throw Error("cyclicity is undefined for a digraph without edges");
  std::size_t result = 1;
  for (const auto& comp : strongly_connected_components(node_count, arcs)) {
    const auto p = detail::component_period(node_count, comp, arcs);
    if (p.cyclicity > 0) result = std::lcm(result, p.cyclicity);
  }
  return result;
}

/// Cyclic class of every node of one strongly connected component, with the
/// smallest node in class 0. Nodes outside the component map to 0.
inline std::vector<std::size_t> cyclic_classes(std::size_t node_count, const std::vector<std::size_t>& nodes,
                                               const std::vector<std::pair<std::size_t, std::size_t>>& arcs) {
  const auto p = detail::component_period(node_count, nodes, arcs);
  std::vector<std::size_t> cls(node_count, 0);
  if (p.cyclicity == 0) return cls;
  for (std::size_t v : nodes) cls[v] = p.level[v] % p.cyclicity;
  return cls;
}

}  // namespace mpcsr

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "mpcsr/closure.hpp"
#include "mpcsr/digraph.hpp"

namespace mpcsr {

using Arc = std::pair<std::size_t, std::size_t>;

/// One strongly connected component of the critical digraph.
struct CriticalComponent {
  std::vector<std::size_t> nodes;     // sorted
  std::vector<Arc> edges;             // critical edges inside the component
  std::size_t cyclicity = 1;
  std::vector<std::size_t> class_of;  // indexed by node; meaningful for members only

  bool contains(std::size_t v) const { return std::binary_search(nodes.begin(), nodes.end(), v); }

  /// Smallest member of each cyclic class, ordered by class index.
  std::vector<std::size_t> representatives() const {
    std::vector<std::size_t> rep(cyclicity, static_cast<std::size_t>(-1));
    for (std::size_t v : nodes)
      if (rep[class_of[v]] == static_cast<std::size_t>(-1)) rep[class_of[v]] = v;
    return rep;
  }
};

struct CriticalStructure {
  double lambda = 0.0;
  std::size_t node_count = 0;
  std::vector<std::size_t> critical_nodes;  // sorted
  std::vector<Arc> critical_edges;
  std::vector<CriticalComponent> components;
  std::size_t global_cyclicity = 1;
  std::size_t ambient_cyclicity = 1;
  std::vector<std::size_t> ambient_class_of;

  std::size_t q() const noexcept { return critical_nodes.size(); }

  bool is_critical(std::size_t v) const {
    return std::binary_search(critical_nodes.begin(), critical_nodes.end(), v);
  }

  std::optional<std::size_t> component_of(std::size_t v) const {
    for (std::size_t c = 0; c < components.size(); ++c)
      if (components[c].contains(v)) return c;
    return std::nullopt;
  }
};

namespace detail {

/// lcm of the per-component cyclicities of the full digraph together with
/// the per-component BFS classes (ambient classes).
inline std::pair<std::size_t, std::vector<std::size_t>> ambient_period(const WeightedDigraph& g) {
  const auto arcs = arcs_of(g);
  std::vector<std::size_t> cls(g.node_count(), 0);
  std::size_t r = 1;
  for (const auto& comp : strongly_connected_components(g.node_count(), arcs)) {
    const auto p = component_period(g.node_count(), comp, arcs);
    if (p.cyclicity == 0) continue;
    r = std::lcm(r, p.cyclicity);
    for (std::size_t v : comp) cls[v] = p.level[v] % p.cyclicity;
  }
  return {r, std::move(cls)};
}

}  // namespace detail

/// Critical digraph of g given its maximum cycle mean. Criticality is read
/// off the metric matrix of the normalized matrix: node i is critical when
/// its diagonal entry is 0, edge (i,j) when a(i,j) + A⁺(j,i) = 0.
inline CriticalStructure critical_graph(const WeightedDigraph& g, double lambda) {
  if (!std::isfinite(lambda)) throw Error("critical_graph: maximum cycle mean must be finite");
  const std::size_t n = g.node_count();
  const Matrix normalized = shifted(g.to_matrix(), -lambda);
  const Matrix plus = metric_matrix(normalized);

  CriticalStructure cs;
  cs.lambda = lambda;
  cs.node_count = n;
  for (std::size_t i = 0; i < n; ++i)
    if (plus(i, i).is_finite() && std::abs(plus(i, i).value()) <= tolerance) cs.critical_nodes.push_back(i);
  for (const Edge& e : g.edges()) {
    const Scalar back = plus(e.target, e.source);
    if (back.is_eps()) continue;
    if (std::abs(normalized(e.source, e.target).value() + back.value()) <= tolerance)
      cs.critical_edges.emplace_back(e.source, e.target);
  }
  std::sort(cs.critical_edges.begin(), cs.critical_edges.end());

  std::vector<bool> crit(n, false);
  for (std::size_t v : cs.critical_nodes) crit[v] = true;
  for (auto& comp : strongly_connected_components(n, cs.critical_edges)) {
    if (!crit[comp.front()]) continue;
    CriticalComponent c;
    c.nodes = comp;
    for (const Arc& a : cs.critical_edges)
      if (c.contains(a.first) && c.contains(a.second)) c.edges.push_back(a);
    const auto p = detail::component_period(n, c.nodes, c.edges);
    if (p.cyclicity == 0) throw Error("critical component without critical edges");
    c.cyclicity = p.cyclicity;
    c.class_of.assign(n, 0);
    for (std::size_t v : c.nodes) c.class_of[v] = p.level[v] % p.cyclicity;
    cs.global_cyclicity = std::lcm(cs.global_cyclicity, c.cyclicity);
    cs.components.push_back(std::move(c));
  }
  std::tie(cs.ambient_cyclicity, cs.ambient_class_of) = detail::ambient_period(g);
  return cs;
}

inline CriticalStructure critical_graph(const WeightedDigraph& g) {
  const auto lambda = max_cycle_mean(g);
  if (!lambda) throw Error("critical_graph: digraph is acyclic");
  return critical_graph(g, *lambda);
}

inline CriticalStructure critical_graph(const Matrix& a) { return critical_graph(WeightedDigraph::from_matrix(a)); }

/// The 0/ε matrix of the critical edges.
inline Matrix critical_matrix(const CriticalStructure& cs) {
  Matrix s(cs.node_count, cs.node_count);
  for (const Arc& a : cs.critical_edges) s(a.first, a.second) = 0.0;
  return s;
}

/// The 0/ε matrix of the critical edges of one component.
inline Matrix critical_matrix(const CriticalStructure& cs, std::size_t component) {
  Matrix s(cs.node_count, cs.node_count);
  for (const Arc& a : cs.components.at(component).edges) s(a.first, a.second) = 0.0;
  return s;
}

}  // namespace mpcsr

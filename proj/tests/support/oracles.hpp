#pragma once

// Reference computations for tests. Deliberately naive and independent of the
// library code they check.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "pie/graph.hpp"

namespace oracle {

using pie::NodeId;
using pie::Weight;
using pie::WeightedEdge;

inline constexpr Weight kInf = std::numeric_limits<Weight>::infinity();

// Bellman-Ford from one source over the undirected edge list.
inline std::vector<Weight> bellman_ford(std::size_t n, const std::vector<WeightedEdge>& edges,
                                        NodeId src) {
  std::vector<Weight> d(n, kInf);
  d[src] = 0;
  for (std::size_t round = 0; round + 1 < n; ++round) {
    bool changed = false;
    for (const auto& e : edges) {
      if (d[e.u] + e.weight < d[e.v]) { d[e.v] = d[e.u] + e.weight; changed = true; }
      if (d[e.v] + e.weight < d[e.u]) { d[e.u] = d[e.v] + e.weight; changed = true; }
    }
    if (!changed) break;
  }
  return d;
}

inline std::vector<std::vector<Weight>> all_pairs(const pie::Graph& g) {
  auto edges = g.edges();
  std::vector<std::vector<Weight>> out;
  for (NodeId s = 0; s < g.node_count(); ++s) out.push_back(bellman_ford(g.node_count(), edges, s));
  return out;
}

// Distance between two nodes of a rooted tree given by parent pointers:
// walk both up to the root, then strip the shared suffix.
inline Weight tree_distance(const std::vector<NodeId>& parent, const std::vector<Weight>& up_weight,
                            NodeId a, NodeId b) {
  auto chain = [&](NodeId x) {
    std::vector<std::pair<NodeId, Weight>> c;  // (node, distance from x)
    Weight acc = 0;
    while (true) {
      c.push_back({x, acc});
      if (parent[x] == pie::kNoNode) break;
      acc += up_weight[x];
      x = parent[x];
    }
    return c;
  };
  auto ca = chain(a);
  auto cb = chain(b);
  for (const auto& [x, da] : ca) {
    for (const auto& [y, db] : cb) {
      if (x == y) return da + db;
    }
  }
  return kInf;
}

// Uniform random labelled tree: node i > 0 hangs under a uniform earlier
// node, then labels are shuffled. Integer weights in [wlo, whi].
inline std::vector<WeightedEdge> random_tree(std::size_t n, std::mt19937_64& rng, int wlo = 1,
                                             int whi = 10) {
  std::vector<NodeId> label(n);
  std::iota(label.begin(), label.end(), 0);
  std::shuffle(label.begin(), label.end(), rng);
  std::uniform_int_distribution<int> w(wlo, whi);
  std::vector<WeightedEdge> edges;
  for (NodeId i = 1; i < n; ++i) {
    NodeId p = std::uniform_int_distribution<NodeId>(0, i - 1)(rng);
    edges.push_back({label[i], label[p], static_cast<Weight>(w(rng))});
  }
  return edges;
}

// Random connected graph: a random tree plus `extra` random chords.
inline pie::Graph random_connected(std::size_t n, std::size_t extra, std::mt19937_64& rng,
                                   int wlo = 1, int whi = 1) {
  auto edges = random_tree(n, rng, wlo, whi);
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
  std::uniform_int_distribution<int> w(wlo, whi);
  for (std::size_t k = 0; k < extra; ++k) {
    NodeId a = pick(rng), b = pick(rng);
    if (a != b) edges.push_back({a, b, static_cast<Weight>(w(rng))});
  }
  return pie::Graph::from_edges(n, edges);
}

inline pie::Graph path_graph(std::size_t n, Weight w = 1) {
  std::vector<WeightedEdge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, w});
  return pie::Graph::from_edges(n, e);
}

inline pie::Graph cycle_graph(std::size_t n) {
  std::vector<WeightedEdge> e;
  for (NodeId i = 0; i < n; ++i) e.push_back({i, static_cast<NodeId>((i + 1) % n), 1});
  return pie::Graph::from_edges(n, e);
}

inline pie::Graph complete_graph(std::size_t n) {
  std::vector<WeightedEdge> e;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) e.push_back({i, j, 1});
  return pie::Graph::from_edges(n, e);
}

// Continuous Pareto with exponent alpha above xmin, by inversion.
inline std::vector<double> pareto(std::size_t count, double alpha, double xmin,
                                  std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> out(count);
  for (auto& x : out) x = xmin * std::pow(1.0 - u(rng), -1.0 / (alpha - 1.0));
  return out;
}

}  // namespace oracle

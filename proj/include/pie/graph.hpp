#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "pie/types.hpp"

namespace pie {

struct Edge {
  NodeId to;
  Weight weight;
};

struct WeightedEdge {
  NodeId u;
  NodeId v;
  Weight weight;
};

/// Undirected, weighted, simple graph with compressed adjacency.
///
/// Every edge is stored in both endpoints' lists with the same weight, and each
/// list is sorted by neighbor id. Instances are immutable once built.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph on `n` nodes. Duplicate pairs collapse to the minimum
  /// weight. Self-loops, out-of-range ids and nonpositive weights throw
  /// ValidationError.
  static Graph from_edges(std::size_t n, std::span<const WeightedEdge> edges);

  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }

  std::span<const Edge> neighbors(NodeId u) const {
    return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
  }
  std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }
  std::size_t max_degree() const noexcept;

  /// Weight of edge (u,v) if present.
  std::optional<Weight> weight(NodeId u, NodeId v) const;
  bool has_edge(NodeId u, NodeId v) const { return weight(u, v).has_value(); }

  /// Each undirected edge once, with u < v, in ascending (u, v) order.
  std::vector<WeightedEdge> edges() const;

  bool operator==(const Graph& other) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Edge> adjacency_;
};

// ---------------------------------------------------------------------------
// Topology acquisition

struct EdgeListResult {
  Graph graph;
  /// original_ids[i] is the id the file used for compacted node i.
  std::vector<std::uint64_t> original_ids;
};

/// Parses "u v [w]" lines. '#' starts a comment line, blank lines are skipped,
/// self-loops are dropped. Compacted ids follow ascending original id.
EdgeListResult load_edge_list(std::istream& in);
EdgeListResult load_edge_list_file(const std::string& path);

/// Writes "u v w" lines for every edge (u < v).
void write_edge_list(const Graph& g, std::ostream& out);

/// Generalized Linear Preference growth model.
///
/// Each step either adds `edges_per_step` links between existing nodes (with
/// probability `mix_probability`) or a new node with that many links. Endpoints
/// are chosen with probability proportional to (degree - beta). A fractional
/// `edges_per_step` is realized as floor + Bernoulli(fraction).
///
/// When `beta` is unset it is solved from `lambda` using the model's
/// asymptotic exponent 1 + (2m - beta(1-p)) / ((1+p)m).
struct GlpParams {
  std::size_t n = 10000;
  double lambda = 2.1;
  std::size_t initial_clique = 4;
  double edges_per_step = 1.13;
  double mix_probability = 0.4695;
  std::optional<double> beta;

  /// beta actually used: explicit value, or the one implied by `lambda`.
  double effective_beta() const;
  void validate() const;
};

Graph generate_glp(const GlpParams& params, std::uint64_t seed);

enum class WeightMode { kUnit, kUniformInt };

std::string to_string(WeightMode mode);
WeightMode parse_weight_mode(const std::string& text);

/// Unit mode sets every weight to 1. UniformInt draws each edge's weight once
/// from {1,...,10}, visiting edges in ascending (u, v) order.
Graph assign_weights(const Graph& g, WeightMode mode, std::uint64_t seed);

/// Induced subgraph on the largest connected component, ids recompacted in
/// ascending order. Equal-size components resolve to the one holding the
/// smallest node id. `kept`, when given, receives the original ids.
Graph largest_component(const Graph& g, std::vector<NodeId>* kept = nullptr);

bool is_connected(const Graph& g);

// ---------------------------------------------------------------------------
// Shortest paths

struct PathResult {
  bool reachable = false;
  Weight distance = kInfinity;
  std::vector<NodeId> path;
};

PathResult shortest_path(const Graph& g, NodeId src, NodeId dst);

/// Dijkstra distances from `src` to every node (kInfinity when unreachable).
std::vector<Weight> single_source_distances(const Graph& g, NodeId src);

/// Distance to the nearest of `sources` for every node.
std::vector<Weight> multi_source_distances(const Graph& g, std::span<const NodeId> sources);

/// Hop counts from `src` (SIZE_MAX when unreachable).
std::vector<std::size_t> bfs_hops(const Graph& g, NodeId src);

/// Double-sweep lower bound on the unweighted diameter.
std::size_t estimate_hop_diameter(const Graph& g);

// ---------------------------------------------------------------------------
// Degree statistics

/// Continuous maximum-likelihood (Hill) exponent of samples >= xmin.
/// Throws EstimationError when fewer than `min_samples` qualify or the sample
/// is degenerate.
double hill_estimate(std::span<const double> samples, double xmin, std::size_t min_samples = 100);

/// Hill estimate over node degrees >= k_min.
double estimate_power_law_exponent(const Graph& g, std::size_t k_min = 2,
                                   std::size_t min_samples = 100);

}  // namespace pie

#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "pie/embedding.hpp"
#include "pie/graph.hpp"
#include "pie/sim_kernel.hpp"

namespace pie {

/// Trees present in both coordinate sets, ascending level.
std::vector<TreeId> common_trees(std::span<const CoordinateVector> a,
                                 std::span<const CoordinateVector> b);

struct Hop {
  NodeId next = kNoNode;
  std::uint32_t level = 0;
  /// w(v, next) + distance from next to the destination in that tree.
  double cost = 0.0;
};

/// Greedy next hop from `v` toward `t`.
///
/// Candidates are (alive neighbor u, level l) pairs whose level-l tree holds
/// u, v and t and where u is strictly closer to t than v in that tree. The pair
/// minimizing w(v,u) + dist_l(u,t) wins; ties go to the smaller neighbor id,
/// then the lower level. Empty only when failures remove every candidate.
std::optional<Hop> next_hop(NodeId v, NodeId t, const MultiTreeEmbedding& emb, const Graph& g,
                            const FailureSet* failures = nullptr);

enum class RouteOutcome { kDelivered, kStuck, kTtlExceeded };

std::string to_string(RouteOutcome outcome);

struct RouteTrace {
  std::vector<NodeId> path;
  /// Level used for each hop; one entry fewer than `path`.
  std::vector<std::uint32_t> levels;
  Weight length = 0.0;
  RouteOutcome outcome = RouteOutcome::kStuck;

  std::size_t hops() const noexcept { return path.empty() ? 0 : path.size() - 1; }
  bool delivered() const noexcept { return outcome == RouteOutcome::kDelivered; }
};

/// Hop budget used when none is given: 4 x the double-sweep hop diameter.
std::size_t default_ttl(const Graph& g);

/// Applies next_hop from `s` until `d` is reached, no candidate remains, or
/// `ttl` hops have been taken.
RouteTrace trace_route(NodeId s, NodeId d, const MultiTreeEmbedding& emb, const Graph& g,
                       const FailureSet* failures, std::size_t ttl);

/// trace.length / shortest distance. Throws ContractViolation for
/// undelivered traces or s == d.
double stretch(const RouteTrace& trace, Weight shortest);

/// Route dump columns: src,dst,outcome,hops,length,d_G,stretch,usedTreeLevels.
void write_route_header(std::ostream& out);
void write_route_row(std::ostream& out, NodeId src, NodeId dst, const RouteTrace& trace,
                     Weight shortest);

}  // namespace pie

#include "pie/route_eval.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "pie/random.hpp"

namespace pie {

std::vector<NodePair> sample_pairs(std::span<const NodeId> eligible, std::size_t count,
                                   std::uint64_t seed) {
  std::vector<NodePair> pairs;
  const std::size_t k = eligible.size();
  if (k < 2 || count == 0) return pairs;
  const std::size_t total = k * (k - 1);
  if (total <= count) {
    pairs.reserve(total);
    for (NodeId s : eligible) {
      for (NodeId d : eligible) {
        if (s != d) pairs.push_back({s, d});
      }
    }
    return pairs;
  }
  Rng rng = make_rng(seed, stream::kPairs);
  std::uniform_int_distribution<std::size_t> pick(0, k - 1);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(count * 2);
  pairs.reserve(count);
  while (pairs.size() < count) {
    NodeId s = eligible[pick(rng)];
    NodeId d = eligible[pick(rng)];
    if (s == d) continue;
    if (!seen.insert((static_cast<std::uint64_t>(s) << 32) | d).second) continue;
    pairs.push_back({s, d});
  }
  return pairs;
}

std::vector<NodeId> alive_nodes(std::size_t n, const FailureSet* failures) {
  std::vector<NodeId> out;
  out.reserve(n);
  for (NodeId u = 0; u < n; ++u) {
    if (!failures || failures->is_alive(u)) out.push_back(u);
  }
  return out;
}

namespace {

// Pair indices grouped by a key node, groups in ascending key order.
std::vector<std::pair<NodeId, std::vector<std::size_t>>> group_pairs(
    std::span<const NodePair> pairs, bool by_source) {
  std::map<NodeId, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    groups[by_source ? pairs[i].src : pairs[i].dst].push_back(i);
  }
  return {groups.begin(), groups.end()};
}

}  // namespace

std::vector<Weight> pair_distances(const Graph& g, std::span<const NodePair> pairs,
                                   Execution exec) {
  std::vector<Weight> out(pairs.size(), kInfinity);
  if (exec == Execution::kSerial) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      out[i] = shortest_path(g, pairs[i].src, pairs[i].dst).distance;
    }
    return out;
  }
  const auto groups = group_pairs(pairs, true);
  const auto count = static_cast<std::int64_t>(groups.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t gi = 0; gi < count; ++gi) {
    const auto& [src, members] = groups[gi];
    const auto dist = single_source_distances(g, src);
    for (std::size_t i : members) out[i] = dist[pairs[i].dst];
  }
  return out;
}

std::vector<RouteTrace> trace_routes(const PieNetwork& net, std::span<const NodePair> pairs,
                                     const FailureSet* failures, Execution exec) {
  std::vector<RouteTrace> out(pairs.size());
  const auto count = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(dynamic, 16) if (exec == Execution::kParallel)
  for (std::int64_t i = 0; i < count; ++i) {
    out[i] = trace_route(pairs[i].src, pairs[i].dst, net.embedding, net.graph, failures, net.ttl);
  }
  return out;
}

std::vector<FlowRecord> simulate_flows(const PieNetwork& net, std::span<const NodePair> pairs,
                                       const FailureSet* failures, Execution exec) {
  std::vector<FlowRecord> out(pairs.size());
  const auto count = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(dynamic, 16) if (exec == Execution::kParallel)
  for (std::int64_t i = 0; i < count; ++i) {
    out[i] = simulate_flow(pairs[i].src, pairs[i].dst, net.embedding, net.graph, failures, net.ttl);
  }
  return out;
}

namespace {

// Next hop from `v` toward the root of `dist`: the smallest-id neighbor on a
// shortest path.
NodeId table_next_hop(const Graph& g, const std::vector<Weight>& dist, NodeId v) {
  for (const auto& e : g.neighbors(v)) {
    if (dist[e.to] + e.weight == dist[v]) return e.to;
  }
  return kNoNode;
}

bool follow_table(const Graph& g, const std::vector<Weight>& dist, NodeId s, NodeId d,
                  const FailureSet* failures) {
  NodeId v = s;
  for (std::size_t hops = 0; v != d; ++hops) {
    if (hops > g.node_count()) return false;
    NodeId next = table_next_hop(g, dist, v);
    if (next == kNoNode || (failures && failures->is_failed(next))) return false;
    v = next;
  }
  return true;
}

}  // namespace

std::vector<std::uint8_t> baseline_delivery(const Graph& g, std::span<const NodePair> pairs,
                                            const FailureSet* failures, Execution exec) {
  std::vector<std::uint8_t> out(pairs.size(), 0);
  if (exec == Execution::kSerial) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto dist = single_source_distances(g, pairs[i].dst);
      out[i] = follow_table(g, dist, pairs[i].src, pairs[i].dst, failures) ? 1 : 0;
    }
    return out;
  }
  const auto groups = group_pairs(pairs, false);
  const auto count = static_cast<std::int64_t>(groups.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t gi = 0; gi < count; ++gi) {
    const auto& [dst, members] = groups[gi];
    const auto dist = single_source_distances(g, dst);
    for (std::size_t i : members) out[i] = follow_table(g, dist, pairs[i].src, dst, failures) ? 1 : 0;
  }
  return out;
}

}  // namespace pie

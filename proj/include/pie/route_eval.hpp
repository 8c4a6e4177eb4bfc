#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pie/network.hpp"
#include "pie/sim_kernel.hpp"
#include "pie/source_routing.hpp"

namespace pie {

// Batch kernels over (src, dst) pairs. Each comes in a parallel form (OpenMP
// over pairs or pair groups) and a serial form kept as the reference the
// parallel one is tested against. Results are indexed by pair, so both forms
// produce identical output.

enum class Execution { kSerial, kParallel };

struct NodePair {
  NodeId src;
  NodeId dst;
  bool operator==(const NodePair&) const = default;
};

/// `count` distinct ordered pairs (src != dst) drawn uniformly from
/// `eligible`. When fewer than `count` exist, every ordered pair is returned
/// in ascending order.
std::vector<NodePair> sample_pairs(std::span<const NodeId> eligible, std::size_t count,
                                   std::uint64_t seed);

/// All nodes that are not failed, ascending.
std::vector<NodeId> alive_nodes(std::size_t n, const FailureSet* failures);

/// Exact shortest distance for every pair. The parallel form runs one
/// Dijkstra per distinct source; the serial form one per pair.
std::vector<Weight> pair_distances(const Graph& g, std::span<const NodePair> pairs,
                                   Execution exec = Execution::kParallel);

std::vector<RouteTrace> trace_routes(const PieNetwork& net, std::span<const NodePair> pairs,
                                     const FailureSet* failures,
                                     Execution exec = Execution::kParallel);

std::vector<FlowRecord> simulate_flows(const PieNetwork& net, std::span<const NodePair> pairs,
                                       const FailureSet* failures,
                                       Execution exec = Execution::kParallel);

/// Shortest-path forwarding with one precomputed next hop per destination
/// (ties to the smaller neighbor id), tables built on the failure-free graph.
/// A route fails as soon as its next hop is failed.
std::vector<std::uint8_t> baseline_delivery(const Graph& g, std::span<const NodePair> pairs,
                                            const FailureSet* failures,
                                            Execution exec = Execution::kParallel);

}  // namespace pie

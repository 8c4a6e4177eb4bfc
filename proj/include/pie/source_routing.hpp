#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "pie/forwarding.hpp"

namespace pie {

/// One divergence between the two directions of a flow: a packet of the
/// opposite direction reached `at` from `to`, but `at` would not have
/// answered through `to`.
struct Bifurcation {
  NodeId at = kNoNode;
  NodeId to = kNoNode;
  bool operator==(const Bifurcation&) const = default;
};

/// Header fields used by the source-aided extension.
struct PacketHeader {
  NodeId src = kNoNode;
  NodeId dst = kNoNode;
  bool is_first = false;
  /// Length accumulated along the path so far.
  Weight dist1 = 0.0;
  /// Sender's knowledge of the opposite direction's length.
  std::optional<Weight> dist2;
  /// Bifurcations in recording order, without repeats.
  std::vector<Bifurcation> bifset;
};

/// What one endpoint knows about a flow with its peer.
struct FlowState {
  /// Length of this endpoint's own direction (owner -> peer).
  std::optional<Weight> forward_length;
  /// Length of the opposite direction (peer -> owner).
  std::optional<Weight> reverse_length;
  /// Bifurcations collected on the peer's first packet.
  std::vector<Bifurcation> bifset;
};

/// First-packet bookkeeping at `v`, reached from `predecessor`: accumulate the
/// link cost and record {v, predecessor} when `predecessor` is not v's greedy
/// next hop back toward the packet's source.
PacketHeader hop_process_first_packet(NodeId v, NodeId predecessor, PacketHeader pkt,
                                      const MultiTreeEmbedding& emb, const Graph& g,
                                      const FailureSet* failures = nullptr);

/// Endpoint update on arrival of a first packet: dist1 is the peer's
/// direction, dist2 (when present) our own, plus the collected bifurcations.
FlowState endpoint_store(const PacketHeader& pkt, FlowState flow);

/// Header for a packet from `owner` to `peer`. First packets carry dist1 = 0
/// and the known reverse length; later packets carry the stored bifurcations
/// only when the reverse direction is strictly shorter.
PacketHeader emit_packet(NodeId owner, NodeId peer, const FlowState& flow, bool is_first);

/// Next hop for a non-first packet at `v`: the turn of the first bifurcation
/// recorded at `v` when that neighbor is alive, else the greedy next hop.
std::optional<NodeId> forward_with_bifset(NodeId v, const PacketHeader& pkt,
                                          const MultiTreeEmbedding& emb, const Graph& g,
                                          const FailureSet* failures = nullptr);

/// Level recorded in RouteTrace::levels for hops steered by a bifurcation.
inline constexpr std::uint32_t kSteeredHop = static_cast<std::uint32_t>(-1);

/// Carries a first packet along the greedy route, applying
/// hop_process_first_packet at every hop. `pkt` is updated in place.
RouteTrace carry_first_packet(PacketHeader& pkt, const MultiTreeEmbedding& emb, const Graph& g,
                              const FailureSet* failures, std::size_t ttl);

/// Carries a non-first packet using forward_with_bifset at every hop.
RouteTrace carry_packet(const PacketHeader& pkt, const MultiTreeEmbedding& emb, const Graph& g,
                        const FailureSet* failures, std::size_t ttl);

/// One bi-directional exchange: first packet src->dst, first reply dst->src,
/// then a steady-state packet src->dst.
struct FlowRecord {
  NodeId src = kNoNode;
  NodeId dst = kNoNode;
  RouteTrace forward;
  RouteTrace reverse;
  RouteTrace steady;
  FlowState source_state;
  bool used_reverse = false;
  std::size_t bifset_size = 0;
};

FlowRecord simulate_flow(NodeId src, NodeId dst, const MultiTreeEmbedding& emb, const Graph& g,
                         const FailureSet* failures, std::size_t ttl);

struct BifSetStats {
  double mean = 0.0;
  std::size_t max = 0;
  std::size_t benefiting = 0;
};

/// Bifurcation-set sizes over flows that steer along the reverse path.
/// Empty when no flow benefits.
std::optional<BifSetStats> bifset_stats(std::span<const FlowRecord> flows);

/// Flow dump columns:
/// src,dst,lenForward,lenReverse,usedReverse,bifSetSize,steadyStateStretch.
void write_flow_header(std::ostream& out);
void write_flow_row(std::ostream& out, const FlowRecord& flow, Weight shortest);

}  // namespace pie

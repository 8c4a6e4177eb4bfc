#include "pie/source_routing.hpp"

#include <algorithm>

#include "pie/format.hpp"

namespace pie {

PacketHeader hop_process_first_packet(NodeId v, NodeId predecessor, PacketHeader pkt,
                                      const MultiTreeEmbedding& emb, const Graph& g,
                                      const FailureSet* failures) {
  auto w = g.weight(predecessor, v);
  if (!w) throw ContractViolation("predecessor is not a neighbor");
  pkt.dist1 += *w;
  if (v != pkt.src) {
    auto back = next_hop(v, pkt.src, emb, g, failures);
    const Bifurcation b{v, predecessor};
    const bool bifurcates = !back || back->next != predecessor;
    if (bifurcates && std::find(pkt.bifset.begin(), pkt.bifset.end(), b) == pkt.bifset.end()) {
      pkt.bifset.push_back(b);
    }
  }
  return pkt;
}

FlowState endpoint_store(const PacketHeader& pkt, FlowState flow) {
  if (!pkt.is_first) throw ContractViolation("endpoint_store expects a first packet");
  flow.reverse_length = pkt.dist1;
  if (pkt.dist2) flow.forward_length = *pkt.dist2;
  flow.bifset = pkt.bifset;
  return flow;
}

PacketHeader emit_packet(NodeId owner, NodeId peer, const FlowState& flow, bool is_first) {
  PacketHeader pkt;
  pkt.src = owner;
  pkt.dst = peer;
  pkt.is_first = is_first;
  if (is_first) {
    pkt.dist1 = 0.0;
    pkt.dist2 = flow.reverse_length;
  } else if (flow.reverse_length && flow.forward_length &&
             *flow.reverse_length < *flow.forward_length) {
    pkt.bifset = flow.bifset;
  }
  return pkt;
}

namespace {

std::optional<Hop> steer(NodeId v, const PacketHeader& pkt, const MultiTreeEmbedding& emb,
                         const Graph& g, const FailureSet* failures) {
  for (const auto& b : pkt.bifset) {
    if (b.at != v) continue;
    if (failures && failures->is_failed(b.to)) break;
    if (auto w = g.weight(v, b.to)) return Hop{b.to, kSteeredHop, *w};
  }
  return next_hop(v, pkt.dst, emb, g, failures);
}

}  // namespace

std::optional<NodeId> forward_with_bifset(NodeId v, const PacketHeader& pkt,
                                          const MultiTreeEmbedding& emb, const Graph& g,
                                          const FailureSet* failures) {
  auto hop = steer(v, pkt, emb, g, failures);
  if (!hop) return std::nullopt;
  return hop->next;
}

RouteTrace carry_first_packet(PacketHeader& pkt, const MultiTreeEmbedding& emb, const Graph& g,
                              const FailureSet* failures, std::size_t ttl) {
  RouteTrace trace;
  trace.path.push_back(pkt.src);
  NodeId v = pkt.src;
  while (v != pkt.dst) {
    if (trace.hops() >= ttl) {
      trace.outcome = RouteOutcome::kTtlExceeded;
      return trace;
    }
    auto hop = next_hop(v, pkt.dst, emb, g, failures);
    if (!hop) {
      trace.outcome = RouteOutcome::kStuck;
      return trace;
    }
    pkt = hop_process_first_packet(hop->next, v, std::move(pkt), emb, g, failures);
    trace.length += *g.weight(v, hop->next);
    trace.path.push_back(hop->next);
    trace.levels.push_back(hop->level);
    v = hop->next;
  }
  trace.outcome = RouteOutcome::kDelivered;
  return trace;
}

RouteTrace carry_packet(const PacketHeader& pkt, const MultiTreeEmbedding& emb, const Graph& g,
                        const FailureSet* failures, std::size_t ttl) {
  RouteTrace trace;
  trace.path.push_back(pkt.src);
  NodeId v = pkt.src;
  while (v != pkt.dst) {
    if (trace.hops() >= ttl) {
      trace.outcome = RouteOutcome::kTtlExceeded;
      return trace;
    }
    auto hop = steer(v, pkt, emb, g, failures);
    if (!hop) {
      trace.outcome = RouteOutcome::kStuck;
      return trace;
    }
    trace.length += *g.weight(v, hop->next);
    trace.path.push_back(hop->next);
    trace.levels.push_back(hop->level);
    v = hop->next;
  }
  trace.outcome = RouteOutcome::kDelivered;
  return trace;
}

FlowRecord simulate_flow(NodeId src, NodeId dst, const MultiTreeEmbedding& emb, const Graph& g,
                         const FailureSet* failures, std::size_t ttl) {
  FlowRecord rec;
  rec.src = src;
  rec.dst = dst;
  FlowState at_src;
  FlowState at_dst;

  PacketHeader first = emit_packet(src, dst, at_src, true);
  rec.forward = carry_first_packet(first, emb, g, failures, ttl);
  if (rec.forward.delivered()) at_dst = endpoint_store(first, at_dst);

  PacketHeader reply = emit_packet(dst, src, at_dst, true);
  rec.reverse = carry_first_packet(reply, emb, g, failures, ttl);
  if (rec.reverse.delivered()) at_src = endpoint_store(reply, at_src);

  PacketHeader steady = emit_packet(src, dst, at_src, false);
  rec.used_reverse = !steady.bifset.empty() ||
                     (at_src.reverse_length && at_src.forward_length &&
                      *at_src.reverse_length < *at_src.forward_length);
  rec.bifset_size = steady.bifset.size();
  rec.steady = carry_packet(steady, emb, g, failures, ttl);
  rec.source_state = std::move(at_src);
  return rec;
}

std::optional<BifSetStats> bifset_stats(std::span<const FlowRecord> flows) {
  BifSetStats stats;
  std::size_t total = 0;
  for (const auto& f : flows) {
    if (!f.used_reverse) continue;
    ++stats.benefiting;
    total += f.bifset_size;
    stats.max = std::max(stats.max, f.bifset_size);
  }
  if (stats.benefiting == 0) return std::nullopt;
  stats.mean = static_cast<double>(total) / static_cast<double>(stats.benefiting);
  return stats;
}

void write_flow_header(std::ostream& out) {
  out << "src,dst,lenForward,lenReverse,usedReverse,bifSetSize,steadyStateStretch\n";
}

void write_flow_row(std::ostream& out, const FlowRecord& flow, Weight shortest) {
  out << flow.src << ',' << flow.dst << ',' << format_number(flow.forward.length) << ','
      << format_number(flow.reverse.length) << ',' << (flow.used_reverse ? "true" : "false") << ','
      << flow.bifset_size << ',';
  if (flow.steady.delivered() && flow.steady.hops() > 0) {
    out << format_number(stretch(flow.steady, shortest));
  }
  out << '\n';
}

}  // namespace pie

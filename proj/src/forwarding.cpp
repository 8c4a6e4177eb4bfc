#include "pie/forwarding.hpp"

#include <algorithm>

#include "pie/format.hpp"

namespace pie {

std::vector<TreeId> common_trees(std::span<const CoordinateVector> a,
                                 std::span<const CoordinateVector> b) {
  std::vector<TreeId> out;
  for (const auto& ca : a) {
    for (const auto& cb : b) {
      if (ca.tree == cb.tree) {
        out.push_back(ca.tree);
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Hop> next_hop(NodeId v, NodeId t, const MultiTreeEmbedding& emb, const Graph& g,
                            const FailureSet* failures) {
  if (v == t) throw ContractViolation("next_hop called at the destination");
  const std::size_t m = emb.levels();

  // Distance from v to t in every tree shared by v and t; negative = not shared.
  std::vector<double> vd(m);
  bool any = false;
  for (std::size_t l = 0; l < m; ++l) {
    const auto& cv = emb.at(v, l);
    const auto& ct = emb.at(t, l);
    vd[l] = cv.tree == ct.tree ? linf_distance(cv.coords, ct.coords) : -1.0;
    any = any || vd[l] >= 0.0;
  }
  if (!any) return std::nullopt;

  std::optional<Hop> best;
  for (const auto& e : g.neighbors(v)) {
    if (failures && failures->is_failed(e.to)) continue;
    // The cheapest conceivable cost through this neighbor is the link alone.
    if (best && e.weight > best->cost) continue;
    for (std::size_t l = 0; l < m; ++l) {
      if (vd[l] < 0.0) continue;
      const auto& cu = emb.at(e.to, l);
      const auto& ct = emb.at(t, l);
      if (cu.tree != ct.tree) continue;
      const double du = linf_distance(cu.coords, ct.coords);
      if (!(du < vd[l])) continue;
      const double cost = e.weight + du;
      if (!best || cost < best->cost) best = Hop{e.to, static_cast<std::uint32_t>(l), cost};
    }
  }
  return best;
}

std::string to_string(RouteOutcome outcome) {
  switch (outcome) {
    case RouteOutcome::kDelivered: return "delivered";
    case RouteOutcome::kStuck: return "stuck";
    case RouteOutcome::kTtlExceeded: return "ttlExceeded";
  }
  return "unknown";
}

std::size_t default_ttl(const Graph& g) {
  return std::max<std::size_t>(4 * estimate_hop_diameter(g), 4);
}

RouteTrace trace_route(NodeId s, NodeId d, const MultiTreeEmbedding& emb, const Graph& g,
                       const FailureSet* failures, std::size_t ttl) {
  if (failures && (failures->is_failed(s) || failures->is_failed(d))) {
    throw ContractViolation("trace_route endpoints must be alive");
  }
  RouteTrace trace;
  trace.path.push_back(s);
  NodeId v = s;
  while (v != d) {
    if (trace.hops() >= ttl) {
      trace.outcome = RouteOutcome::kTtlExceeded;
      return trace;
    }
    auto hop = next_hop(v, d, emb, g, failures);
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

double stretch(const RouteTrace& trace, Weight shortest) {
  if (!trace.delivered()) throw ContractViolation("stretch of an undelivered route");
  if (trace.hops() == 0 || !(shortest > 0.0)) {
    throw ContractViolation("stretch needs distinct endpoints");
  }
  return trace.length / shortest;
}

void write_route_header(std::ostream& out) {
  out << "src,dst,outcome,hops,length,d_G,stretch,usedTreeLevels\n";
}

void write_route_row(std::ostream& out, NodeId src, NodeId dst, const RouteTrace& trace,
                     Weight shortest) {
  out << src << ',' << dst << ','
      << to_string(trace.outcome) << ',' << trace.hops() << ',' << format_number(trace.length)
      << ',' << format_number(shortest) << ',';
  if (trace.delivered() && trace.hops() > 0) out << format_number(stretch(trace, shortest));
  out << ',';
  for (std::size_t i = 0; i < trace.levels.size(); ++i) {
    if (i) out << ';';
    out << trace.levels[i];
  }
  out << '\n';
}

}  // namespace pie

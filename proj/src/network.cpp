#include "pie/network.hpp"

#include "pie/forwarding.hpp"

namespace pie {

std::size_t PieNetwork::tree_rounds() const {
  std::size_t total = 0;
  for (const auto& f : forests) total += f.rounds;
  return total;
}

std::size_t PieNetwork::tree_messages() const {
  std::size_t total = 0;
  for (const auto& f : forests) total += f.messages;
  return total;
}

PieNetwork build_network(Graph g, std::size_t levels, std::uint64_t seed,
                         const SimConfig& config) {
  RootElection election = elect_roots(g, levels, seed);
  return build_network(std::move(g), std::move(election), config);
}

PieNetwork build_network(Graph g, RootElection election, const SimConfig& config) {
  const std::size_t levels = election.levels();
  if (levels < 1) throw ValidationError("election has no levels");
  PieNetwork net;
  net.graph = std::move(g);
  net.election = std::move(election);
  net.forests = build_forests(net.graph, net.election, config);

  std::vector<ForestEmbedding> embedded(levels);
  for (std::size_t l = 0; l < levels; ++l) {
    auto diag = verify_forest(net.forests[l], net.graph, net.election.roots[l]);
    if (!diag.ok) {
      throw std::logic_error("forest at level " + std::to_string(l) +
                             " failed verification: " + diag.problems.front());
    }
    embedded[l] = embed_forest(net.graph, net.forests[l], config);
  }
  net.embedding = MultiTreeEmbedding(net.graph.node_count(), std::move(embedded));
  net.ttl = default_ttl(net.graph);
  return net;
}

}  // namespace pie

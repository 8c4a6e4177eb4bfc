#pragma once

#include <vector>

#include "pie/embedding.hpp"
#include "pie/graph.hpp"
#include "pie/tree.hpp"

namespace pie {

/// Converged protocol state of a whole network: election, m forests and the
/// resulting coordinate sets.
struct PieNetwork {
  Graph graph;
  RootElection election;
  std::vector<LevelForest> forests;
  MultiTreeEmbedding embedding;
  std::size_t ttl = 0;

  std::size_t tree_rounds() const;
  std::size_t tree_messages() const;
};

/// Elects roots, runs both maintainers to convergence on every level, and
/// checks each forest. Throws ConvergenceError on non-convergence and
/// std::logic_error when a converged forest fails verification.
PieNetwork build_network(Graph g, std::size_t levels, std::uint64_t seed,
                         const SimConfig& config = {});

/// Same with a given election (keys, level-0 root and per-level roots).
PieNetwork build_network(Graph g, RootElection election, const SimConfig& config = {});

}  // namespace pie

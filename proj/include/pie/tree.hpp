#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pie/graph.hpp"
#include "pie/sim_kernel.hpp"

namespace pie {

/// A tree is named by its locality level and the node id of its root.
struct TreeId {
  std::uint32_t level = 0;
  NodeId root = kNoNode;

  auto operator<=>(const TreeId&) const = default;
};

/// Per-node, per-level state of the tree maintainer.
struct TreeState {
  /// Election key of the adopted root. Level 0 uses degree + salt; deeper
  /// levels use the root's node id. -inf before any root is known.
  double root_key = -kInfinity;
  NodeId root = kNoNode;
  /// Distance to the root along the tree, in link-cost units.
  Weight height = kInfinity;
  NodeId parent = kNoNode;
  /// Ascending node ids.
  std::vector<NodeId> children;

  bool operator==(const TreeState&) const = default;
};

/// Logical treeMsg wire layout: (level, rootKey, rootNodeId, height, parent).
struct TreeMsg {
  std::uint8_t level = 0;
  double root_key = -kInfinity;
  NodeId root = kNoNode;
  Weight height = kInfinity;
  NodeId parent = kNoNode;
};

/// Applies one treeMsg from `sender` to the state of `self`.
///
/// Level 0 follows max-key election: adopt the sender when it advertises a
/// larger key, or the same key with a shorter height. Deeper levels join the
/// nearest root, ties going to the larger root key. Children bookkeeping
/// follows the sender's advertised parent in both cases.
TreeState handle_tree_msg(NodeId self, TreeState state, const TreeMsg& msg, NodeId sender,
                          Weight link_weight);

TreeState initial_tree_state(NodeId self, std::uint32_t level, bool is_root, double key);

struct RootElection {
  /// degree + salt, per node.
  std::vector<double> keys;
  NodeId level0_root = kNoNode;
  /// roots[l] ascending; roots[0] == {level0_root}.
  std::vector<std::vector<NodeId>> roots;
  /// Levels that elected nobody and fell back to the level-0 root.
  std::vector<std::uint32_t> fallback_levels;

  std::size_t levels() const noexcept { return roots.size(); }
};

/// Salted-degree keys, level-0 root, and independent Bernoulli(2^l / n)
/// self-election for levels 1..m-1.
RootElection elect_roots(const Graph& g, std::size_t m, std::uint64_t seed);

/// Converged forest for one locality level.
struct LevelForest {
  std::uint32_t level = 0;
  std::vector<TreeState> states;
  std::size_t rounds = 0;
  std::size_t messages = 0;

  TreeId tree_of(NodeId u) const { return {level, states[u].root}; }
};

/// Runs the tree maintainer for level 0 with the given election keys. The
/// node with the largest key becomes the root of a spanning tree.
LevelForest build_spanning_tree(const Graph& g, std::span<const double> keys,
                                const SimConfig& config);

/// Runs the tree maintainer for a level >= 1 with explicit roots; every node
/// joins the tree of its nearest root.
LevelForest build_nearest_root_forest(const Graph& g, std::uint32_t level,
                                      std::span<const NodeId> roots, const SimConfig& config);

/// All m levels of an election. Levels are independent and may run
/// concurrently; throws ConvergenceError if any level fails to settle.
std::vector<LevelForest> build_forests(const Graph& g, const RootElection& election,
                                       const SimConfig& config);

struct ForestDiagnostics {
  bool ok = true;
  std::vector<std::string> problems;
  /// Root id -> number of member nodes.
  std::map<NodeId, std::size_t> tree_sizes;
};

/// Checks acyclic parent pointers, parent/children agreement,
/// height(u) = height(parent) + w, and height(u) = distance to the nearest
/// root. `expected_roots` are the roots the level was built from.
ForestDiagnostics verify_forest(const LevelForest& forest, const Graph& g,
                                std::span<const NodeId> expected_roots);

/// Hop depth of every node in its tree.
std::vector<std::size_t> hop_depths(const LevelForest& forest);

}  // namespace pie

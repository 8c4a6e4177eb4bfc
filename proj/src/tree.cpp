#include "pie/tree.hpp"

#include <algorithm>
#include <cmath>

namespace pie {

namespace {

bool apply_tree_msg(NodeId self, TreeState& state, const TreeMsg& msg, NodeId sender,
                    Weight link_weight) {
  bool changed = false;
  const Weight offered = msg.height + link_weight;
  bool adopt = false;
  if (msg.level == 0) {
    adopt = msg.root_key > state.root_key ||
            (msg.root_key == state.root_key && offered < state.height);
  } else if (msg.root != kNoNode) {
    adopt = offered < state.height || (offered == state.height && msg.root_key > state.root_key);
  }
  if (adopt) {
    state.parent = sender;
    state.height = offered;
    state.root_key = msg.root_key;
    state.root = msg.root;
    changed = true;
  }

  auto it = std::lower_bound(state.children.begin(), state.children.end(), sender);
  bool listed = it != state.children.end() && *it == sender;
  if (msg.parent == self && !listed) {
    state.children.insert(it, sender);
    changed = true;
  } else if (msg.parent != self && listed) {
    state.children.erase(it);
    changed = true;
  }
  return changed;
}

struct TreeProtocol {
  using State = TreeState;
  using Message = TreeMsg;

  std::uint8_t level;

  void emit(NodeId, const TreeState& s, Outbox<TreeMsg>& out) const {
    out.broadcast(TreeMsg{level, s.root_key, s.root, s.height, s.parent});
  }

  bool receive(NodeId self, TreeState& s, NodeId from, const TreeMsg& msg, Weight w) const {
    return apply_tree_msg(self, s, msg, from, w);
  }
};

static_assert(RoundProtocol<TreeProtocol>);

LevelForest finish(std::uint32_t level, SimResult<TreeState>&& run) {
  if (!run.converged) {
    throw ConvergenceError("tree maintainer at level " + std::to_string(level) +
                           " did not converge within " + std::to_string(run.rounds) + " rounds");
  }
  LevelForest forest;
  forest.level = level;
  forest.states = std::move(run.states);
  forest.rounds = run.rounds;
  forest.messages = run.messages;
  return forest;
}

}  // namespace

TreeState handle_tree_msg(NodeId self, TreeState state, const TreeMsg& msg, NodeId sender,
                          Weight link_weight) {
  apply_tree_msg(self, state, msg, sender, link_weight);
  return state;
}

TreeState initial_tree_state(NodeId self, std::uint32_t level, bool is_root, double key) {
  TreeState s;
  if (level == 0 || is_root) {
    s.root_key = key;
    s.root = self;
    s.height = 0.0;
  }
  return s;
}

RootElection elect_roots(const Graph& g, std::size_t m, std::uint64_t seed) {
  if (m < 1) throw ValidationError("number of levels m must be >= 1");
  const std::size_t n = g.node_count();
  if (n == 0) throw ValidationError("cannot elect roots on an empty graph");

  RootElection election;
  election.keys.resize(n);
  Rng salt_rng = make_rng(seed, stream::kSalt);
  std::uniform_real_distribution<double> salt(0.0, 1.0);
  for (NodeId u = 0; u < n; ++u) {
    election.keys[u] = static_cast<double>(g.degree(u)) + salt(salt_rng);
  }
  election.level0_root = static_cast<NodeId>(
      std::max_element(election.keys.begin(), election.keys.end()) - election.keys.begin());

  election.roots.resize(m);
  election.roots[0] = {election.level0_root};
  for (std::uint32_t level = 1; level < m; ++level) {
    const double p = std::min(1.0, std::ldexp(1.0, static_cast<int>(level)) / static_cast<double>(n));
    Rng rng = make_rng(seed, stream::kElection + level);
    std::bernoulli_distribution coin(p);
    auto& roots = election.roots[level];
    for (NodeId u = 0; u < n; ++u) {
      if (coin(rng)) roots.push_back(u);
    }
    if (roots.empty()) {
      roots.push_back(election.level0_root);
      election.fallback_levels.push_back(level);
    }
  }
  return election;
}

LevelForest build_spanning_tree(const Graph& g, std::span<const double> keys,
                                const SimConfig& config) {
  if (keys.size() != g.node_count()) throw ContractViolation("one key per node");
  std::vector<TreeState> init;
  init.reserve(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) init.push_back(initial_tree_state(u, 0, true, keys[u]));
  return finish(0, run_until_converged(g, TreeProtocol{0}, std::move(init), config));
}

LevelForest build_nearest_root_forest(const Graph& g, std::uint32_t level,
                                      std::span<const NodeId> roots, const SimConfig& config) {
  if (level == 0) throw ContractViolation("level 0 is built by build_spanning_tree");
  if (level > 255) throw ValidationError("level does not fit the treeMsg level field");
  if (roots.empty()) throw ContractViolation("a forest level needs at least one root");
  std::vector<TreeState> init(g.node_count());
  for (NodeId r : roots) {
    if (r >= g.node_count()) throw ContractViolation("root out of range");
    init[r] = initial_tree_state(r, level, true, static_cast<double>(r));
  }
  return finish(level, run_until_converged(g, TreeProtocol{static_cast<std::uint8_t>(level)},
                                           std::move(init), config));
}

std::vector<LevelForest> build_forests(const Graph& g, const RootElection& election,
                                       const SimConfig& config) {
  const auto m = static_cast<std::int64_t>(election.levels());
  std::vector<LevelForest> forests(election.levels());
  std::vector<std::string> errors(election.levels());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t l = 0; l < m; ++l) {
    try {
      if (l == 0) {
        forests[0] = build_spanning_tree(g, election.keys, config);
      } else {
        forests[l] = build_nearest_root_forest(g, static_cast<std::uint32_t>(l),
                                               election.roots[l], config);
      }
    } catch (const ConvergenceError& e) {
      errors[l] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw ConvergenceError(e);
  }
  return forests;
}

ForestDiagnostics verify_forest(const LevelForest& forest, const Graph& g,
                                std::span<const NodeId> expected_roots) {
  ForestDiagnostics diag;
  const std::size_t n = g.node_count();
  auto fail = [&](std::string msg) {
    diag.ok = false;
    diag.problems.push_back(std::move(msg));
  };
  if (forest.states.size() != n) {
    fail("state count does not match node count");
    return diag;
  }
  const auto nearest = multi_source_distances(g, expected_roots);
  std::vector<std::uint8_t> is_root(n, 0);
  for (NodeId r : expected_roots) is_root[r] = 1;

  for (NodeId u = 0; u < n; ++u) {
    const auto& s = forest.states[u];
    const std::string who = "node " + std::to_string(u) + ": ";
    if (s.parent == kNoNode) {
      if (!is_root[u]) fail(who + "no parent but not an elected root");
      if (s.root != u) fail(who + "parentless node claims root " + std::to_string(s.root));
      if (s.height != 0.0) fail(who + "root height is not 0");
    } else {
      auto w = g.weight(u, s.parent);
      if (!w) {
        fail(who + "parent is not a neighbor");
        continue;
      }
      const auto& ps = forest.states[s.parent];
      if (ps.height + *w != s.height) fail(who + "height != parent height + link weight");
      if (ps.root != s.root) fail(who + "root differs from parent's root");
      if (!std::binary_search(ps.children.begin(), ps.children.end(), u)) {
        fail(who + "missing from parent's children");
      }
    }
    for (NodeId c : s.children) {
      if (c >= n || forest.states[c].parent != u) {
        fail(who + "lists child " + std::to_string(c) + " whose parent is elsewhere");
      }
    }
    if (s.height != nearest[u]) {
      fail(who + "height " + std::to_string(s.height) + " != nearest-root distance " +
           std::to_string(nearest[u]));
    }
  }

  // Every parent chain must end at a root within n steps.
  for (NodeId u = 0; u < n; ++u) {
    NodeId v = u;
    std::size_t steps = 0;
    while (v != kNoNode && forest.states[v].parent != kNoNode && steps <= n) {
      v = forest.states[v].parent;
      ++steps;
    }
    if (steps > n) {
      fail("node " + std::to_string(u) + ": parent pointers form a cycle");
      continue;
    }
    if (v != forest.states[u].root) {
      fail("node " + std::to_string(u) + ": chain ends at " + std::to_string(v) +
           " but root is " + std::to_string(forest.states[u].root));
    }
    ++diag.tree_sizes[v];
  }
  return diag;
}

std::vector<std::size_t> hop_depths(const LevelForest& forest) {
  const std::size_t n = forest.states.size();
  constexpr auto kUnknown = static_cast<std::size_t>(-1);
  std::vector<std::size_t> depth(n, kUnknown);
  std::vector<NodeId> chain;
  for (NodeId u = 0; u < n; ++u) {
    chain.clear();
    NodeId v = u;
    while (depth[v] == kUnknown && forest.states[v].parent != kNoNode && chain.size() <= n) {
      chain.push_back(v);
      v = forest.states[v].parent;
    }
    if (depth[v] == kUnknown) depth[v] = 0;
    std::size_t d = depth[v];
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) depth[*it] = ++d;
  }
  return depth;
}

}  // namespace pie

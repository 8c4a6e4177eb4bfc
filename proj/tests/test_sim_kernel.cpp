#include <algorithm>

#include "doctest.h"
#include "pie/sim_kernel.hpp"
#include "pie/tree.hpp"
#include "support/oracles.hpp"

using namespace pie;

namespace {

// Every node floods the smallest id it has heard of.
struct MinFlood {
  using State = NodeId;
  using Message = NodeId;
  void emit(NodeId, const State& s, Outbox<Message>& out) const { out.broadcast(s); }
  bool receive(NodeId, State& s, NodeId, const Message& m, Weight) const {
    if (m < s) {
      s = m;
      return true;
    }
    return false;
  }
};

// Records the order in which senders are seen.
struct OrderProbe {
  using State = std::vector<NodeId>;
  using Message = int;
  void emit(NodeId, const State&, Outbox<Message>& out) const { out.broadcast(0); }
  bool receive(NodeId, State& s, NodeId from, const Message&, Weight) const {
    if (s.size() < 64) {
      s.push_back(from);
      return true;
    }
    return false;
  }
};

std::vector<NodeId> identity_states(std::size_t n) {
  std::vector<NodeId> s(n);
  for (NodeId i = 0; i < n; ++i) s[i] = i;
  return s;
}

}  // namespace

TEST_CASE("single node converges in one round with no messages") {
  Graph g = Graph::from_edges(1, {});
  auto r = run_until_converged(g, MinFlood{}, identity_states(1), SimConfig{});
  CHECK(r.converged);
  CHECK(r.rounds == 1);
  CHECK(r.messages == 0);
}

TEST_CASE("flooding on a path: rounds and message accounting") {
  const std::size_t k = 6;
  Graph g = oracle::path_graph(k);
  auto r = run_until_converged(g, MinFlood{}, identity_states(k), SimConfig{});
  CHECK(r.converged);
  for (auto s : r.states) CHECK(s == 0);
  // k-1 rounds to spread, one quiet round
  CHECK(r.rounds == k);
  // every round each node broadcasts to all neighbors
  CHECK(r.messages == r.rounds * 2 * g.edge_count());
}

TEST_CASE("inbox is drained in ascending sender order") {
  std::vector<WeightedEdge> star{{4, 0, 1}, {4, 3, 1}, {4, 1, 1}, {4, 2, 1}};
  Graph g = Graph::from_edges(5, star);
  SimConfig cfg;
  cfg.max_rounds = 1;
  auto r = run_until_converged(g, OrderProbe{}, std::vector<std::vector<NodeId>>(5), cfg);
  CHECK(r.states[4] == std::vector<NodeId>{0, 1, 2, 3});
}

TEST_CASE("non-convergence keeps the last states") {
  Graph g = oracle::path_graph(10);
  SimConfig cfg;
  cfg.max_rounds = 3;
  auto r = run_until_converged(g, MinFlood{}, identity_states(10), cfg);
  CHECK_FALSE(r.converged);
  CHECK(r.rounds == 3);
  CHECK(r.states[3] == 0);
  CHECK(r.states[4] == 1);
}

TEST_CASE("convergence window") {
  Graph g = oracle::path_graph(4);
  SimConfig cfg;
  cfg.convergence_window = 3;
  auto r = run_until_converged(g, MinFlood{}, identity_states(4), cfg);
  CHECK(r.converged);
  CHECK(r.rounds == 3 + 3);
}

TEST_CASE("config validation") {
  SimConfig cfg;
  cfg.max_rounds = 0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  SimConfig w;
  w.convergence_window = 0;
  CHECK_THROWS_AS(w.validate(), ValidationError);
  Graph g = oracle::path_graph(3);
  CHECK_THROWS_AS(run_until_converged(g, MinFlood{}, identity_states(2), SimConfig{}),
                  ContractViolation);
}

TEST_CASE("failed nodes neither send nor receive") {
  Graph g = oracle::path_graph(5);
  std::vector<NodeId> dead{2};
  FailureSet f(5, dead);
  auto r = run_until_converged(g, MinFlood{}, identity_states(5), SimConfig{}, &f);
  CHECK(r.states[1] == 0);
  CHECK(r.states[2] == 2);
  CHECK(r.states[3] == 3);
  CHECK(r.states[4] == 3);
}

TEST_CASE("tree maintainer on paths converges within k+2 rounds") {
  for (std::size_t k = 1; k <= 5; ++k) {
    Graph g = oracle::path_graph(k);
    std::vector<double> keys(k, 0.0);
    keys[0] = 1.0;
    auto forest = build_spanning_tree(g, keys, SimConfig{});
    CHECK(forest.rounds <= k + 2);
  }
}

TEST_CASE("tree maintainer converges within 2 x hop diameter + 4 rounds") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    Graph g = oracle::random_connected(80, 40, rng, 1, 1);
    auto el = elect_roots(g, 1, static_cast<std::uint64_t>(i));
    SimConfig cfg;
    std::size_t diam = 0;
    for (NodeId s = 0; s < g.node_count(); ++s) {
      auto h = bfs_hops(g, s);
      diam = std::max(diam, *std::max_element(h.begin(), h.end()));
    }
    cfg.max_rounds = 2 * diam + 4;
    auto forest = build_spanning_tree(g, el.keys, cfg);
    CHECK(forest.rounds <= cfg.max_rounds);
  }
}

TEST_CASE("runs are deterministic") {
  std::mt19937_64 rng(8);
  Graph g = oracle::random_connected(60, 60, rng, 1, 10);
  auto el = elect_roots(g, 3, 4);
  auto a = build_forests(g, el, SimConfig{});
  auto b = build_forests(g, el, SimConfig{});
  for (std::size_t l = 0; l < 3; ++l) {
    CHECK(a[l].states == b[l].states);
    CHECK(a[l].messages == b[l].messages);
    CHECK(a[l].rounds == b[l].rounds);
  }
}

TEST_CASE("failure injection") {
  Graph g = oracle::path_graph(1000);
  CHECK(inject_failures(g, 0.0, 1).empty());
  auto f = inject_failures(g, 0.1, 1);
  CHECK(f.size() == 100);
  CHECK(std::is_sorted(f.nodes().begin(), f.nodes().end()));
  CHECK(inject_failures(g, 0.0999, 1).size() == 99);

  auto again = inject_failures(g, 0.1, 1);
  CHECK(std::equal(f.nodes().begin(), f.nodes().end(), again.nodes().begin(), again.nodes().end()));

  CHECK_THROWS_AS(inject_failures(g, 1.0, 1), ValidationError);
  CHECK_THROWS_AS(inject_failures(g, -0.1, 1), ValidationError);
}

TEST_CASE("failure sets from different seeds overlap like independent draws") {
  // Two independent 10% subsets share about 10% of their members.
  Graph g = oracle::path_graph(1000);
  double total = 0;
  const int trials = 50;
  for (int t = 0; t < trials; ++t) {
    auto a = inject_failures(g, 0.1, 2 * t + 1);
    auto b = inject_failures(g, 0.1, 2 * t + 2);
    std::vector<NodeId> both;
    std::set_intersection(a.nodes().begin(), a.nodes().end(), b.nodes().begin(), b.nodes().end(),
                          std::back_inserter(both));
    total += static_cast<double>(both.size());
  }
  // hypergeometric mean 10, sd about 2.85 per trial
  double mean = total / trials;
  CHECK(mean > 8.5);
  CHECK(mean < 11.5);
}

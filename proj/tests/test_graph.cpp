#include <sstream>

#include "doctest.h"
#include "pie/graph.hpp"
#include "support/oracles.hpp"

using namespace pie;

namespace {
EdgeListResult parse(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in);
}
}  // namespace

TEST_CASE("edge list: minimal path") {
  auto r = parse("0 1\n1 2\n");
  CHECK(r.graph.node_count() == 3);
  CHECK(r.graph.edge_count() == 2);
  CHECK(r.graph.weight(0, 1) == 1.0);
  CHECK(r.graph.weight(2, 1) == 1.0);
}

TEST_CASE("edge list: duplicate in both directions collapses") {
  auto r = parse("0 1 2.5\n1 0 2.5\n");
  CHECK(r.graph.edge_count() == 1);
  CHECK(r.graph.weight(1, 0) == 2.5);
}

TEST_CASE("edge list: duplicates keep the cheapest weight") {
  auto r = parse("0 1 7\n1 0 3\n0 1 5\n");
  CHECK(r.graph.weight(0, 1) == 3.0);
}

TEST_CASE("edge list: zero or negative weight is rejected") {
  CHECK_THROWS_AS(parse("0 1 0"), ValidationError);
  CHECK_THROWS_AS(parse("0 1 -2"), ValidationError);
}

TEST_CASE("edge list: malformed lines report their line number") {
  try {
    parse("# header\n0 1\n\n2 x\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  CHECK_THROWS_AS(parse("5\n"), ParseError);
  CHECK_THROWS_AS(parse("1 2 3 4\n"), ParseError);
  CHECK_THROWS_AS(parse("1 2 abc\n"), ParseError);
  CHECK_THROWS_AS(parse("-1 2\n"), ParseError);
}

TEST_CASE("edge list: comments, blanks, sparse ids") {
  auto r = parse("# c\n\n  \n100 7\n7 42 2\n");
  CHECK(r.graph.node_count() == 3);
  CHECK(r.original_ids == std::vector<std::uint64_t>{7, 42, 100});
  CHECK(r.graph.weight(0, 2) == 1.0);  // 7-100
  CHECK(r.graph.weight(0, 1) == 2.0);  // 7-42
}

TEST_CASE("edge list: self-loops are dropped") {
  auto r = parse("0 0\n0 1\n");
  CHECK(r.graph.edge_count() == 1);
}

TEST_CASE("edge list round trip") {
  std::mt19937_64 rng(3);
  Graph g = oracle::random_connected(40, 30, rng, 1, 10);
  std::ostringstream out;
  write_edge_list(g, out);
  auto back = parse(out.str());
  CHECK(back.graph == g);
}

TEST_CASE("graph construction rejects bad edges") {
  std::vector<WeightedEdge> loop{{1, 1, 1}};
  CHECK_THROWS_AS(Graph::from_edges(3, loop), ValidationError);
  std::vector<WeightedEdge> range{{0, 3, 1}};
  CHECK_THROWS_AS(Graph::from_edges(3, range), ValidationError);
  std::vector<WeightedEdge> zero{{0, 1, 0}};
  CHECK_THROWS_AS(Graph::from_edges(3, zero), ValidationError);
}

TEST_CASE("adjacency is symmetric and sorted") {
  std::mt19937_64 rng(11);
  Graph g = oracle::random_connected(200, 300, rng, 1, 10);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    auto adj = g.neighbors(u);
    for (std::size_t i = 0; i < adj.size(); ++i) {
      if (i > 0) CHECK(adj[i - 1].to < adj[i].to);
      CHECK(adj[i].to != u);
      CHECK(g.weight(adj[i].to, u) == adj[i].weight);
    }
  }
}

TEST_CASE("GLP: clique only when n equals the clique size") {
  GlpParams p;
  p.n = 10;
  p.initial_clique = 10;
  Graph g = generate_glp(p, 1);
  CHECK(g.edge_count() == 45);
  for (NodeId u = 0; u < 10; ++u) CHECK(g.degree(u) == 9);
}

TEST_CASE("GLP: deterministic, connected, simple") {
  GlpParams p;
  p.n = 1000;
  Graph a = generate_glp(p, 7);
  Graph b = generate_glp(p, 7);
  CHECK(a == b);
  CHECK(is_connected(a));
  CHECK(a.node_count() == 1000);
  CHECK_FALSE(a == generate_glp(p, 8));
}

TEST_CASE("GLP: exponent near the target over 10 seeds") {
  GlpParams p;
  p.n = 1000;
  p.lambda = 2.1;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    double est = estimate_power_law_exponent(generate_glp(p, seed));
    CHECK(est >= 1.9);
    CHECK(est <= 2.4);
  }
  CHECK(estimate_power_law_exponent(generate_glp(p, 7)) >= 1.9);
}

TEST_CASE("GLP: unreachable parameters are rejected") {
  GlpParams p;
  p.lambda = 2.0;  // needs beta >= 1 with the default step and mix
  CHECK_THROWS_AS(p.validate(), ValidationError);
  GlpParams q;
  q.beta = 1.5;
  CHECK_THROWS_AS(generate_glp(q, 1), ValidationError);
  GlpParams r;
  r.n = 3;
  CHECK_THROWS_AS(r.validate(), ValidationError);
  GlpParams s;
  s.mix_probability = 1.0;
  CHECK_THROWS_AS(s.validate(), ValidationError);
}

TEST_CASE("weights: unit and uniform") {
  Graph path = oracle::path_graph(50, 3.0);
  Graph unit = assign_weights(path, WeightMode::kUnit, 1);
  for (const auto& e : unit.edges()) CHECK(e.weight == 1.0);

  Graph w = assign_weights(path, WeightMode::kUniformInt, 5);
  for (const auto& e : w.edges()) {
    CHECK(e.weight >= 1.0);
    CHECK(e.weight <= 10.0);
    CHECK(e.weight == std::floor(e.weight));
    CHECK(w.weight(e.v, e.u) == e.weight);
  }
  CHECK(w == assign_weights(path, WeightMode::kUniformInt, 5));
}

TEST_CASE("weights: uniform mean over 1e5 edges") {
  Graph g = oracle::path_graph(100001);
  Graph w = assign_weights(g, WeightMode::kUniformInt, 9);
  double sum = 0;
  for (const auto& e : w.edges()) sum += e.weight;
  double mean = sum / static_cast<double>(w.edge_count());
  CHECK(mean == doctest::Approx(5.5).epsilon(0.1 / 5.5));
}

TEST_CASE("weight mode names") {
  CHECK(parse_weight_mode("unit") == WeightMode::kUnit);
  CHECK(parse_weight_mode("uniform") == WeightMode::kUniformInt);
  CHECK(to_string(WeightMode::kUniformInt) == "uniform");
  CHECK_THROWS_AS(parse_weight_mode("gaussian"), ValidationError);
}

TEST_CASE("largest component") {
  // two triangles, the first with a pendant node
  std::vector<WeightedEdge> e{{0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {2, 3, 1},
                              {4, 5, 1}, {5, 6, 1}, {6, 4, 1}};
  Graph g = Graph::from_edges(7, e);
  std::vector<NodeId> kept;
  Graph big = largest_component(g, &kept);
  CHECK(big.node_count() == 4);
  CHECK(big.edge_count() == 4);
  CHECK(kept == std::vector<NodeId>{0, 1, 2, 3});
  CHECK(is_connected(big));

  std::mt19937_64 rng(2);
  Graph c = oracle::random_connected(30, 10, rng);
  CHECK(largest_component(c) == c);
  CHECK(largest_component(Graph::from_edges(0, {})).node_count() == 0);
}

TEST_CASE("largest component: ties keep the smallest id") {
  std::vector<WeightedEdge> e{{2, 3, 1}, {0, 1, 1}};
  std::vector<NodeId> kept;
  largest_component(Graph::from_edges(4, e), &kept);
  CHECK(kept == std::vector<NodeId>{0, 1});
}

TEST_CASE("shortest path: forced detour") {
  std::vector<WeightedEdge> e{{0, 1, 1}, {1, 2, 1}, {0, 2, 3}};
  Graph g = Graph::from_edges(3, e);
  auto r = shortest_path(g, 0, 2);
  CHECK(r.reachable);
  CHECK(r.distance == 2.0);
  CHECK(r.path == std::vector<NodeId>{0, 1, 2});
  auto self = shortest_path(g, 1, 1);
  CHECK(self.distance == 0.0);
  CHECK(self.path == std::vector<NodeId>{1});
}

TEST_CASE("shortest path: unreachable") {
  std::vector<WeightedEdge> e{{0, 1, 1}};
  auto r = shortest_path(Graph::from_edges(3, e), 0, 2);
  CHECK_FALSE(r.reachable);
  CHECK(r.path.empty());
}

TEST_CASE("shortest path agrees with Bellman-Ford on all pairs") {
  std::mt19937_64 rng(17);
  Graph g = oracle::random_connected(100, 150, rng, 1, 10);
  auto truth = oracle::all_pairs(g);
  for (NodeId s = 0; s < 100; ++s) {
    auto dist = single_source_distances(g, s);
    for (NodeId t = 0; t < 100; ++t) {
      CHECK(dist[t] == truth[s][t]);
    }
    for (NodeId t = 0; t < 100; t += 13) {
      auto r = shortest_path(g, s, t);
      CHECK(r.distance == truth[s][t]);
      Weight along = 0;
      for (std::size_t i = 0; i + 1 < r.path.size(); ++i) along += *g.weight(r.path[i], r.path[i + 1]);
      CHECK(along == r.distance);
    }
  }
  // triangle inequality on sampled triples
  for (NodeId a = 0; a < 100; a += 7)
    for (NodeId b = 1; b < 100; b += 11)
      for (NodeId c = 2; c < 100; c += 17) CHECK(truth[a][c] <= truth[a][b] + truth[b][c]);
}

TEST_CASE("multi-source distances and hop counts") {
  Graph p = oracle::path_graph(7);
  std::vector<NodeId> src{0, 6};
  auto d = multi_source_distances(p, src);
  CHECK(d == std::vector<Weight>{0, 1, 2, 3, 2, 1, 0});
  auto h = bfs_hops(p, 2);
  CHECK(h[6] == 4);
  CHECK(estimate_hop_diameter(p) == 6);
}

TEST_CASE("Hill estimator on Pareto samples") {
  std::mt19937_64 rng(21);
  auto xs = oracle::pareto(100000, 2.1, 2.0, rng);
  double est = hill_estimate(xs, 2.0);
  CHECK(est >= 2.05);
  CHECK(est <= 2.15);
}

TEST_CASE("Hill estimator: degenerate samples") {
  std::vector<double> flat(500, 3.0);
  CHECK_THROWS_AS(hill_estimate(flat, 3.0), EstimationError);
  std::vector<double> few{2, 3, 4};
  CHECK_THROWS_AS(hill_estimate(few, 2.0), EstimationError);
  // a cycle is 2-regular
  CHECK_THROWS_AS(estimate_power_law_exponent(oracle::cycle_graph(300)), EstimationError);
}

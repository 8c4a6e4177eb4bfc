#pragma once

// Hand-built topologies with known answers.

#include <vector>

#include "pie/network.hpp"

namespace fixture {

using pie::NodeId;

// Eight-node tree a..h rooted at a; every link costs 1 except e-g (4).
namespace eight_node {
enum : NodeId { a, b, c, d, e, f, g, h };
inline pie::Graph graph() {
  std::vector<pie::WeightedEdge> edges{{a, b, 1}, {a, e, 1}, {b, c, 1}, {b, d, 1},
                                       {e, f, 1}, {e, g, 4}, {e, h, 1}};
  return pie::Graph::from_edges(8, edges);
}
// e has the largest degree, so the election keys are pinned to make a the root.
inline std::vector<double> keys() {
  std::vector<double> k(8, 0.0);
  k[a] = 10.0;
  return k;
}
inline pie::RootElection election() {
  pie::RootElection el;
  el.keys = keys();
  el.level0_root = a;
  el.roots = {{a}};
  return el;
}
}  // namespace eight_node

// Unit-weight graph with a level-0 tree rooted at R and two level-1 trees:
// "red" rooted at x and "green" rooted at b. s reaches d through v thanks to
// the green tree, while d answers through a and u.
namespace asym {
enum : NodeId { s, u, v, y, d, a, x, R, p, q, b };
inline pie::Graph graph() {
  std::vector<pie::WeightedEdge> edges{{s, u, 1}, {s, v, 1}, {u, a, 1}, {a, b, 1}, {b, d, 1},
                                       {d, v, 1}, {a, d, 1}, {R, p, 1}, {p, u, 1}, {R, q, 1},
                                       {q, d, 1}, {R, x, 1}, {x, y, 1}, {y, v, 1}};
  return pie::Graph::from_edges(11, edges);
}
inline pie::RootElection election() {
  pie::RootElection el;
  el.keys.assign(11, 0.0);
  el.keys[R] = 10.0;
  el.level0_root = R;
  el.roots = {{R}, {x, b}};
  return el;
}
inline pie::PieNetwork network() { return pie::build_network(graph(), election()); }
}  // namespace asym

}  // namespace fixture

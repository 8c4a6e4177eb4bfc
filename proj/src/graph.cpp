#include "pie/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>

#include "pie/random.hpp"

namespace pie {

Graph Graph::from_edges(std::size_t n, std::span<const WeightedEdge> edges) {
  std::vector<WeightedEdge> canon;
  canon.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw ValidationError("edge endpoint out of range: " + std::to_string(e.u) + " " +
                            std::to_string(e.v));
    }
    if (e.u == e.v) throw ValidationError("self-loop on node " + std::to_string(e.u));
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw ValidationError("edge weight must be positive and finite");
    }
    canon.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.weight});
  }
  std::sort(canon.begin(), canon.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return std::tie(a.u, a.v, a.weight) < std::tie(b.u, b.v, b.weight);
  });
  // Sorted by weight within a pair, so the first occurrence is the cheapest.
  canon.erase(std::unique(canon.begin(), canon.end(),
                          [](const WeightedEdge& a, const WeightedEdge& b) {
                            return a.u == b.u && a.v == b.v;
                          }),
              canon.end());

  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (const auto& e : canon) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.adjacency_.resize(canon.size() * 2);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& e : canon) {
    g.adjacency_[cursor[e.u]++] = {e.v, e.weight};
    g.adjacency_[cursor[e.v]++] = {e.u, e.weight};
  }
  for (std::size_t u = 0; u < n; ++u) {
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u + 1]),
              [](const Edge& a, const Edge& b) { return a.to < b.to; });
  }
  return g;
}

std::size_t Graph::max_degree() const noexcept {
  std::size_t best = 0;
  for (std::size_t u = 0; u + 1 < offsets_.size(); ++u) {
    best = std::max(best, offsets_[u + 1] - offsets_[u]);
  }
  return best;
}

std::optional<Weight> Graph::weight(NodeId u, NodeId v) const {
  auto adj = neighbors(u);
  auto it = std::lower_bound(adj.begin(), adj.end(), v,
                             [](const Edge& e, NodeId id) { return e.to < id; });
  if (it == adj.end() || it->to != v) return std::nullopt;
  return it->weight;
}

std::vector<WeightedEdge> Graph::edges() const {
  std::vector<WeightedEdge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u) {
    for (const auto& e : neighbors(u)) {
      if (u < e.to) out.push_back({u, e.to, e.weight});
    }
  }
  return out;
}

bool Graph::operator==(const Graph& other) const {
  if (offsets_ != other.offsets_ || adjacency_.size() != other.adjacency_.size()) return false;
  for (std::size_t i = 0; i < adjacency_.size(); ++i) {
    if (adjacency_[i].to != other.adjacency_[i].to ||
        adjacency_[i].weight != other.adjacency_[i].weight) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

EdgeListResult load_edge_list(std::istream& in) {
  struct RawEdge {
    std::uint64_t u, v;
    double w;
  };
  std::vector<RawEdge> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream fields(line);
    std::string tok_u, tok_v, tok_w, extra;
    fields >> tok_u >> tok_v;
    if (tok_v.empty()) throw ParseError(line_no, "expected 'u v' or 'u v w'");
    fields >> tok_w >> extra;
    if (!extra.empty()) throw ParseError(line_no, "too many fields");

    auto parse_id = [&](const std::string& tok) {
      if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError(line_no, "node id is not a nonnegative integer: '" + tok + "'");
      }
      try {
        return static_cast<std::uint64_t>(std::stoull(tok));
      } catch (const std::out_of_range&) {
        throw ParseError(line_no, "node id out of range: '" + tok + "'");
      }
    };
    RawEdge e{parse_id(tok_u), parse_id(tok_v), 1.0};
    if (!tok_w.empty()) {
      std::size_t used = 0;
      try {
        e.w = std::stod(tok_w, &used);
      } catch (const std::exception&) {
        throw ParseError(line_no, "weight is not a number: '" + tok_w + "'");
      }
      if (used != tok_w.size()) throw ParseError(line_no, "weight is not a number: '" + tok_w + "'");
      if (!(e.w > 0.0) || !std::isfinite(e.w)) {
        throw ValidationError("line " + std::to_string(line_no) + ": weight must be positive");
      }
    }
    if (e.u == e.v) continue;
    raw.push_back(e);
  }

  EdgeListResult result;
  for (const auto& e : raw) {
    result.original_ids.push_back(e.u);
    result.original_ids.push_back(e.v);
  }
  std::sort(result.original_ids.begin(), result.original_ids.end());
  result.original_ids.erase(std::unique(result.original_ids.begin(), result.original_ids.end()),
                            result.original_ids.end());
  auto compact = [&](std::uint64_t id) {
    return static_cast<NodeId>(
        std::lower_bound(result.original_ids.begin(), result.original_ids.end(), id) -
        result.original_ids.begin());
  };
  std::vector<WeightedEdge> edges;
  edges.reserve(raw.size());
  for (const auto& e : raw) edges.push_back({compact(e.u), compact(e.v), e.w});
  result.graph = Graph::from_edges(result.original_ids.size(), edges);
  return result;
}

EdgeListResult load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list: " + path);
  return load_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  out << "# nodes " << g.node_count() << " edges " << g.edge_count() << "\n";
  for (const auto& e : g.edges()) {
    out << e.u << ' ' << e.v << ' ' << e.weight << '\n';
  }
}

// ---------------------------------------------------------------------------

namespace {

// Fenwick tree over nonnegative weights with proportional sampling.
class WeightedSampler {
 public:
  explicit WeightedSampler(std::size_t capacity) : tree_(capacity + 1, 0.0), values_(capacity, 0.0) {}

  void set(std::size_t i, double value) {
    double delta = value - values_[i];
    values_[i] = value;
    total_ += delta;
    for (std::size_t k = i + 1; k < tree_.size(); k += k & (~k + 1)) tree_[k] += delta;
  }

  double total() const { return total_; }

  std::size_t sample(Rng& rng, std::size_t active) const {
    double target = std::uniform_real_distribution<double>(0.0, total_)(rng);
    std::size_t pos = 0;
    std::size_t step = 1;
    while (step * 2 < tree_.size()) step *= 2;
    for (; step > 0; step /= 2) {
      if (pos + step < tree_.size() && tree_[pos + step] <= target) {
        pos += step;
        target -= tree_[pos];
      }
    }
    // Rounding can land past the last positive entry.
    return std::min(pos, active - 1);
  }

 private:
  std::vector<double> tree_;
  std::vector<double> values_;
  double total_ = 0.0;
};

}  // namespace

double GlpParams::effective_beta() const {
  if (beta) return *beta;
  const double m = edges_per_step;
  const double p = mix_probability;
  return (2.0 * m - (lambda - 1.0) * (1.0 + p) * m) / (1.0 - p);
}

void GlpParams::validate() const {
  if (initial_clique < 2) throw ValidationError("GLP initial clique needs at least 2 nodes");
  if (n < initial_clique) throw ValidationError("GLP n must be at least the initial clique size");
  if (!(mix_probability >= 0.0 && mix_probability < 1.0)) {
    throw ValidationError("GLP mix probability must lie in [0, 1)");
  }
  if (!(edges_per_step >= 1.0)) throw ValidationError("GLP edges per step must be >= 1");
  // New nodes join with degree >= 1, so every preference weight stays positive
  // only when beta < 1.
  if (!(effective_beta() < 1.0)) {
    throw ValidationError("GLP beta " + std::to_string(effective_beta()) +
                          " makes preference weights nonpositive (need beta < 1)");
  }
}

Graph generate_glp(const GlpParams& params, std::uint64_t seed) {
  params.validate();
  const double beta = params.effective_beta();
  Rng rng = make_rng(seed, stream::kGlp);

  const std::size_t n = params.n;
  std::vector<std::vector<NodeId>> adj(n);
  WeightedSampler sampler(n);
  std::size_t active = params.initial_clique;

  auto link = [&](NodeId a, NodeId b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  auto linked = [&](NodeId a, NodeId b) {
    const auto& small = adj[a].size() < adj[b].size() ? adj[a] : adj[b];
    NodeId other = adj[a].size() < adj[b].size() ? b : a;
    return std::find(small.begin(), small.end(), other) != small.end();
  };
  auto refresh = [&](NodeId a) { sampler.set(a, static_cast<double>(adj[a].size()) - beta); };

  for (NodeId a = 0; a < active; ++a) {
    for (NodeId b = a + 1; b < active; ++b) link(a, b);
  }
  for (NodeId a = 0; a < active; ++a) refresh(a);

  const double whole = std::floor(params.edges_per_step);
  const double frac = params.edges_per_step - whole;
  auto draw_count = [&]() {
    std::size_t k = static_cast<std::size_t>(whole);
    if (frac > 0.0 && std::bernoulli_distribution(frac)(rng)) ++k;
    return k;
  };
  constexpr int kMaxAttempts = 64;

  while (active < n) {
    std::size_t k = draw_count();
    if (std::bernoulli_distribution(params.mix_probability)(rng)) {
      for (std::size_t e = 0; e < k; ++e) {
        for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
          auto a = static_cast<NodeId>(sampler.sample(rng, active));
          auto b = static_cast<NodeId>(sampler.sample(rng, active));
          if (a == b || linked(a, b)) continue;
          link(a, b);
          refresh(a);
          refresh(b);
          break;
        }
      }
    } else {
      auto fresh = static_cast<NodeId>(active);
      k = std::min(k, active);
      std::vector<NodeId> targets;
      while (targets.size() < k) {
        auto t = static_cast<NodeId>(sampler.sample(rng, active));
        if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
      }
      for (NodeId t : targets) link(fresh, t);
      ++active;
      refresh(fresh);
      for (NodeId t : targets) refresh(t);
    }
  }

  std::vector<WeightedEdge> edges;
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b : adj[a]) {
      if (a < b) edges.push_back({a, b, 1.0});
    }
  }
  return Graph::from_edges(n, edges);
}

std::string to_string(WeightMode mode) {
  return mode == WeightMode::kUnit ? "unit" : "uniform";
}

WeightMode parse_weight_mode(const std::string& text) {
  if (text == "unit") return WeightMode::kUnit;
  if (text == "uniform" || text == "uniformInt") return WeightMode::kUniformInt;
  throw ValidationError("unknown weight mode '" + text + "' (expected unit|uniform)");
}

Graph assign_weights(const Graph& g, WeightMode mode, std::uint64_t seed) {
  auto edges = g.edges();
  if (mode == WeightMode::kUnit) {
    for (auto& e : edges) e.weight = 1.0;
  } else {
    Rng rng = make_rng(seed, stream::kWeights);
    std::uniform_int_distribution<int> draw(1, 10);
    for (auto& e : edges) e.weight = static_cast<Weight>(draw(rng));
  }
  return Graph::from_edges(g.node_count(), edges);
}

namespace {

std::vector<NodeId> component_labels(const Graph& g, std::size_t& count) {
  std::vector<NodeId> label(g.node_count(), kNoNode);
  count = 0;
  std::vector<NodeId> queue;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (label[s] != kNoNode) continue;
    auto id = static_cast<NodeId>(count++);
    label[s] = id;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (const auto& e : g.neighbors(queue[head])) {
        if (label[e.to] == kNoNode) {
          label[e.to] = id;
          queue.push_back(e.to);
        }
      }
    }
  }
  return label;
}

}  // namespace

Graph largest_component(const Graph& g, std::vector<NodeId>* kept) {
  if (kept) kept->clear();
  if (g.node_count() == 0) return Graph::from_edges(0, {});
  std::size_t count = 0;
  auto label = component_labels(g, count);
  std::vector<std::size_t> sizes(count, 0);
  for (NodeId l : label) ++sizes[l];
  // Labels are issued in order of smallest member, so max_element picks the
  // component with the smallest node id among equal sizes.
  auto best = static_cast<NodeId>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

  std::vector<NodeId> remap(g.node_count(), kNoNode);
  std::vector<NodeId> original;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    if (label[u] == best) {
      remap[u] = static_cast<NodeId>(original.size());
      original.push_back(u);
    }
  }
  std::vector<WeightedEdge> edges;
  for (const auto& e : g.edges()) {
    if (label[e.u] == best) edges.push_back({remap[e.u], remap[e.v], e.weight});
  }
  if (kept) *kept = std::move(original);
  return Graph::from_edges(sizes[best], edges);
}

bool is_connected(const Graph& g) {
  if (g.node_count() <= 1) return true;
  std::size_t count = 0;
  component_labels(g, count);
  return count == 1;
}

// ---------------------------------------------------------------------------

namespace {

using QueueEntry = std::pair<Weight, NodeId>;
using MinQueue = std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>>;

void relax_all(const Graph& g, std::vector<Weight>& dist, MinQueue& queue,
               std::vector<NodeId>* pred) {
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;
    for (const auto& e : g.neighbors(u)) {
      Weight nd = d + e.weight;
      if (nd < dist[e.to]) {
        dist[e.to] = nd;
        if (pred) (*pred)[e.to] = u;
        queue.push({nd, e.to});
      }
    }
  }
}

}  // namespace

std::vector<Weight> single_source_distances(const Graph& g, NodeId src) {
  NodeId sources[] = {src};
  return multi_source_distances(g, sources);
}

std::vector<Weight> multi_source_distances(const Graph& g, std::span<const NodeId> sources) {
  std::vector<Weight> dist(g.node_count(), kInfinity);
  MinQueue queue;
  for (NodeId s : sources) {
    if (s >= g.node_count()) throw ContractViolation("source out of range");
    dist[s] = 0.0;
    queue.push({0.0, s});
  }
  relax_all(g, dist, queue, nullptr);
  return dist;
}

PathResult shortest_path(const Graph& g, NodeId src, NodeId dst) {
  if (src >= g.node_count() || dst >= g.node_count()) {
    throw ContractViolation("shortest_path: node out of range");
  }
  PathResult result;
  if (src == dst) {
    result.reachable = true;
    result.distance = 0.0;
    result.path = {src};
    return result;
  }
  std::vector<Weight> dist(g.node_count(), kInfinity);
  std::vector<NodeId> pred(g.node_count(), kNoNode);
  MinQueue queue;
  dist[src] = 0.0;
  queue.push({0.0, src});
  relax_all(g, dist, queue, &pred);
  if (dist[dst] == kInfinity) return result;
  result.reachable = true;
  result.distance = dist[dst];
  for (NodeId v = dst; v != kNoNode; v = pred[v]) result.path.push_back(v);
  std::reverse(result.path.begin(), result.path.end());
  return result;
}

std::vector<std::size_t> bfs_hops(const Graph& g, NodeId src) {
  constexpr auto kUnreached = static_cast<std::size_t>(-1);
  std::vector<std::size_t> hops(g.node_count(), kUnreached);
  std::vector<NodeId> queue{src};
  hops[src] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    NodeId u = queue[head];
    for (const auto& e : g.neighbors(u)) {
      if (hops[e.to] == kUnreached) {
        hops[e.to] = hops[u] + 1;
        queue.push_back(e.to);
      }
    }
  }
  return hops;
}

std::size_t estimate_hop_diameter(const Graph& g) {
  if (g.node_count() <= 1) return 0;
  auto farthest = [&](NodeId from) {
    auto hops = bfs_hops(g, from);
    NodeId best = from;
    std::size_t best_hops = 0;
    for (NodeId u = 0; u < hops.size(); ++u) {
      if (hops[u] != static_cast<std::size_t>(-1) && hops[u] > best_hops) {
        best_hops = hops[u];
        best = u;
      }
    }
    return std::pair{best, best_hops};
  };
  auto [far, first] = farthest(0);
  auto [unused, second] = farthest(far);
  (void)unused;
  return std::max(first, second);
}

// ---------------------------------------------------------------------------

double hill_estimate(std::span<const double> samples, double xmin, std::size_t min_samples) {
  if (!(xmin > 0.0)) throw EstimationError("xmin must be positive");
  std::size_t count = 0;
  double log_sum = 0.0;
  double first = 0.0;
  bool all_equal = true;
  for (double x : samples) {
    if (x < xmin) continue;
    if (count == 0) first = x;
    else if (x != first) all_equal = false;
    ++count;
    log_sum += std::log(x / xmin);
  }
  if (count < min_samples) {
    throw EstimationError("only " + std::to_string(count) + " samples >= xmin (need " +
                          std::to_string(min_samples) + ")");
  }
  if (all_equal || log_sum <= 0.0) {
    throw EstimationError("degenerate sample: all qualifying values are equal");
  }
  return 1.0 + static_cast<double>(count) / log_sum;
}

double estimate_power_law_exponent(const Graph& g, std::size_t k_min, std::size_t min_samples) {
  std::vector<double> degrees;
  degrees.reserve(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) degrees.push_back(static_cast<double>(g.degree(u)));
  return hill_estimate(degrees, static_cast<double>(k_min), min_samples);
}

}  // namespace pie

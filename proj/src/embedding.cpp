#include "pie/embedding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "pie/format.hpp"

namespace pie {

std::vector<BinaryCode> prefix_free_codes(std::size_t s) {
  if (s < 1) throw ValidationError("prefix_free_codes needs s >= 1");
  std::vector<BinaryCode> codes;
  if (s == 1) return codes;
  const std::size_t h = std::bit_width(s - 1);  // ceil(log2 s) for s >= 2
  const std::size_t full = std::size_t{1} << h;
  const std::size_t short_count = full - s;
  const std::size_t long_count = 2 * (s - full / 2);

  auto emit = [&](std::size_t value, std::size_t length) {
    BinaryCode code(length);
    for (std::size_t b = 0; b < length; ++b) {
      code[b] = static_cast<std::uint8_t>((value >> (length - 1 - b)) & 1U);
    }
    codes.push_back(std::move(code));
  };
  for (std::size_t i = 0; i < short_count; ++i) emit(i, h - 1);
  for (std::size_t i = 0; i < long_count; ++i) emit((short_count << 1) + i, h);
  return codes;
}

std::vector<double> apply_coord_msg(const CoordMsg& msg, Weight link_weight) {
  std::vector<double> out;
  out.reserve(msg.parent_coords.size() + (msg.code ? msg.code->size() : 0));
  for (double c : msg.parent_coords) out.push_back(c < 0.0 ? c - link_weight : c + link_weight);
  if (msg.code) {
    for (auto bit : *msg.code) out.push_back(bit == 0 ? -link_weight : link_weight);
  }
  return out;
}

double linf_distance(std::span<const double> a, std::span<const double> b) noexcept {
  const std::size_t k = std::min(a.size(), b.size());
  double best = 0.0;
  for (std::size_t i = 0; i < k; ++i) best = std::max(best, std::abs(a[i] - b[i]));
  return best;
}

double linf_distance(const CoordinateVector& a, const CoordinateVector& b) {
  if (a.tree != b.tree) throw ContractViolation("l-infinity distance across different trees");
  return linf_distance(a.coords, b.coords);
}

namespace {

struct CoordProtocol {
  using State = std::vector<double>;
  using Message = CoordMsg;

  const LevelForest& forest;
  /// Codes per child count, indexed by s.
  std::vector<std::vector<BinaryCode>> code_book;

  // Periodic NotifyChildren; children ordered by ascending id.
  void emit(NodeId u, const State& coords, Outbox<CoordMsg>& out) const {
    const auto& children = forest.states[u].children;
    if (children.empty()) return;
    if (children.size() == 1) {
      out.send(children[0], CoordMsg{coords, std::nullopt});
      return;
    }
    const auto& codes = code_book[children.size()];
    for (std::size_t i = 0; i < children.size(); ++i) {
      out.send(children[i], CoordMsg{coords, codes[i]});
    }
  }

  bool receive(NodeId self, State& coords, NodeId from, const CoordMsg& msg, Weight w) const {
    if (forest.states[self].parent != from) return false;
    auto next = apply_coord_msg(msg, w);
    if (next == coords) return false;
    coords = std::move(next);
    return true;
  }
};

static_assert(RoundProtocol<CoordProtocol>);

}  // namespace

ForestEmbedding embed_forest(const Graph& g, const LevelForest& forest, const SimConfig& config) {
  const std::size_t n = g.node_count();
  if (forest.states.size() != n) throw ContractViolation("forest does not match graph");
  std::size_t max_children = 0;
  for (const auto& s : forest.states) max_children = std::max(max_children, s.children.size());

  CoordProtocol protocol{forest, {}};
  protocol.code_book.resize(max_children + 1);
  for (std::size_t s = 1; s <= max_children; ++s) protocol.code_book[s] = prefix_free_codes(s);

  auto run = run_until_converged(g, protocol, std::vector<std::vector<double>>(n, {0.0}), config);
  if (!run.converged) {
    throw ConvergenceError("coordinates maintainer at level " + std::to_string(forest.level) +
                           " did not converge");
  }
  ForestEmbedding out;
  out.rounds = run.rounds;
  out.messages = run.messages;
  out.coords.reserve(n);
  for (NodeId u = 0; u < n; ++u) out.coords.push_back({forest.tree_of(u), std::move(run.states[u])});
  return out;
}

MultiTreeEmbedding::MultiTreeEmbedding(std::size_t node_count, std::vector<ForestEmbedding> levels)
    : node_count_(node_count), levels_(levels.size()) {
  table_.resize(node_count_ * levels_);
  for (std::size_t l = 0; l < levels_; ++l) {
    if (levels[l].coords.size() != node_count_) throw ContractViolation("level size mismatch");
    rounds += levels[l].rounds;
    messages += levels[l].messages;
    for (NodeId u = 0; u < node_count_; ++u) {
      table_[static_cast<std::size_t>(u) * levels_ + l] = std::move(levels[l].coords[u]);
    }
  }
}

std::size_t MultiTreeEmbedding::total_dim(NodeId u) const {
  std::size_t total = 0;
  for (const auto& c : node_set(u)) total += c.dim();
  return total;
}

void write_coordinate_dump(const MultiTreeEmbedding& emb, std::ostream& out) {
  out << "nodeId,treeLevel,treeRoot,dim,coords\n";
  for (NodeId u = 0; u < emb.node_count(); ++u) {
    for (const auto& c : emb.node_set(u)) {
      out << u << ',' << c.tree.level << ',' << c.tree.root << ',' << c.dim() << ',';
      for (std::size_t k = 0; k < c.coords.size(); ++k) {
        if (k) out << ':';
        out << format_number(c.coords[k]);
      }
      out << '\n';
    }
  }
}

}  // namespace pie

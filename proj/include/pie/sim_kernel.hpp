#pragma once

#include <concepts>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pie/graph.hpp"
#include "pie/random.hpp"
#include "pie/types.hpp"

namespace pie {

struct SimConfig {
  std::size_t max_rounds = 100000;
  std::uint64_t seed = 0;
  std::size_t convergence_window = 1;

  void validate() const {
    if (max_rounds < 1) throw ValidationError("max_rounds must be >= 1");
    if (convergence_window < 1) throw ValidationError("convergence_window must be >= 1");
  }
};

/// Nodes that stopped working. Failed nodes neither send nor receive.
class FailureSet {
 public:
  FailureSet() = default;
  explicit FailureSet(std::size_t n) : mask_(n, 0) {}
  FailureSet(std::size_t n, std::span<const NodeId> failed);

  bool is_failed(NodeId u) const { return u < mask_.size() && mask_[u] != 0; }
  bool is_alive(NodeId u) const { return !is_failed(u); }
  std::size_t size() const noexcept { return failed_.size(); }
  bool empty() const noexcept { return failed_.empty(); }
  /// Failed ids, ascending.
  std::span<const NodeId> nodes() const noexcept { return failed_; }

 private:
  std::vector<std::uint8_t> mask_;
  std::vector<NodeId> failed_;
};

/// Marks floor(fraction * n) nodes as failed, chosen uniformly without
/// replacement from a stream derived from `seed`.
FailureSet inject_failures(const Graph& g, double fraction, std::uint64_t seed);

/// Messages a node emits in one round. Delivery happens after every node has
/// emitted, so all messages of a round reflect start-of-round state.
template <class Message>
class Outbox {
 public:
  Outbox(const Graph& g, NodeId self) : graph_(g), self_(self) {}

  void send(NodeId to, Message msg) {
    auto w = graph_.weight(self_, to);
    if (!w) throw ContractViolation("send to a non-neighbor");
    items_.push_back({to, *w, std::move(msg)});
  }

  void broadcast(const Message& msg) {
    for (const auto& e : graph_.neighbors(self_)) items_.push_back({e.to, e.weight, msg});
  }

  struct Item {
    NodeId to;
    Weight weight;
    Message msg;
  };
  std::vector<Item>& items() { return items_; }

 private:
  const Graph& graph_;
  NodeId self_;
  std::vector<Item> items_;
};

/// A periodic, per-node message-passing protocol.
///
/// `emit` runs once per round for every live node. `receive` consumes one
/// inbound message and reports whether the local state changed.
template <class P>
concept RoundProtocol = requires(const P& p, NodeId u, typename P::State& s,
                                 const typename P::State& cs, const typename P::Message& m,
                                 Outbox<typename P::Message>& out, Weight w) {
  { p.emit(u, cs, out) };
  { p.receive(u, s, u, m, w) } -> std::convertible_to<bool>;
};

template <class State>
struct SimResult {
  std::vector<State> states;
  bool converged = false;
  std::size_t rounds = 0;
  std::size_t messages = 0;
};

/// Runs synchronous rounds until no state changes for
/// `config.convergence_window` consecutive rounds, or `max_rounds` elapse.
///
/// Within a round every live node emits, then each live node drains its inbox
/// in ascending sender order. A non-converged result still carries the last
/// states.
template <RoundProtocol P>
SimResult<typename P::State> run_until_converged(const Graph& g, const P& protocol,
                                                 std::vector<typename P::State> initial,
                                                 const SimConfig& config,
                                                 const FailureSet* failures = nullptr) {
  using Message = typename P::Message;
  config.validate();
  if (initial.size() != g.node_count()) throw ContractViolation("one initial state per node");

  struct Delivery {
    NodeId from;
    Weight weight;
    Message msg;
  };
  auto alive = [&](NodeId u) { return failures == nullptr || failures->is_alive(u); };

  SimResult<typename P::State> result;
  result.states = std::move(initial);
  std::vector<std::vector<Delivery>> inbox(g.node_count());
  std::size_t quiet = 0;

  while (result.rounds < config.max_rounds) {
    ++result.rounds;
    // Senders in ascending id order, so every inbox is sorted by sender.
    for (NodeId u = 0; u < g.node_count(); ++u) {
      if (!alive(u)) continue;
      Outbox<Message> out(g, u);
      protocol.emit(u, std::as_const(result.states[u]), out);
      for (auto& item : out.items()) {
        if (!alive(item.to)) continue;
        inbox[item.to].push_back({u, item.weight, std::move(item.msg)});
        ++result.messages;
      }
    }
    bool changed = false;
    for (NodeId u = 0; u < g.node_count(); ++u) {
      for (auto& d : inbox[u]) {
        if (protocol.receive(u, result.states[u], d.from, d.msg, d.weight)) changed = true;
      }
      inbox[u].clear();
    }
    quiet = changed ? 0 : quiet + 1;
    if (quiet >= config.convergence_window) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace pie

#include "pie/sim_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pie {

FailureSet::FailureSet(std::size_t n, std::span<const NodeId> failed) : mask_(n, 0) {
  for (NodeId u : failed) {
    if (u >= n) throw ContractViolation("failed node out of range");
    mask_[u] = 1;
  }
  for (NodeId u = 0; u < n; ++u) {
    if (mask_[u]) failed_.push_back(u);
  }
}

FailureSet inject_failures(const Graph& g, double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction < 1.0)) {
    throw ValidationError("failure fraction must lie in [0, 1)");
  }
  const std::size_t n = g.node_count();
  const auto count = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n)));
  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), NodeId{0});
  Rng rng = make_rng(seed, stream::kFailures);
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(ids[i], ids[pick(rng)]);
  }
  ids.resize(count);
  return FailureSet(n, ids);
}

}  // namespace pie

#pragma once

#include <cstdint>
#include <random>

namespace pie {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for sub-stream `stream` of `master`. Work units that draw from
/// derived streams produce the same values regardless of execution order.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
  return mix_seed(mix_seed(master) ^ (stream * 0xd1b54a32d192ed03ULL + 1));
}

inline Rng make_rng(std::uint64_t master, std::uint64_t stream) {
  return Rng(derive_seed(master, stream));
}

// Stream tags for the components that draw randomness.
namespace stream {
inline constexpr std::uint64_t kGlp = 1;
inline constexpr std::uint64_t kWeights = 2;
inline constexpr std::uint64_t kSalt = 3;
inline constexpr std::uint64_t kElection = 100;  // + level
inline constexpr std::uint64_t kFailures = 4;
inline constexpr std::uint64_t kPairs = 5;
}  // namespace stream

}  // namespace pie

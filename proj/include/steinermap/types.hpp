/*******************************************************************************
 * Basic index/weight types and the seeded PRNG used across the project.
 ******************************************************************************/
#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace steinermap {

using NodeID = std::uint32_t;
using NetID = std::uint32_t;
using BlockID = std::uint32_t;

// All weights (node, net, target edge) are positive integers; distances and
// objective values therefore stay exact in 64-bit signed arithmetic.
using Weight = std::int64_t;

inline constexpr NodeID kInvalidNode = std::numeric_limits<NodeID>::max();
inline constexpr BlockID kInvalidBlock = std::numeric_limits<BlockID>::max();

// lcg64 v1: 64-bit linear congruential generator (Knuth multiplier).
// state' = state * 6364136223846793005 + 1442695040888963407 (mod 2^64),
// output = new state. Bounded draws use the upper 32 bits modulo the range,
// shuffles are Fisher-Yates from the back. Kept deliberately simple so that
// seeds reproduce bit-exactly across implementations.
class Lcg64 {
public:
  explicit Lcg64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return state_;
  }

  // Uniform draw from [lo, hi], inclusive. Modulo bias is acceptable here.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>((next() >> 32) % range);
  }

  template <typename T> void shuffle(std::vector<T> &values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(i) - 1));
      std::swap(values[i - 1], values[j]);
    }
  }

private:
  std::uint64_t state_;
};

// Derives independent sub-seeds for pipeline phases from the run seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t salt = 0) {
  std::uint64_t x = seed ^ (tag * 0x9e3779b97f4a7c15ULL) ^ (salt * 0xbf58476d1ce4e5b9ULL);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

} // namespace steinermap

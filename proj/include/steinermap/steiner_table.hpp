/*******************************************************************************
 * dist(Lambda) oracle: exact Steiner tree weights precomputed for all block
 * subsets up to the size limit (Dreyfus-Wagner), MST-based 2-approximation
 * with an insert-only cache beyond it.
 ******************************************************************************/
#pragma once

#include <cstdint>
#include <unordered_map>

#include "steinermap/block_set.hpp"
#include "steinermap/target_graph.hpp"
#include "steinermap/types.hpp"

namespace steinermap {

struct SteinerQueryStats {
  std::uint64_t exact = 0;      // |Lambda| <= t, served from the exact table
  std::uint64_t cache_hits = 0; // |Lambda| > t, served from the MST cache
  std::uint64_t cache_misses = 0; // |Lambda| > t, MST computed and cached

  std::uint64_t total() const { return exact + cache_hits + cache_misses; }
};

class SteinerTable {
public:
  // Precomputes exact tree weights for every subset of size 2..size_limit.
  // Throws Error(size_limit_too_large) when the subset table would exceed
  // the memory budget (counted in stored weight cells).
  SteinerTable(const TargetGraph &target, int size_limit,
               std::uint64_t memory_budget_cells = kDefaultBudgetCells);

  // Minimal (|set| <= t) or 2-approximate (|set| > t) Steiner tree weight of
  // the given blocks on the target graph. Empty sets and singletons cost 0.
  Weight distance(const BlockSet &set) const;

  // dist(from) - dist(to); positive iff `to` induces a shorter tree.
  Weight delta(const BlockSet &from, const BlockSet &to) const {
    return distance(from) - distance(to);
  }

  int size_limit() const { return size_limit_; }
  const TargetGraph &target() const { return *target_; }

  const SteinerQueryStats &stats() const { return stats_; }
  void reset_stats() const { stats_ = {}; }

  static constexpr std::uint64_t kDefaultBudgetCells = 50'000'000;

private:
  Weight mst_over(const BlockSet &set) const;

  const TargetGraph *target_;
  int size_limit_;
  // On a complete unit-weight target every set of size s has optimum s - 1,
  // so queries beyond the size limit stay exact and skip the MST cache.
  bool unit_complete_ = false;
  std::unordered_map<BlockSet, Weight, BlockSetHash> exact_;
  mutable std::unordered_map<BlockSet, Weight, BlockSetHash> mst_cache_;
  mutable SteinerQueryStats stats_;
};

} // namespace steinermap

/*******************************************************************************
 * g(u, t) for all node/target-block pairs, maintained under moves via the
 * four-case delta-gain update procedure.
 ******************************************************************************/
#pragma once

#include <cstdint>
#include <vector>

#include "steinermap/mapping.hpp"
#include "steinermap/types.hpp"

namespace steinermap {

// Gain of moving u from its current block to `target`: the decrease of the
// Steiner tree metric, assembled from the three pin-count cases per incident
// net. Zero for target == current block. Runs in O(|I(u)|) dist queries.
Weight compute_move_gain(const Mapping &mapping, NodeID u, BlockID target);

class GainTable {
public:
  explicit GainTable(const Mapping &mapping);

  // Cheap wholesale invalidation: rows are recomputed on first access after
  // this call instead of being patched further.
  void invalidate_all();

  // Current gain of moving u to `target`; refreshes u's row if stale.
  Weight gain(NodeID u, BlockID target, const Mapping &mapping);

  struct BestMove {
    BlockID target = kInvalidBlock;
    Weight gain = 0;
    bool valid = false;
  };

  // Highest-gain move of u into a balance-feasible block, ties broken by the
  // smaller block id. With `forbid_empty_source`, moves that would empty u's
  // block are not offered (used while building the initial k-way partition).
  BestMove best_feasible(NodeID u, const Mapping &mapping, bool forbid_empty_source = false);

  // Applies the move through the mapping and patches the table net by net
  // (the moved node's own row is invalidated and rebuilt lazily).
  MoveResult apply_and_update(Mapping &mapping, NodeID u, BlockID target);

  // Instrumentation for the update-cost accounting checks.
  std::uint64_t trigger_events() const { return trigger_events_; }
  std::uint64_t entry_rewrites() const { return entry_rewrites_; }
  void reset_counters() { trigger_events_ = entry_rewrites_ = 0; }

  // Test hooks: eager materialization and raw (no-refresh) access.
  void materialize_all(const Mapping &mapping);
  Weight raw_gain(NodeID u, BlockID target) const {
    return gains_[static_cast<std::size_t>(u) * num_blocks_ + target];
  }
  bool row_valid(NodeID u) const { return row_epoch_[u] == epoch_; }

private:
  void ensure_row(NodeID u, const Mapping &mapping);
  void handle_transition(const Mapping &mapping, const NetTransition &transition);
  void patch_pin(const Mapping &mapping, const NetTransition &transition, NodeID pin);

  BlockID num_blocks_;
  std::vector<Weight> gains_;
  std::vector<std::uint64_t> row_epoch_;
  std::uint64_t epoch_ = 1;
  std::uint64_t trigger_events_ = 0;
  std::uint64_t entry_rewrites_ = 0;
};

} // namespace steinermap

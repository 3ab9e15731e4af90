/*******************************************************************************
 * Mutable k-way mapping state: block assignment, block weights, per-net pin
 * counts Phi(e, V_i) and connectivity sets Lambda(e), move application with
 * attributed gains, and from-scratch objective evaluation.
 ******************************************************************************/
#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "steinermap/block_set.hpp"
#include "steinermap/hypergraph.hpp"
#include "steinermap/steiner_table.hpp"
#include "steinermap/target_graph.hpp"
#include "steinermap/types.hpp"

namespace steinermap {

// Pin counts per (net, block): dense m*k matrix while it fits, sparse
// per-net lists beyond the threshold.
class PinCountStore {
public:
  PinCountStore(NetID num_nets, BlockID num_blocks, std::size_t dense_limit = kDefaultDenseLimit);

  std::int32_t get(NetID e, BlockID b) const;
  std::int32_t increment(NetID e, BlockID b); // returns the new count
  std::int32_t decrement(NetID e, BlockID b);

  bool dense() const { return dense_; }

  static constexpr std::size_t kDefaultDenseLimit = std::size_t(1) << 24;

private:
  BlockID num_blocks_;
  bool dense_;
  std::vector<std::int32_t> dense_counts_;
  std::vector<std::vector<std::pair<BlockID, std::int32_t>>> sparse_counts_;
};

// Per-net snapshot handed to move observers, mirroring the state right after
// this net's pin counts and connectivity set were updated. The pre-move state
// is reconstructible in O(1): increment phi(source), decrement phi(target),
// re-add `source` if it was removed, drop `target` if it was added.
struct NetTransition {
  NetID net;
  NodeID moved_node;
  BlockID source;
  BlockID target;
  std::int32_t phi_source_after;
  std::int32_t phi_target_after;
  bool source_removed; // source left Lambda(e)
  bool target_added;   // target joined Lambda(e)
};

using MoveObserver = std::function<void(const NetTransition &)>;

struct MoveResult {
  Weight attributed_gain = 0;
  bool reverted = false;
};

class Mapping {
public:
  Mapping(const Hypergraph &hg, const TargetGraph &target, const SteinerTable &table,
          double epsilon, std::vector<BlockID> assignment);

  const Hypergraph &hypergraph() const { return *hg_; }
  const TargetGraph &target() const { return *target_; }
  const SteinerTable &steiner() const { return *table_; }

  BlockID num_blocks() const { return target_->num_blocks(); }
  double epsilon() const { return epsilon_; }
  Weight max_block_weight() const { return max_block_weight_; }

  BlockID block_of(NodeID u) const { return block_of_[u]; }
  std::span<const BlockID> assignment() const { return block_of_; }
  Weight block_weight(BlockID b) const { return block_weights_[b]; }

  std::int32_t pin_count(NetID e, BlockID b) const { return pin_counts_.get(e, b); }
  const BlockSet &connectivity_set(NetID e) const { return connectivity_[e]; }
  int connectivity(NetID e) const { return connectivity_[e].size(); }
  // dist(Lambda(e)) of the current state, maintained incrementally.
  Weight net_distance(NetID e) const { return net_dist_[e]; }

  bool is_balanced() const;
  // True iff moving u into `target` keeps the balance constraint.
  bool fits(NodeID u, BlockID target) const {
    return block_weights_[target] + hg_->node_weight(u) <= max_block_weight_;
  }

  bool is_boundary(NodeID u) const;
  // R(u): union of the connectivity sets of u's incident nets.
  BlockSet adjacent_blocks(NodeID u) const;

  // Moves u to `target`, updating Phi/Lambda/block weights net by net. The
  // attributed gain is derived from the actual connectivity transitions.
  // With `revert_if_negative` the move is undone when the attributed gain is
  // negative (label propagation mode); the observer also sees the reverse
  // transitions in that case.
  MoveResult apply_move(NodeID u, BlockID target, bool revert_if_negative = false,
                        const MoveObserver &observer = {});

  // Sum over all nets of dist(Lambda(e)) * omega(e), recomputed from the
  // assignment alone (independent of the maintained Phi/Lambda state).
  Weight steiner_objective() const;

private:
  const Hypergraph *hg_;
  const TargetGraph *target_;
  const SteinerTable *table_;
  double epsilon_;
  Weight max_block_weight_;
  std::vector<BlockID> block_of_;
  std::vector<Weight> block_weights_;
  PinCountStore pin_counts_;
  std::vector<BlockSet> connectivity_;
  std::vector<Weight> net_dist_;
};

// Metric evaluators over a plain assignment, all from scratch.
Weight evaluate_steiner_metric(const Hypergraph &hg, const TargetGraph &target,
                               const SteinerTable &table, std::span<const BlockID> assignment);
Weight evaluate_connectivity_metric(const Hypergraph &hg, BlockID num_blocks,
                                    std::span<const BlockID> assignment);
Weight evaluate_cut_metric(const Hypergraph &hg, BlockID num_blocks,
                           std::span<const BlockID> assignment);

// L_max = (1 + epsilon) * ceil(c(V) / k), rounded down to the weight grid.
Weight compute_max_block_weight(Weight total_node_weight, BlockID num_blocks, double epsilon);

// Mapping of the finer hypergraph induced by a mapping of its contraction:
// every node inherits the block of its cluster. The Steiner metric is
// invariant under this projection.
Mapping project(const Mapping &coarse, const Hypergraph &finer, const ContractionMap &map);

} // namespace steinermap

#include "steinermap/mapping.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "steinermap/errors.hpp"

namespace steinermap {

PinCountStore::PinCountStore(const NetID num_nets, const BlockID num_blocks,
                             const std::size_t dense_limit)
    : num_blocks_(num_blocks),
      dense_(static_cast<std::size_t>(num_nets) * num_blocks <= dense_limit) {
  if (dense_) {
    dense_counts_.assign(static_cast<std::size_t>(num_nets) * num_blocks, 0);
  } else {
    sparse_counts_.resize(num_nets);
  }
}

std::int32_t PinCountStore::get(const NetID e, const BlockID b) const {
  if (dense_) {
    return dense_counts_[static_cast<std::size_t>(e) * num_blocks_ + b];
  }
  const auto &row = sparse_counts_[e];
  const auto it = std::lower_bound(row.begin(), row.end(), b,
                                   [](const auto &entry, BlockID key) { return entry.first < key; });
  return (it != row.end() && it->first == b) ? it->second : 0;
}

std::int32_t PinCountStore::increment(const NetID e, const BlockID b) {
  if (dense_) {
    return ++dense_counts_[static_cast<std::size_t>(e) * num_blocks_ + b];
  }
  auto &row = sparse_counts_[e];
  const auto it = std::lower_bound(row.begin(), row.end(), b,
                                   [](const auto &entry, BlockID key) { return entry.first < key; });
  if (it != row.end() && it->first == b) {
    return ++it->second;
  }
  row.insert(it, {b, 1});
  return 1;
}

std::int32_t PinCountStore::decrement(const NetID e, const BlockID b) {
  if (dense_) {
    return --dense_counts_[static_cast<std::size_t>(e) * num_blocks_ + b];
  }
  auto &row = sparse_counts_[e];
  const auto it = std::lower_bound(row.begin(), row.end(), b,
                                   [](const auto &entry, BlockID key) { return entry.first < key; });
  assert(it != row.end() && it->first == b);
  if (--it->second == 0) {
    row.erase(it);
    return 0;
  }
  return it->second;
}

Weight compute_max_block_weight(const Weight total_node_weight, const BlockID num_blocks,
                        const double epsilon) {
  const Weight perfect = (total_node_weight + num_blocks - 1) / num_blocks;
  return static_cast<Weight>(std::floor((1.0 + epsilon) * static_cast<double>(perfect) + 1e-9));
}

Mapping::Mapping(const Hypergraph &hg, const TargetGraph &target, const SteinerTable &table,
                 const double epsilon, std::vector<BlockID> assignment)
    : hg_(&hg),
      target_(&target),
      table_(&table),
      epsilon_(epsilon),
      max_block_weight_(compute_max_block_weight(hg.total_node_weight(), target.num_blocks(), epsilon)),
      block_of_(std::move(assignment)),
      pin_counts_(hg.num_nets(), target.num_blocks()) {
  if (block_of_.size() != hg.num_nodes()) {
    throw std::invalid_argument("assignment does not cover all nodes");
  }
  block_weights_.assign(num_blocks(), 0);
  for (NodeID u = 0; u < hg.num_nodes(); ++u) {
    if (block_of_[u] >= num_blocks()) {
      fail(ErrorCode::invalid_block, "assignment references a block outside the target graph");
    }
    block_weights_[block_of_[u]] += hg.node_weight(u);
  }
  connectivity_.reserve(hg.num_nets());
  net_dist_.reserve(hg.num_nets());
  for (NetID e = 0; e < hg.num_nets(); ++e) {
    BlockSet set(num_blocks());
    for (const NodeID pin : hg.pins(e)) {
      const BlockID b = block_of_[pin];
      if (pin_counts_.increment(e, b) == 1) {
        set.add(b);
      }
    }
    net_dist_.push_back(table.distance(set));
    connectivity_.push_back(std::move(set));
  }
}

bool Mapping::is_balanced() const {
  for (const Weight w : block_weights_) {
    if (w > max_block_weight_) {
      return false;
    }
  }
  return true;
}

bool Mapping::is_boundary(const NodeID u) const {
  for (const NetID e : hg_->incident_nets(u)) {
    if (connectivity_[e].size() > 1) {
      return true;
    }
  }
  return false;
}

BlockSet Mapping::adjacent_blocks(const NodeID u) const {
  BlockSet result(num_blocks());
  for (const NetID e : hg_->incident_nets(u)) {
    connectivity_[e].for_each([&](BlockID b) { result.add(b); });
  }
  return result;
}

MoveResult Mapping::apply_move(const NodeID u, const BlockID target, const bool revert_if_negative,
                               const MoveObserver &observer) {
  if (target >= num_blocks()) {
    fail(ErrorCode::invalid_block, "move target outside the target graph");
  }
  const BlockID source = block_of_[u];
  assert(source != target);

  block_of_[u] = target;
  block_weights_[source] -= hg_->node_weight(u);
  block_weights_[target] += hg_->node_weight(u);

  Weight attributed = 0;
  for (const NetID e : hg_->incident_nets(u)) {
    const std::int32_t phi_source = pin_counts_.decrement(e, source);
    const std::int32_t phi_target = pin_counts_.increment(e, target);
    const bool source_removed = phi_source == 0;
    const bool target_added = phi_target == 1;
    if (source_removed || target_added) {
      BlockSet &set = connectivity_[e];
      const Weight dist_before = net_dist_[e];
      if (source_removed) {
        set.remove(source);
      }
      if (target_added) {
        set.add(target);
      }
      net_dist_[e] = table_->distance(set);
      attributed += hg_->net_weight(e) * (dist_before - net_dist_[e]);
    }
    if (observer) {
      observer(NetTransition{e, u, source, target, phi_source, phi_target, source_removed,
                             target_added});
    }
  }

  if (revert_if_negative && attributed < 0) {
    apply_move(u, source, false, observer);
    return {attributed, true};
  }
  return {attributed, false};
}

Weight Mapping::steiner_objective() const {
  return evaluate_steiner_metric(*hg_, *target_, *table_, block_of_);
}

Weight evaluate_steiner_metric(const Hypergraph &hg, const TargetGraph &target,
                               const SteinerTable &table, std::span<const BlockID> assignment) {
  Weight total = 0;
  for (NetID e = 0; e < hg.num_nets(); ++e) {
    BlockSet set(target.num_blocks());
    for (const NodeID pin : hg.pins(e)) {
      set.add(assignment[pin]);
    }
    total += table.distance(set) * hg.net_weight(e);
  }
  return total;
}

Weight evaluate_connectivity_metric(const Hypergraph &hg, const BlockID num_blocks,
                                    std::span<const BlockID> assignment) {
  Weight total = 0;
  for (NetID e = 0; e < hg.num_nets(); ++e) {
    BlockSet set(num_blocks);
    for (const NodeID pin : hg.pins(e)) {
      set.add(assignment[pin]);
    }
    total += static_cast<Weight>(set.size() - 1) * hg.net_weight(e);
  }
  return total;
}

Weight evaluate_cut_metric(const Hypergraph &hg, const BlockID num_blocks,
                           std::span<const BlockID> assignment) {
  Weight total = 0;
  for (NetID e = 0; e < hg.num_nets(); ++e) {
    BlockSet set(num_blocks);
    for (const NodeID pin : hg.pins(e)) {
      set.add(assignment[pin]);
    }
    if (set.size() > 1) {
      total += hg.net_weight(e);
    }
  }
  return total;
}

Mapping project(const Mapping &coarse, const Hypergraph &finer, const ContractionMap &map) {
  std::vector<BlockID> assignment(finer.num_nodes());
  for (NodeID u = 0; u < finer.num_nodes(); ++u) {
    assignment[u] = coarse.block_of(map.cluster_of[u]);
  }
  return Mapping(finer, coarse.target(), coarse.steiner(), coarse.epsilon(),
                 std::move(assignment));
}

} // namespace steinermap

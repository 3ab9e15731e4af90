#include "steinermap/gain_table.hpp"

#include <algorithm>
#include <cassert>

namespace steinermap {

Weight compute_move_gain(const Mapping &mapping, const NodeID u, const BlockID target) {
  const BlockID source = mapping.block_of(u);
  if (source == target) {
    return 0;
  }
  const Hypergraph &hg = mapping.hypergraph();
  const SteinerTable &table = mapping.steiner();
  Weight gain = 0;
  for (const NetID e : hg.incident_nets(u)) {
    const std::int32_t phi_source = mapping.pin_count(e, source);
    const std::int32_t phi_target = mapping.pin_count(e, target);
    const BlockSet &set = mapping.connectivity_set(e);
    Weight delta = 0;
    if (phi_source == 1 && phi_target > 0) {
      delta = mapping.net_distance(e) - table.distance(set.without(source));
    } else if (phi_source > 1 && phi_target == 0) {
      delta = mapping.net_distance(e) - table.distance(set.with(target));
    } else if (phi_source == 1 && phi_target == 0) {
      delta = mapping.net_distance(e) - table.distance(set.without(source).with(target));
    }
    gain += delta * hg.net_weight(e);
  }
  return gain;
}

namespace {

// Contribution of net e to g(v, j) for the given pin counts and connectivity
// set of e. phi_own = Phi(e, block(v)), phi_target = Phi(e, j).
Weight net_contribution(const SteinerTable &table, const BlockSet &set, const Weight net_weight,
                        const BlockID own_block, const BlockID target_block,
                        const std::int32_t phi_own, const std::int32_t phi_target) {
  if (phi_own == 1 && phi_target > 0) {
    return table.delta(set, set.without(own_block)) * net_weight;
  }
  if (phi_own > 1 && phi_target == 0) {
    return table.delta(set, set.with(target_block)) * net_weight;
  }
  if (phi_own == 1 && phi_target == 0) {
    return table.delta(set, set.without(own_block).with(target_block)) * net_weight;
  }
  return 0;
}

} // namespace

GainTable::GainTable(const Mapping &mapping)
    : num_blocks_(mapping.num_blocks()),
      gains_(static_cast<std::size_t>(mapping.hypergraph().num_nodes()) * num_blocks_, 0),
      row_epoch_(mapping.hypergraph().num_nodes(), 0) {}

void GainTable::invalidate_all() { ++epoch_; }

// Net-major row rebuild: per net the case-1 delta and the reduced set are
// shared across all target blocks, which saves most of the dist queries
// compared to k separate compute_move_gain calls.
void GainTable::ensure_row(const NodeID u, const Mapping &mapping) {
  if (row_epoch_[u] == epoch_) {
    return;
  }
  const Hypergraph &hg = mapping.hypergraph();
  const SteinerTable &table = mapping.steiner();
  const BlockID source = mapping.block_of(u);
  Weight *row = gains_.data() + static_cast<std::size_t>(u) * num_blocks_;
  std::fill(row, row + num_blocks_, Weight{0});

  for (const NetID e : hg.incident_nets(u)) {
    const Weight weight = hg.net_weight(e);
    const Weight dist_now = mapping.net_distance(e);
    const BlockSet &set = mapping.connectivity_set(e);
    if (mapping.pin_count(e, source) == 1) {
      const BlockSet reduced = set.without(source);
      const Weight removal_delta = (dist_now - table.distance(reduced)) * weight;
      for (BlockID b = 0; b < num_blocks_; ++b) {
        if (b == source) {
          continue;
        }
        if (mapping.pin_count(e, b) > 0) {
          row[b] += removal_delta;
        } else {
          row[b] += (dist_now - table.distance(reduced.with(b))) * weight;
        }
      }
    } else {
      for (BlockID b = 0; b < num_blocks_; ++b) {
        if (b != source && mapping.pin_count(e, b) == 0) {
          row[b] += (dist_now - table.distance(set.with(b))) * weight;
        }
      }
    }
  }
  row[source] = 0;
  row_epoch_[u] = epoch_;
}

void GainTable::materialize_all(const Mapping &mapping) {
  for (NodeID u = 0; u < mapping.hypergraph().num_nodes(); ++u) {
    ensure_row(u, mapping);
  }
}

Weight GainTable::gain(const NodeID u, const BlockID target, const Mapping &mapping) {
  ensure_row(u, mapping);
  return raw_gain(u, target);
}

GainTable::BestMove GainTable::best_feasible(const NodeID u, const Mapping &mapping,
                                             const bool forbid_empty_source) {
  const BlockID source = mapping.block_of(u);
  if (forbid_empty_source &&
      mapping.block_weight(source) == mapping.hypergraph().node_weight(u)) {
    return {};
  }
  ensure_row(u, mapping);
  const Weight *row = gains_.data() + static_cast<std::size_t>(u) * num_blocks_;
  BestMove best;
  for (BlockID b = 0; b < num_blocks_; ++b) {
    if (b == source || !mapping.fits(u, b)) {
      continue;
    }
    if (!best.valid || row[b] > best.gain) {
      best = {b, row[b], true};
    }
  }
  return best;
}

MoveResult GainTable::apply_and_update(Mapping &mapping, const NodeID u, const BlockID target) {
  const MoveResult result = mapping.apply_move(
      u, target, false, [&](const NetTransition &t) { handle_transition(mapping, t); });
  // The moved node's row is relative to a new source block now; rebuild lazily.
  row_epoch_[u] = 0;
  return result;
}

// The four trigger cases: the source block left Lambda(e), the target block
// joined it, the source block is down to a single pin, or the target block
// just reached its second pin. The first two affect every pin of the net,
// the latter two only the (previously) last pin in that block.
void GainTable::handle_transition(const Mapping &mapping, const NetTransition &transition) {
  const Hypergraph &hg = mapping.hypergraph();
  const auto pins = hg.pins(transition.net);

  if (transition.source_removed || transition.phi_target_after == 1) {
    trigger_events_ += static_cast<std::uint64_t>(transition.source_removed) +
                       static_cast<std::uint64_t>(transition.phi_target_after == 1);
    for (const NodeID pin : pins) {
      if (pin != transition.moved_node) {
        patch_pin(mapping, transition, pin);
      }
    }
    return;
  }

  if (transition.phi_source_after == 1) {
    ++trigger_events_;
    for (const NodeID pin : pins) {
      if (pin != transition.moved_node && mapping.block_of(pin) == transition.source) {
        patch_pin(mapping, transition, pin);
        break;
      }
    }
  }
  if (transition.phi_target_after == 2) {
    ++trigger_events_;
    for (const NodeID pin : pins) {
      if (pin != transition.moved_node && mapping.block_of(pin) == transition.target) {
        patch_pin(mapping, transition, pin);
        break;
      }
    }
  }
}

void GainTable::patch_pin(const Mapping &mapping, const NetTransition &transition,
                          const NodeID pin) {
  if (row_epoch_[pin] != epoch_) {
    return; // stale rows are rebuilt from scratch on next access
  }
  const Hypergraph &hg = mapping.hypergraph();
  const SteinerTable &table = mapping.steiner();
  const NetID e = transition.net;
  const Weight net_weight = hg.net_weight(e);
  const BlockID own = mapping.block_of(pin);

  // Post-move state of net e.
  const BlockSet &set_after = mapping.connectivity_set(e);
  const auto phi_after = [&](const BlockID b) { return mapping.pin_count(e, b); };

  // Pre-move state, reconstructed in O(1) from the transition.
  BlockSet set_before = set_after;
  if (transition.source_removed) {
    set_before.add(transition.source);
  }
  if (transition.target_added) {
    set_before.remove(transition.target);
  }
  const auto phi_before = [&](const BlockID b) {
    std::int32_t phi = phi_after(b);
    if (b == transition.source) {
      ++phi;
    }
    if (b == transition.target) {
      --phi;
    }
    return phi;
  };

  Weight *row = gains_.data() + static_cast<std::size_t>(pin) * num_blocks_;
  const std::int32_t phi_own_after = phi_after(own);
  const std::int32_t phi_own_before = phi_before(own);
  for (BlockID b = 0; b < num_blocks_; ++b) {
    if (b == own) {
      continue;
    }
    const Weight before = net_contribution(table, set_before, net_weight, own, b,
                                           phi_own_before, phi_before(b));
    const Weight after =
        net_contribution(table, set_after, net_weight, own, b, phi_own_after, phi_after(b));
    row[b] += after - before;
    ++entry_rewrites_;
  }
}

} // namespace steinermap

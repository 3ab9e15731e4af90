#include "steinermap/refine_flow.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <limits>

#include "steinermap/errors.hpp"

namespace steinermap {

namespace {

bool is_plain_graph(const Hypergraph &hg) {
  for (NetID e = 0; e < hg.num_nets(); ++e) {
    if (hg.net_size(e) != 2) {
      return false;
    }
  }
  return true;
}

} // namespace

Region grow_region(const Mapping &mapping, const BlockID v1, const BlockID v2,
                   const double alpha, const Weight side_cap) {
  const Hypergraph &hg = mapping.hypergraph();

  std::deque<NodeID> queue1;
  std::deque<NodeID> queue2;
  std::vector<bool> enqueued(hg.num_nodes(), false);
  bool has_cut_net = false;
  for (NetID e = 0; e < hg.num_nets(); ++e) {
    if (mapping.pin_count(e, v1) == 0 || mapping.pin_count(e, v2) == 0) {
      continue;
    }
    has_cut_net = true;
    for (const NodeID pin : hg.pins(e)) {
      if (enqueued[pin]) {
        continue;
      }
      if (mapping.block_of(pin) == v1) {
        enqueued[pin] = true;
        queue1.push_back(pin);
      } else if (mapping.block_of(pin) == v2) {
        enqueued[pin] = true;
        queue2.push_back(pin);
      }
    }
  }
  if (!has_cut_net) {
    fail(ErrorCode::empty_region, "block pair has no cut net");
  }

  Region region;
  Weight weight1 = 0;
  Weight weight2 = 0;
  const double max_weight = alpha * static_cast<double>(mapping.max_block_weight());

  // Admit nodes alternately; the cap of one side loosens as the other side
  // grows, keeping any s-t cut of the resulting network balance-recoverable.
  int side = 1;
  while (!queue1.empty() || !queue2.empty()) {
    std::deque<NodeID> &queue = (side == 1) ? queue1 : queue2;
    const BlockID own_block = (side == 1) ? v1 : v2;
    const BlockID other_block = (side == 1) ? v2 : v1;
    Weight &own_weight = (side == 1) ? weight1 : weight2;
    const Weight other_region_weight = (side == 1) ? weight2 : weight1;
    if (queue.empty()) {
      side = 3 - side;
      continue;
    }
    const NodeID u = queue.front();
    queue.pop_front();
    double cap = max_weight - static_cast<double>(mapping.block_weight(other_block) -
                                                  other_region_weight);
    if (side_cap > 0) {
      cap = std::min(cap, static_cast<double>(side_cap));
    }
    if (static_cast<double>(own_weight + hg.node_weight(u)) <= cap) {
      own_weight += hg.node_weight(u);
      ((side == 1) ? region.side1 : region.side2).push_back(u);
      for (const NetID e : hg.incident_nets(u)) {
        for (const NodeID v : hg.pins(e)) {
          if (!enqueued[v] && mapping.block_of(v) == own_block) {
            enqueued[v] = true;
            queue.push_back(v);
          }
        }
      }
    }
    side = 3 - side;
  }

  region.nodes = region.side1;
  region.nodes.insert(region.nodes.end(), region.side2.begin(), region.side2.end());
  return region;
}

namespace {

constexpr std::uint32_t kOutside = std::numeric_limits<std::uint32_t>::max();

struct Builder {
  const Mapping &mapping;
  const BlockID v1;
  const BlockID v2;
  const Region &region;

  std::vector<std::uint32_t> node_index; // region node -> network id, else kOutside
  Weight pair_distance;

  // Logical elements, materialized once the infinite capacity is known.
  struct PlainArc {
    std::uint32_t from;
    std::uint32_t to;
    Weight capacity;
    bool undirected;
  };
  struct Gadget {
    std::vector<std::uint32_t> pins; // network ids, may include source/sink
    Weight capacity;
  };
  std::vector<PlainArc> plain_arcs;
  std::vector<Gadget> gadgets;
  NetworkBuild build;

  Builder(const Mapping &m, BlockID b1, BlockID b2, const Region &r)
      : mapping(m), v1(b1), v2(b2), region(r) {
    node_index.assign(m.hypergraph().num_nodes(), kOutside);
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      node_index[r.nodes[i]] = static_cast<std::uint32_t>(i) + 2;
    }
    BlockSet pair(m.num_blocks());
    pair.add(v1);
    pair.add(v2);
    pair_distance = m.steiner().distance(pair);
    build.region_nodes = r.nodes;
  }

  bool on_source_side_initially(const std::uint32_t id) const {
    if (id == 0) {
      return true;
    }
    if (id == 1) {
      return false;
    }
    return mapping.block_of(build.region_nodes[id - 2]) == v1;
  }

  void add_plain(const std::uint32_t from, const std::uint32_t to, const Weight cap,
                 const bool undirected) {
    if (cap <= 0) {
      return;
    }
    plain_arcs.push_back({from, to, cap, undirected});
    const bool from_src = on_source_side_initially(from);
    const bool to_src = on_source_side_initially(to);
    if (undirected ? (from_src != to_src) : (from_src && !to_src)) {
      build.baseline_cut += cap;
    }
  }

  void add_gadget(std::vector<std::uint32_t> pins, const Weight cap) {
    if (cap <= 0 || pins.size() < 2) {
      return;
    }
    bool any_src = false;
    bool any_snk = false;
    for (const std::uint32_t p : pins) {
      if (on_source_side_initially(p)) {
        any_src = true;
      } else {
        any_snk = true;
      }
    }
    if (any_src && any_snk) {
      build.baseline_cut += cap;
    }
    gadgets.push_back({std::move(pins), cap});
  }

  // Source- or sink-side arc for the single movable pin of a net that also
  // touches blocks outside the pair. The post-move connectivity set is
  // computed exactly from the pin counts.
  void add_boundary_arc(const NodeID u, const NetID e) {
    const BlockID own = mapping.block_of(u);
    const BlockID other = (own == v1) ? v2 : v1;
    const BlockSet &set = mapping.connectivity_set(e);
    BlockSet after = set;
    if (mapping.pin_count(e, own) == 1) {
      after.remove(own);
    }
    after.add(other);
    const Weight delta = mapping.steiner().delta(set, after) * mapping.hypergraph().net_weight(e);
    const std::uint32_t id = node_index[u];
    if (delta == 0) {
      return;
    }
    const bool improves = delta > 0;
    if (own == v1) {
      // leaving the source side realizes the improvement resp. the damage
      if (improves) {
        add_plain(id, 1, delta, false);
      } else {
        add_plain(0, id, -delta, false);
      }
    } else {
      if (improves) {
        add_plain(0, id, delta, false);
      } else {
        add_plain(id, 1, -delta, false);
      }
    }
  }

  NetworkBuild finish() {
    Weight total_finite = 0;
    for (const PlainArc &arc : plain_arcs) {
      total_finite += arc.capacity;
    }
    for (const Gadget &g : gadgets) {
      total_finite += g.capacity;
    }
    const Weight infinite = total_finite + 1; // provably uncuttable

    std::uint32_t next_id = static_cast<std::uint32_t>(2 + build.region_nodes.size());
    const std::uint32_t num_gadget_nodes = static_cast<std::uint32_t>(2 * gadgets.size());
    FlowNetwork network(next_id + num_gadget_nodes);
    for (const PlainArc &arc : plain_arcs) {
      network.add_arc(arc.from, arc.to, arc.capacity, arc.undirected ? arc.capacity : 0);
    }
    for (const Gadget &g : gadgets) {
      const std::uint32_t in = next_id++;
      const std::uint32_t out = next_id++;
      network.add_arc(in, out, g.capacity);
      for (const std::uint32_t p : g.pins) {
        if (p == 0) {
          network.add_arc(0, in, infinite); // source keeps no in-arcs
        } else if (p == 1) {
          network.add_arc(out, 1, infinite); // sink keeps no out-arcs
        } else {
          network.add_arc(p, in, infinite);
          network.add_arc(out, p, infinite);
        }
      }
    }
    build.network = std::move(network);
    return std::move(build);
  }
};

} // namespace

NetworkBuild build_graph_network(const Mapping &mapping, const BlockID v1, const BlockID v2,
                                 const Region &region) {
  const Hypergraph &hg = mapping.hypergraph();
  Builder builder(mapping, v1, v2, region);

  for (NetID e = 0; e < hg.num_nets(); ++e) {
    assert(hg.net_size(e) == 2);
    const auto pins = hg.pins(e);
    const NodeID a = pins[0];
    const NodeID b = pins[1];
    const std::uint32_t ia = builder.node_index[a];
    const std::uint32_t ib = builder.node_index[b];
    if (ia == kOutside && ib == kOutside) {
      continue; // neither endpoint can move
    }
    const Weight cap = builder.pair_distance * hg.net_weight(e);

    if (ia != kOutside && ib != kOutside) {
      builder.add_plain(ia, ib, cap, true);
      continue;
    }
    const NodeID inside = (ia != kOutside) ? a : b;
    const NodeID outside = (ia != kOutside) ? b : a;
    const BlockID outside_block = mapping.block_of(outside);
    if (outside_block == v1) {
      builder.add_plain(0, builder.node_index[inside], cap, false);
    } else if (outside_block == v2) {
      builder.add_plain(builder.node_index[inside], 1, cap, false);
    } else {
      builder.add_boundary_arc(inside, e);
    }
  }
  return builder.finish();
}

NetworkBuild build_hypergraph_network(const Mapping &mapping, const BlockID v1, const BlockID v2,
                                      const Region &region) {
  const Hypergraph &hg = mapping.hypergraph();
  const SteinerTable &table = mapping.steiner();
  Builder builder(mapping, v1, v2, region);

  BlockSet pair_set(mapping.num_blocks());
  pair_set.add(v1);
  pair_set.add(v2);

  for (NetID e = 0; e < hg.num_nets(); ++e) {
    std::vector<std::uint32_t> region_pins;
    std::int32_t region_v1 = 0;
    std::int32_t region_v2 = 0;
    for (const NodeID pin : hg.pins(e)) {
      const std::uint32_t id = builder.node_index[pin];
      if (id != kOutside) {
        region_pins.push_back(id);
        (mapping.block_of(pin) == v1 ? region_v1 : region_v2) += 1;
      }
    }
    if (region_pins.empty()) {
      continue;
    }
    const BlockSet &set = mapping.connectivity_set(e);
    const bool has_source_pin = mapping.pin_count(e, v1) > region_v1;
    const bool has_sink_pin = mapping.pin_count(e, v2) > region_v2;

    if (set.is_subset_of(pair_set)) {
      if (has_source_pin && has_sink_pin) {
        continue; // pinned to both sides: always cut, constant in the metric
      }
      std::vector<std::uint32_t> pins = region_pins;
      if (has_source_pin) {
        pins.push_back(0);
      }
      if (has_sink_pin) {
        pins.push_back(1);
      }
      const Weight cap = builder.pair_distance * hg.net_weight(e);
      if (pins.size() == 2) {
        // a two-pin gadget degenerates to a plain arc (s/t is always last)
        if (pins[1] == 0) {
          builder.add_plain(0, pins[0], cap, false);
        } else if (pins[1] == 1) {
          builder.add_plain(pins[0], 1, cap, false);
        } else {
          builder.add_plain(pins[0], pins[1], cap, true);
        }
        continue;
      }
      builder.add_gadget(std::move(pins), cap);
      continue;
    }

    // Nets touching blocks outside the pair.
    if (region_pins.size() == 1) {
      builder.add_boundary_arc(builder.build.region_nodes[region_pins[0] - 2], e);
      continue;
    }
    const bool v1_in = set.contains(v1);
    const bool v2_in = set.contains(v2);
    Weight bound;
    if (v1_in && v2_in) {
      if (has_source_pin && has_sink_pin) {
        continue; // both pair blocks pinned from outside: connectivity is fixed
      }
      bound = std::min(table.delta(set, set.without(v1).with(v2)),
                       table.delta(set, set.without(v2).with(v1))) *
              hg.net_weight(e);
    } else {
      bound = table.delta(set, set.with(v1).with(v2)) * hg.net_weight(e);
    }
    if (bound <= 0) {
      if (bound < 0) {
        builder.build.clamped.push_back({e, bound});
      }
      continue; // capacity clamps to zero, net drops out of the prediction
    }
    std::vector<std::uint32_t> pins = region_pins;
    if (has_source_pin) {
      pins.push_back(0);
    }
    if (has_sink_pin) {
      pins.push_back(1);
    }
    builder.add_gadget(std::move(pins), bound);
  }
  return builder.finish();
}

namespace {

struct CandidateOutcome {
  std::vector<std::pair<NodeID, BlockID>> moves;
  Weight measured = 0;
  Weight clamped_actual = 0;
  bool balanced = false;
};

CandidateOutcome evaluate_candidate(Mapping &mapping, const NetworkBuild &built,
                                    const std::vector<bool> &on_source_side, const BlockID v1,
                                    const BlockID v2) {
  CandidateOutcome outcome;
  for (std::size_t i = 0; i < built.region_nodes.size(); ++i) {
    const NodeID node = built.region_nodes[i];
    const BlockID target = on_source_side[i + 2] ? v1 : v2;
    if (mapping.block_of(node) != target) {
      outcome.moves.push_back({node, target});
    }
  }
  if (outcome.moves.empty()) {
    return outcome;
  }

  const Hypergraph &hg = mapping.hypergraph();
  std::vector<Weight> clamped_before;
  clamped_before.reserve(built.clamped.size());
  for (const auto &c : built.clamped) {
    clamped_before.push_back(mapping.steiner().distance(mapping.connectivity_set(c.net)));
  }

  std::vector<std::pair<NodeID, BlockID>> rollback;
  rollback.reserve(outcome.moves.size());
  for (const auto &[node, target] : outcome.moves) {
    rollback.push_back({node, mapping.block_of(node)});
    outcome.measured += mapping.apply_move(node, target).attributed_gain;
  }
  outcome.balanced = mapping.is_balanced();
  for (std::size_t i = 0; i < built.clamped.size(); ++i) {
    const NetID e = built.clamped[i].net;
    const Weight after = mapping.steiner().distance(mapping.connectivity_set(e));
    outcome.clamped_actual += (clamped_before[i] - after) * hg.net_weight(e);
  }
  for (std::size_t i = rollback.size(); i > 0; --i) {
    mapping.apply_move(rollback[i - 1].first, rollback[i - 1].second);
  }
  return outcome;
}

} // namespace

FlowPairResult flow_refine_pair(Mapping &mapping, const BlockID v1, const BlockID v2,
                                const FlowConfig &config) {
  FlowPairResult result;
  const Region region = grow_region(mapping, v1, v2, config.region_scale);
  if (region.empty()) {
    return result;
  }

  NetworkBuild built = is_plain_graph(mapping.hypergraph())
                           ? build_graph_network(mapping, v1, v2, region)
                           : build_hypergraph_network(mapping, v1, v2, region);
  const Weight flow_value = built.network.max_flow(built.source, built.sink);
  result.predicted = built.baseline_cut - flow_value;

  const std::vector<bool> source_cut = built.network.source_side(built.source);
  const std::vector<bool> sink_cut = built.network.sink_side(built.sink);

  CandidateOutcome best;
  bool have_best = false;
  for (const auto *candidate : {&source_cut, &sink_cut}) {
    CandidateOutcome outcome = evaluate_candidate(mapping, built, *candidate, v1, v2);
    if (outcome.moves.empty() || !outcome.balanced || outcome.measured <= 0) {
      continue;
    }
    if (!have_best || outcome.measured > best.measured) {
      best = std::move(outcome);
      have_best = true;
    }
  }
  if (!have_best) {
    return result;
  }

  Weight reapplied = 0;
  for (const auto &[node, target] : best.moves) {
    reapplied += mapping.apply_move(node, target).attributed_gain;
  }
  assert(reapplied == best.measured);
  result.accepted = true;
  result.measured = reapplied;
  result.measured_excluding_clamped = reapplied - best.clamped_actual;
  return result;
}

Weight flow_refine(Mapping &mapping, const FlowConfig &config,
                   std::vector<FlowPairResult> *log) {
  const Hypergraph &hg = mapping.hypergraph();
  const BlockID k = mapping.num_blocks();
  Weight total = 0;

  bool improved = true;
  while (improved) {
    improved = false;
    // adjacent pairs under the current assignment, in lexicographic order
    std::vector<bool> adjacent(static_cast<std::size_t>(k) * k, false);
    for (NetID e = 0; e < hg.num_nets(); ++e) {
      const auto blocks = mapping.connectivity_set(e).to_vector();
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        for (std::size_t j = i + 1; j < blocks.size(); ++j) {
          adjacent[static_cast<std::size_t>(blocks[i]) * k + blocks[j]] = true;
        }
      }
    }
    for (BlockID a = 0; a < k; ++a) {
      for (BlockID b = a + 1; b < k; ++b) {
        if (!adjacent[static_cast<std::size_t>(a) * k + b]) {
          continue;
        }
        // the pair may have lost its cut nets to earlier moves in this sweep
        bool still_adjacent = false;
        for (NetID e = 0; e < hg.num_nets() && !still_adjacent; ++e) {
          still_adjacent = mapping.pin_count(e, a) > 0 && mapping.pin_count(e, b) > 0;
        }
        if (!still_adjacent) {
          continue;
        }
        const FlowPairResult result = flow_refine_pair(mapping, a, b, config);
        if (log) {
          log->push_back(result);
        }
        if (result.accepted) {
          total += result.measured;
          improved = true;
        }
      }
    }
  }
  return total;
}

} // namespace steinermap

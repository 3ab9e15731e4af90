#include "steinermap/initial_mapping.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "steinermap/errors.hpp"
#include "steinermap/gain_table.hpp"
#include "steinermap/refine_fm.hpp"
#include "steinermap/refine_lp.hpp"

namespace steinermap {

namespace {

// Random balanced assignment: nodes in decreasing weight order (seeded
// shuffle breaks ties) go to the lightest feasible block.
std::vector<BlockID> random_balanced_assignment(const Hypergraph &hg, const BlockID k,
                                                const Weight limit, Lcg64 &rng) {
  std::vector<NodeID> order(hg.num_nodes());
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  std::stable_sort(order.begin(), order.end(), [&](const NodeID a, const NodeID b) {
    return hg.node_weight(a) > hg.node_weight(b);
  });

  std::vector<BlockID> assignment(hg.num_nodes(), kInvalidBlock);
  std::vector<Weight> weights(k, 0);
  for (const NodeID u : order) {
    BlockID lightest = 0;
    for (BlockID b = 1; b < k; ++b) {
      if (weights[b] < weights[lightest]) {
        lightest = b;
      }
    }
    if (weights[lightest] + hg.node_weight(u) > limit) {
      return {}; // this draw cannot be packed
    }
    assignment[u] = lightest;
    weights[lightest] += hg.node_weight(u);
  }
  return assignment;
}

} // namespace

std::vector<BlockID> initial_kway_partition(const Hypergraph &hg, const BlockID k,
                                            const double epsilon, const int reps,
                                            const std::uint64_t seed) {
  const Weight limit = compute_max_block_weight(hg.total_node_weight(), k, epsilon);
  for (NodeID u = 0; u < hg.num_nodes(); ++u) {
    if (hg.node_weight(u) > limit) {
      fail(ErrorCode::infeasible_balance, "a node is heavier than the block weight limit");
    }
  }

  // Complete unit-weight target: dist(Lambda) = lambda - 1, so the Steiner
  // machinery optimizes the connectivity metric exactly.
  std::vector<TargetEdge> edges;
  for (BlockID a = 0; a < k; ++a) {
    for (BlockID b = a + 1; b < k; ++b) {
      edges.push_back({a, b, 1});
    }
  }
  const TargetGraph complete(k, std::move(edges));
  const SteinerTable table(complete, 2);

  std::vector<BlockID> best;
  Weight best_metric = 0;
  for (int rep = 0; rep < reps; ++rep) {
    Lcg64 rng(mix_seed(seed, 0x9a01, static_cast<std::uint64_t>(rep)));
    std::vector<BlockID> assignment = random_balanced_assignment(hg, k, limit, rng);
    if (assignment.empty()) {
      continue;
    }
    Mapping mapping(hg, complete, table, epsilon, std::move(assignment));
    LpConfig lp{5, mix_seed(seed, 0x9a02, static_cast<std::uint64_t>(rep)), true};
    lp_refine(mapping, lp);
    GainTable gains(mapping);
    FmConfig fm{10, 25, mix_seed(seed, 0x9a03, static_cast<std::uint64_t>(rep)), true};
    fm_refine(mapping, gains, fm);

    const Weight metric =
        evaluate_connectivity_metric(hg, k, mapping.assignment());
    if (best.empty() || metric < best_metric) {
      best.assign(mapping.assignment().begin(), mapping.assignment().end());
      best_metric = metric;
    }
  }
  if (best.empty()) {
    fail(ErrorCode::infeasible_balance, "no balanced assignment found");
  }
  return best;
}

std::vector<BlockID> greedy_opmp(const Hypergraph &instance, const TargetGraph &target,
                                 const SteinerTable &table, const NodeID seed_node) {
  const BlockID k = target.num_blocks();
  const NodeID n = instance.num_nodes();

  BlockID seed_block = 0;
  for (BlockID b = 1; b < k; ++b) {
    if (target.weighted_degree(b) < target.weighted_degree(seed_block)) {
      seed_block = b;
    }
  }

  std::vector<BlockID> assignment(n, kInvalidBlock);
  std::vector<bool> block_taken(k, false);
  // connectivity of each net towards the already assigned part
  std::vector<BlockSet> partial(instance.num_nets(), BlockSet(k));
  std::vector<Weight> rating(n, 0);
  std::vector<bool> net_touched(instance.num_nets(), false);

  using Entry = std::pair<Weight, NodeID>;
  const auto cmp = [](const Entry &a, const Entry &b) {
    if (a.first != b.first) {
      return a.first < b.first;
    }
    return a.second > b.second; // smaller node id wins ties
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> queue(cmp);

  const auto assign = [&](const NodeID u, const BlockID block) {
    assignment[u] = block;
    block_taken[block] = true;
    for (const NetID e : instance.incident_nets(u)) {
      partial[e].add(block);
      if (!net_touched[e]) {
        net_touched[e] = true;
        for (const NodeID v : instance.pins(e)) {
          if (assignment[v] == kInvalidBlock) {
            rating[v] += instance.net_weight(e);
            queue.push({rating[v], v});
          }
        }
      }
    }
  };

  assign(seed_node, seed_block);

  while (!queue.empty()) {
    const auto [key, u] = queue.top();
    queue.pop();
    if (assignment[u] != kInvalidBlock || key != rating[u]) {
      continue; // already placed or stale entry
    }
    // free block with the highest gain, i.e. the least added tree weight
    BlockID best_block = kInvalidBlock;
    Weight best_cost = 0;
    for (BlockID b = 0; b < k; ++b) {
      if (block_taken[b]) {
        continue;
      }
      Weight cost = 0;
      for (const NetID e : instance.incident_nets(u)) {
        if (!partial[e].empty()) {
          cost += table.delta(partial[e].with(b), partial[e]) * instance.net_weight(e);
        }
      }
      if (best_block == kInvalidBlock || cost < best_cost) {
        best_block = b;
        best_cost = cost;
      }
    }
    assign(u, best_block);
  }

  // nodes with no nets into the mapped part: round-robin over free blocks
  BlockID next_free = 0;
  for (NodeID u = 0; u < n; ++u) {
    if (assignment[u] != kInvalidBlock) {
      continue;
    }
    while (block_taken[next_free]) {
      ++next_free;
    }
    assignment[u] = next_free;
    block_taken[next_free] = true;
  }
  return assignment;
}

namespace {

// Exchange gain on a one-to-one mapping, evaluated directly: every pin is a
// distinct block, so a net containing both nodes keeps its connectivity set
// and a net containing exactly one of them swaps that block for the other.
Weight swap_gain(const Mapping &mapping, const NodeID u, const NodeID v) {
  const Hypergraph &hg = mapping.hypergraph();
  const SteinerTable &table = mapping.steiner();
  const BlockID bu = mapping.block_of(u);
  const BlockID bv = mapping.block_of(v);
  Weight gain = 0;
  for (const NetID e : hg.incident_nets(u)) {
    const BlockSet &set = mapping.connectivity_set(e);
    if (set.contains(bv)) {
      continue; // v is a pin too; the swap leaves Lambda unchanged
    }
    gain += (mapping.net_distance(e) - table.distance(set.without(bu).with(bv))) *
            hg.net_weight(e);
  }
  for (const NetID e : hg.incident_nets(v)) {
    const BlockSet &set = mapping.connectivity_set(e);
    if (set.contains(bu)) {
      continue;
    }
    gain += (mapping.net_distance(e) - table.distance(set.without(bv).with(bu))) *
            hg.net_weight(e);
  }
  return gain;
}

void apply_swap(Mapping &mapping, const NodeID u, const NodeID v) {
  const BlockID bu = mapping.block_of(u);
  const BlockID bv = mapping.block_of(v);
  mapping.apply_move(u, bv);
  mapping.apply_move(v, bu);
}

} // namespace

Weight kl_refine(Mapping &mapping, const int max_passes) {
  const NodeID n = mapping.hypergraph().num_nodes();
  if (n != mapping.num_blocks()) {
    throw std::invalid_argument("kl_refine expects a one-to-one mapping");
  }
  Weight total = 0;

  struct PairEntry {
    Weight gain;
    NodeID u;
    NodeID v;

    bool operator<(const PairEntry &other) const {
      if (gain != other.gain) {
        return gain < other.gain;
      }
      if (u != other.u) {
        return u > other.u;
      }
      return v > other.v;
    }
  };

  for (int pass = 0; pass < max_passes; ++pass) {
    std::priority_queue<PairEntry> queue;
    for (NodeID u = 0; u < n; ++u) {
      for (NodeID v = u + 1; v < n; ++v) {
        queue.push({swap_gain(mapping, u, v), u, v});
      }
    }

    std::vector<bool> moved(n, false);
    std::vector<std::pair<NodeID, NodeID>> sequence;
    Weight cumulative = 0;
    Weight best_cumulative = 0;
    std::size_t best_length = 0;

    while (!queue.empty()) {
      const PairEntry top = queue.top();
      queue.pop();
      if (moved[top.u] || moved[top.v]) {
        continue;
      }
      const Weight fresh = swap_gain(mapping, top.u, top.v);
      if (fresh != top.gain) {
        queue.push({fresh, top.u, top.v}); // lazy update
        continue;
      }
      apply_swap(mapping, top.u, top.v);
      moved[top.u] = moved[top.v] = true;
      sequence.push_back({top.u, top.v});
      cumulative += fresh;
      if (cumulative > best_cumulative) {
        best_cumulative = cumulative;
        best_length = sequence.size();
      }
    }

    for (std::size_t i = sequence.size(); i > best_length; --i) {
      apply_swap(mapping, sequence[i - 1].first, sequence[i - 1].second);
    }
    total += best_cumulative;
    if (best_cumulative == 0) {
      break;
    }
  }
  return total;
}

Mapping initial_mapping(const Hypergraph &hg, const TargetGraph &target,
                        const SteinerTable &table, const InitialMappingConfig &config) {
  const BlockID k = target.num_blocks();
  if (hg.num_nodes() < k) {
    fail(ErrorCode::infeasible_balance, "fewer nodes than target graph nodes");
  }
  const std::vector<BlockID> partition = initial_kway_partition(
      hg, k, config.epsilon, config.partition_reps, mix_seed(config.seed, 0xaa01));

  ContractionMap blocks{partition, k};
  const Hypergraph instance = contract(hg, blocks);

  std::vector<NodeID> seeds(instance.num_nodes());
  std::iota(seeds.begin(), seeds.end(), 0);
  Lcg64 rng(mix_seed(config.seed, 0xaa02));
  rng.shuffle(seeds);
  const std::size_t reps =
      std::min<std::size_t>(seeds.size(), static_cast<std::size_t>(config.greedy_seed_cap));

  std::vector<BlockID> best_opmp;
  Weight best_objective = 0;
  for (std::size_t rep = 0; rep < reps; ++rep) {
    std::vector<BlockID> opmp = greedy_opmp(instance, target, table, seeds[rep]);
    Mapping inst_mapping(instance, target, table, config.epsilon, std::move(opmp));
    kl_refine(inst_mapping, config.kl_max_passes);
    const Weight objective = inst_mapping.steiner_objective();
    if (best_opmp.empty() || objective < best_objective) {
      best_opmp.assign(inst_mapping.assignment().begin(), inst_mapping.assignment().end());
      best_objective = objective;
    }
  }

  std::vector<BlockID> assignment(hg.num_nodes());
  for (NodeID u = 0; u < hg.num_nodes(); ++u) {
    assignment[u] = best_opmp[partition[u]];
  }
  return Mapping(hg, target, table, config.epsilon, std::move(assignment));
}

} // namespace steinermap

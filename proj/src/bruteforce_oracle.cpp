#include "steinermap/bruteforce_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "steinermap/errors.hpp"

namespace steinermap::oracle {

namespace {

// Local all-pairs shortest distances (Floyd-Warshall), independent of the
// production Dijkstra-based table.
std::vector<Weight> floyd_warshall(const TargetGraph &target) {
  const BlockID k = target.num_blocks();
  constexpr Weight kFar = std::numeric_limits<Weight>::max() / 4;
  std::vector<Weight> dist(static_cast<std::size_t>(k) * k, kFar);
  for (BlockID u = 0; u < k; ++u) {
    dist[u * k + u] = 0;
  }
  for (const TargetEdge &e : target.edges()) {
    dist[e.u * k + e.v] = std::min(dist[e.u * k + e.v], e.weight);
    dist[e.v * k + e.u] = std::min(dist[e.v * k + e.u], e.weight);
  }
  for (BlockID via = 0; via < k; ++via) {
    for (BlockID a = 0; a < k; ++a) {
      for (BlockID b = 0; b < k; ++b) {
        dist[a * k + b] = std::min(dist[a * k + b], dist[a * k + via] + dist[via * k + b]);
      }
    }
  }
  return dist;
}

Weight mst_weight(const std::vector<BlockID> &nodes, const std::vector<Weight> &dist,
                  const BlockID k) {
  const std::size_t count = nodes.size();
  std::vector<Weight> best(count, std::numeric_limits<Weight>::max());
  std::vector<bool> done(count, false);
  best[0] = 0;
  Weight total = 0;
  for (std::size_t step = 0; step < count; ++step) {
    std::size_t u = count;
    for (std::size_t i = 0; i < count; ++i) {
      if (!done[i] && (u == count || best[i] < best[u])) {
        u = i;
      }
    }
    done[u] = true;
    total += best[u];
    for (std::size_t i = 0; i < count; ++i) {
      if (!done[i]) {
        best[i] = std::min(best[i], dist[nodes[u] * k + nodes[i]]);
      }
    }
  }
  return total;
}

Weight steiner_from_dist(const std::vector<Weight> &dist, const BlockID k,
                         const std::uint32_t terminal_mask) {
  if (terminal_mask == 0 || (terminal_mask & (terminal_mask - 1)) == 0) {
    return 0; // empty or singleton
  }
  // Min over all supersets of the terminals of the metric-completion MST:
  // the optimum, since the optimal tree's branch points form such a superset
  // and an MST over them costs no more than the tree.
  const std::uint32_t full = (std::uint32_t(1) << k) - 1;
  const std::uint32_t free_nodes = full & ~terminal_mask;
  Weight best = std::numeric_limits<Weight>::max();
  std::uint32_t extra = 0;
  while (true) {
    std::vector<BlockID> nodes;
    const std::uint32_t mask = terminal_mask | extra;
    for (BlockID b = 0; b < k; ++b) {
      if (mask & (std::uint32_t(1) << b)) {
        nodes.push_back(b);
      }
    }
    best = std::min(best, mst_weight(nodes, dist, k));
    if (extra == free_nodes) {
      break;
    }
    extra = (extra - free_nodes) & free_nodes; // next subset of the free nodes
  }
  return best;
}

} // namespace

Weight brute_force_steiner(const TargetGraph &target, const std::vector<BlockID> &terminals) {
  const BlockID k = target.num_blocks();
  if (k > 12) {
    fail(ErrorCode::too_large, "brute-force Steiner oracle is limited to 12 target nodes");
  }
  const std::vector<Weight> dist = floyd_warshall(target);
  std::uint32_t mask = 0;
  for (const BlockID t : terminals) {
    mask |= std::uint32_t(1) << t;
  }
  return steiner_from_dist(dist, k, mask);
}

OptimalMapping brute_force_mapping(const Hypergraph &hg, const TargetGraph &target,
                                   const double epsilon) {
  const BlockID k = target.num_blocks();
  const NodeID n = hg.num_nodes();
  double combos = 1;
  for (NodeID i = 0; i < n; ++i) {
    combos *= k;
    if (combos > 1e7) {
      fail(ErrorCode::too_large, "exhaustive mapping enumeration bound exceeded");
    }
  }
  if (k > 12) {
    fail(ErrorCode::too_large, "brute-force mapping oracle is limited to 12 target nodes");
  }

  const std::vector<Weight> dist = floyd_warshall(target);
  // dist(Lambda) for every block subset, indexed by bitmask
  std::vector<Weight> steiner(std::size_t(1) << k, 0);
  for (std::uint32_t mask = 1; mask < steiner.size(); ++mask) {
    steiner[mask] = steiner_from_dist(dist, k, mask);
  }

  Weight total_weight = 0;
  for (NodeID u = 0; u < n; ++u) {
    total_weight += hg.node_weight(u);
  }
  const Weight perfect = (total_weight + k - 1) / k;
  const Weight limit =
      static_cast<Weight>(std::floor((1.0 + epsilon) * static_cast<double>(perfect) + 1e-9));

  OptimalMapping best;
  Weight best_value = std::numeric_limits<Weight>::max();
  std::vector<BlockID> assignment(n, 0);
  std::vector<Weight> block_weights(k, 0);

  const auto evaluate = [&]() {
    Weight value = 0;
    for (NetID e = 0; e < hg.num_nets(); ++e) {
      std::uint32_t mask = 0;
      for (const NodeID pin : hg.pins(e)) {
        mask |= std::uint32_t(1) << assignment[pin];
      }
      value += steiner[mask] * hg.net_weight(e);
      if (value >= best_value) {
        return;
      }
    }
    best_value = value;
    best.assignment = assignment;
    best.objective = value;
  };

  const auto recurse = [&](auto &&self, const NodeID u) -> void {
    if (u == n) {
      evaluate();
      return;
    }
    for (BlockID b = 0; b < k; ++b) {
      if (block_weights[b] + hg.node_weight(u) > limit) {
        continue;
      }
      assignment[u] = b;
      block_weights[b] += hg.node_weight(u);
      self(self, u + 1);
      block_weights[b] -= hg.node_weight(u);
    }
  };
  recurse(recurse, 0);

  if (best.assignment.empty()) {
    fail(ErrorCode::infeasible_balance, "no balanced mapping exists");
  }
  return best;
}

Weight independent_objective(const Hypergraph &hg, const TargetGraph &target,
                             std::span<const BlockID> assignment, const int exact_limit) {
  const BlockID k = target.num_blocks();
  const std::vector<Weight> dist = floyd_warshall(target);
  Weight total = 0;
  for (NetID e = 0; e < hg.num_nets(); ++e) {
    std::vector<BlockID> blocks;
    for (const NodeID pin : hg.pins(e)) {
      if (std::find(blocks.begin(), blocks.end(), assignment[pin]) == blocks.end()) {
        blocks.push_back(assignment[pin]);
      }
    }
    std::sort(blocks.begin(), blocks.end());
    if (blocks.size() < 2) {
      continue;
    }
    Weight tree;
    if (blocks.size() == 2) {
      tree = dist[blocks[0] * k + blocks[1]];
    } else if (blocks.size() <= static_cast<std::size_t>(exact_limit)) {
      if (k > 12) {
        fail(ErrorCode::too_large, "exact recomputation needs at most 12 target nodes");
      }
      std::uint32_t mask = 0;
      for (const BlockID b : blocks) {
        mask |= std::uint32_t(1) << b;
      }
      tree = steiner_from_dist(dist, k, mask);
    } else {
      tree = mst_weight(blocks, dist, k); // same 2-approximation policy
    }
    total += tree * hg.net_weight(e);
  }
  return total;
}

} // namespace steinermap::oracle

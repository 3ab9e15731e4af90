#include "steinermap/refine_fm.hpp"

#include <algorithm>
#include <queue>

namespace steinermap {

namespace {

struct PqEntry {
  Weight gain;
  NodeID node;
  BlockID target;

  bool operator<(const PqEntry &other) const {
    if (gain != other.gain) {
      return gain < other.gain;
    }
    if (node != other.node) {
      return node > other.node; // smaller node id wins ties
    }
    return target > other.target;
  }
};

struct AppliedMove {
  NodeID node;
  BlockID from;
  Weight attributed;
};

// Windowed stopping rule: abandon a localized search after this many moves
// without a new best prefix.
std::size_t stop_window(const NodeID n) {
  return std::min<std::size_t>(350, std::max<std::size_t>(25, n / 100));
}

} // namespace

Weight fm_refine(Mapping &mapping, GainTable &gain_table, const FmConfig &config) {
  const Hypergraph &hg = mapping.hypergraph();
  const NodeID n = hg.num_nodes();
  const std::size_t window = stop_window(n);
  Weight total_improvement = 0;

  std::vector<bool> moved(n);
  for (int round = 0; round < config.max_rounds; ++round) {
    std::vector<NodeID> task_queue;
    for (NodeID u = 0; u < n; ++u) {
      if (mapping.is_boundary(u)) {
        task_queue.push_back(u);
      }
    }
    Lcg64 rng(mix_seed(config.seed, 0xf31, static_cast<std::uint64_t>(round)));
    rng.shuffle(task_queue);

    std::fill(moved.begin(), moved.end(), false);
    Weight round_improvement = 0;
    std::size_t round_moves = 0;
    std::size_t next_seed = 0;

    while (next_seed < task_queue.size()) {
      std::priority_queue<PqEntry> pq;
      for (int polled = 0; polled < config.seed_batch && next_seed < task_queue.size();
           ++polled, ++next_seed) {
        const NodeID seed = task_queue[next_seed];
        if (moved[seed]) {
          continue;
        }
        const auto move = gain_table.best_feasible(seed, mapping, config.forbid_empty_source);
        if (move.valid) {
          pq.push({move.gain, seed, move.target});
        }
      }

      std::vector<AppliedMove> sequence;
      Weight cumulative = 0;
      Weight best_cumulative = 0;
      std::size_t best_length = 0;
      std::size_t since_best = 0;

      while (!pq.empty()) {
        const PqEntry top = pq.top();
        pq.pop();
        if (moved[top.node]) {
          continue;
        }
        const auto move = gain_table.best_feasible(top.node, mapping, config.forbid_empty_source);
        if (!move.valid) {
          continue;
        }
        if (move.gain != top.gain || move.target != top.target) {
          pq.push({move.gain, top.node, move.target}); // stale entry, re-offer
          continue;
        }

        const BlockID from = mapping.block_of(top.node);
        const MoveResult result = gain_table.apply_and_update(mapping, top.node, top.target);
        moved[top.node] = true;
        sequence.push_back({top.node, from, result.attributed_gain});
        cumulative += result.attributed_gain;
        if (cumulative > best_cumulative) {
          best_cumulative = cumulative;
          best_length = sequence.size();
          since_best = 0;
        } else if (++since_best >= window) {
          break;
        }

        for (const NetID e : hg.incident_nets(top.node)) {
          for (const NodeID v : hg.pins(e)) {
            if (moved[v]) {
              continue;
            }
            const auto neighbor = gain_table.best_feasible(v, mapping, config.forbid_empty_source);
            if (neighbor.valid) {
              pq.push({neighbor.gain, v, neighbor.target});
            }
          }
        }
      }

      // Keep the best prefix, roll the rest back (rolled-back nodes stay
      // consumed for this round).
      for (std::size_t i = sequence.size(); i > best_length; --i) {
        const AppliedMove &m = sequence[i - 1];
        gain_table.apply_and_update(mapping, m.node, m.from);
      }
      round_improvement += best_cumulative;
      round_moves += sequence.size();
    }

    total_improvement += round_improvement;
    if (round_improvement == 0) {
      break;
    }
    // Patching pays off only while few rows changed; after a busy round a
    // wholesale invalidation is cheaper than further bookkeeping.
    if (round_moves > n / 2) {
      gain_table.invalidate_all();
    }
  }
  return total_improvement;
}

} // namespace steinermap

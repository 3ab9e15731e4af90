#include "steinermap/steiner_table.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

#include "steinermap/errors.hpp"

namespace steinermap {

namespace {

// Number of subsets of [k] with size in [1, max_size], saturating.
std::uint64_t count_subsets(const std::uint64_t k, const int max_size) {
  std::uint64_t total = 0;
  std::uint64_t binom = 1;
  for (int i = 1; i <= max_size; ++i) {
    binom = binom * (k - static_cast<std::uint64_t>(i) + 1) / static_cast<std::uint64_t>(i);
    if (binom > (std::uint64_t(1) << 60) || total > (std::uint64_t(1) << 60)) {
      return std::uint64_t(1) << 60;
    }
    total += binom;
  }
  return total;
}

// Enumerates all size-`size` subsets of [0, k) in lexicographic order.
template <typename F> void for_each_combination(const BlockID k, const int size, F &&f) {
  std::vector<BlockID> members(size);
  for (int i = 0; i < size; ++i) {
    members[i] = static_cast<BlockID>(i);
  }
  if (size == 0 || static_cast<BlockID>(size) > k) {
    return;
  }
  while (true) {
    f(members);
    int i = size - 1;
    while (i >= 0 && members[i] == k - static_cast<BlockID>(size - i)) {
      --i;
    }
    if (i < 0) {
      break;
    }
    ++members[i];
    for (int j = i + 1; j < size; ++j) {
      members[j] = members[j - 1] + 1;
    }
  }
}

BlockSet to_block_set(const std::vector<BlockID> &members, const BlockID width) {
  BlockSet set(width);
  for (const BlockID b : members) {
    set.add(b);
  }
  return set;
}

} // namespace

SteinerTable::SteinerTable(const TargetGraph &target, const int size_limit,
                           const std::uint64_t memory_budget_cells)
    : target_(&target), size_limit_(size_limit) {
  if (size_limit_ < 2) {
    throw std::invalid_argument("steiner size limit must be at least 2");
  }
  const BlockID k = target.num_blocks();
  size_limit_ = std::min<int>(size_limit_, static_cast<int>(k));
  const int t = size_limit_;

  unit_complete_ = true;
  for (BlockID a = 0; a < k && unit_complete_; ++a) {
    for (BlockID b = a + 1; b < k; ++b) {
      if (target.distance(a, b) != 1) {
        unit_complete_ = false;
        break;
      }
    }
  }

  const std::uint64_t dp_cells = count_subsets(k, t - 1) * k;
  const std::uint64_t table_cells = count_subsets(k, t);
  if (dp_cells + table_cells > memory_budget_cells) {
    fail(ErrorCode::size_limit_too_large,
         "steiner subset table exceeds the memory budget for this size limit");
  }

  // Dreyfus-Wagner dynamic program over terminal subsets T with |T| < t and
  // an auxiliary root v: dp[T][v] is the optimal tree weight for T + {v}.
  // The exact table entry for a set S with |S| <= t is dp[S - {v}][v].
  std::unordered_map<BlockSet, std::vector<Weight>, BlockSetHash> dp;

  exact_.reserve(static_cast<std::size_t>(table_cells));
  for (BlockID b = 0; b < k; ++b) {
    BlockSet single(k);
    single.add(b);
    exact_.emplace(single, 0);
    std::vector<Weight> row(k);
    for (BlockID v = 0; v < k; ++v) {
      row[v] = target.distance(b, v);
    }
    dp.emplace(std::move(single), std::move(row));
  }

  std::vector<Weight> merged(k);
  for (int size = 2; size <= t; ++size) {
    for_each_combination(k, size, [&](const std::vector<BlockID> &members) {
      const BlockSet set = to_block_set(members, k);

      // merged[w] = min over proper splits (T', T - T') of dp[T'][w] + dp[T - T'][w]
      std::fill(merged.begin(), merged.end(), std::numeric_limits<Weight>::max());
      const std::uint32_t full = (std::uint32_t(1) << size) - 1;
      for (std::uint32_t split = 1; split < full; ++split) {
        if ((split & 1u) == 0) {
          continue; // fix the lowest member on one side to halve the work
        }
        BlockSet part_a(k);
        BlockSet part_b(k);
        for (int i = 0; i < size; ++i) {
          if (split & (std::uint32_t(1) << i)) {
            part_a.add(members[i]);
          } else {
            part_b.add(members[i]);
          }
        }
        const std::vector<Weight> &row_a = dp.at(part_a);
        const std::vector<Weight> &row_b = dp.at(part_b);
        for (BlockID w = 0; w < k; ++w) {
          if (row_a[w] != std::numeric_limits<Weight>::max() &&
              row_b[w] != std::numeric_limits<Weight>::max()) {
            merged[w] = std::min(merged[w], row_a[w] + row_b[w]);
          }
        }
      }

      std::vector<Weight> row(k, std::numeric_limits<Weight>::max());
      for (BlockID v = 0; v < k; ++v) {
        for (BlockID w = 0; w < k; ++w) {
          if (merged[w] != std::numeric_limits<Weight>::max()) {
            row[v] = std::min(row[v], target.distance(v, w) + merged[w]);
          }
        }
      }

      exact_.emplace(set, row[members.front()]);
      if (size < t) {
        dp.emplace(set, std::move(row));
      }
    });
  }
}

Weight SteinerTable::distance(const BlockSet &set) const {
  const int cardinality = set.size();
  if (cardinality <= 1) {
    ++stats_.exact;
    return 0;
  }
  if (cardinality <= size_limit_) {
    ++stats_.exact;
    return exact_.at(set);
  }
  if (unit_complete_) {
    ++stats_.exact;
    return cardinality - 1;
  }
  if (const auto it = mst_cache_.find(set); it != mst_cache_.end()) {
    ++stats_.cache_hits;
    return it->second;
  }
  ++stats_.cache_misses;
  const Weight approx = mst_over(set);
  mst_cache_.emplace(set, approx);
  return approx;
}

// Prim's algorithm on the metric completion restricted to the set: the
// classic 2-approximation of the minimal Steiner tree.
Weight SteinerTable::mst_over(const BlockSet &set) const {
  const std::vector<BlockID> members = set.to_vector();
  const std::size_t count = members.size();
  std::vector<Weight> best(count, std::numeric_limits<Weight>::max());
  std::vector<bool> in_tree(count, false);
  best[0] = 0;
  Weight total = 0;
  for (std::size_t step = 0; step < count; ++step) {
    std::size_t next = count;
    for (std::size_t i = 0; i < count; ++i) {
      if (!in_tree[i] && (next == count || best[i] < best[next])) {
        next = i;
      }
    }
    in_tree[next] = true;
    total += best[next];
    for (std::size_t i = 0; i < count; ++i) {
      if (!in_tree[i]) {
        best[i] = std::min(best[i], target_->distance(members[next], members[i]));
      }
    }
  }
  return total;
}

} // namespace steinermap

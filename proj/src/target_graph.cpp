#include "steinermap/target_graph.hpp"

#include <limits>
#include <queue>
#include <stdexcept>

#include "steinermap/errors.hpp"

namespace steinermap {

TargetGraph::TargetGraph(const BlockID num_blocks, std::vector<TargetEdge> edges)
    : num_blocks_(num_blocks), edges_(std::move(edges)) {
  if (num_blocks_ == 0) {
    throw std::invalid_argument("target graph needs at least one node");
  }

  std::vector<std::vector<std::pair<BlockID, Weight>>> adj(num_blocks_);
  weighted_degree_.assign(num_blocks_, 0);
  for (const TargetEdge &e : edges_) {
    if (e.u >= num_blocks_ || e.v >= num_blocks_ || e.u == e.v) {
      throw std::invalid_argument("invalid target edge endpoints");
    }
    if (e.weight <= 0) {
      throw std::invalid_argument("target edge weights must be positive");
    }
    adj[e.u].emplace_back(e.v, e.weight);
    adj[e.v].emplace_back(e.u, e.weight);
    weighted_degree_[e.u] += e.weight;
    weighted_degree_[e.v] += e.weight;
  }

  // Exact shortest paths by one Dijkstra run per target node; k is small.
  constexpr Weight kUnreached = std::numeric_limits<Weight>::max();
  dist_.assign(static_cast<std::size_t>(num_blocks_) * num_blocks_, kUnreached);
  using QueueEntry = std::pair<Weight, BlockID>;
  for (BlockID source = 0; source < num_blocks_; ++source) {
    Weight *row = dist_.data() + static_cast<std::size_t>(source) * num_blocks_;
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>> queue;
    row[source] = 0;
    queue.emplace(0, source);
    while (!queue.empty()) {
      const auto [d, u] = queue.top();
      queue.pop();
      if (d > row[u]) {
        continue;
      }
      for (const auto &[v, w] : adj[u]) {
        if (row[u] + w < row[v]) {
          row[v] = row[u] + w;
          queue.emplace(row[v], v);
        }
      }
    }
    for (BlockID v = 0; v < num_blocks_; ++v) {
      if (row[v] == kUnreached) {
        fail(ErrorCode::disconnected_target, "target graph is disconnected");
      }
    }
  }
}

} // namespace steinermap

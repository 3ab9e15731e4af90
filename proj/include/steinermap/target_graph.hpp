/*******************************************************************************
 * Weighted target graph with precomputed all-pairs shortest distances.
 ******************************************************************************/
#pragma once

#include <span>
#include <tuple>
#include <vector>

#include "steinermap/types.hpp"

namespace steinermap {

struct TargetEdge {
  BlockID u;
  BlockID v;
  Weight weight;
};

class TargetGraph {
public:
  // Throws Error(disconnected_target) if the graph is not connected and
  // std::invalid_argument on nonpositive weights or out-of-range endpoints.
  TargetGraph(BlockID num_blocks, std::vector<TargetEdge> edges);

  BlockID num_blocks() const { return num_blocks_; }

  Weight distance(BlockID a, BlockID b) const { return dist_[a * num_blocks_ + b]; }

  std::span<const TargetEdge> edges() const { return edges_; }

  // Sum of incident edge weights; the greedy mapper seeds at the minimum.
  Weight weighted_degree(BlockID b) const { return weighted_degree_[b]; }

  std::span<const Weight> distance_row(BlockID a) const {
    return {dist_.data() + a * num_blocks_, num_blocks_};
  }

private:
  BlockID num_blocks_;
  std::vector<TargetEdge> edges_;
  std::vector<Weight> dist_;
  std::vector<Weight> weighted_degree_;
};

} // namespace steinermap

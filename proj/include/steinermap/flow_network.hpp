/*******************************************************************************
 * Directed capacitated flow network with Dinic max-flow (BFS level graph +
 * blocking-flow DFS) and residual-reachability cut extraction.
 ******************************************************************************/
#pragma once

#include <cstdint>
#include <vector>

#include "steinermap/types.hpp"

namespace steinermap {

class FlowNetwork {
public:
  struct Arc {
    std::uint32_t to;
    std::uint32_t reverse; // index of the paired arc in adj_[to]
    Weight capacity;       // residual capacity
    Weight original;
  };

  FlowNetwork() = default;
  explicit FlowNetwork(std::uint32_t num_nodes) : adj_(num_nodes) {}

  std::uint32_t num_nodes() const { return static_cast<std::uint32_t>(adj_.size()); }

  // Adds the arc from->to and its residual partner to->from.
  void add_arc(std::uint32_t from, std::uint32_t to, Weight capacity, Weight reverse_capacity = 0);

  Weight max_flow(std::uint32_t source, std::uint32_t sink);

  // Nodes reachable from the source in the residual graph (the source-side
  // minimal min cut). Valid after max_flow.
  std::vector<bool> source_side(std::uint32_t source) const;
  // Complement of the nodes that can still reach the sink (the sink-side
  // minimal min cut, expressed as "true = source side").
  std::vector<bool> sink_side(std::uint32_t sink) const;

  // Total original capacity of arcs leaving the given source side; equals the
  // max flow for any minimum cut (self-check in tests).
  Weight cut_capacity(const std::vector<bool> &on_source_side) const;

  const std::vector<Arc> &arcs(std::uint32_t node) const { return adj_[node]; }

private:
  bool build_levels(std::uint32_t source, std::uint32_t sink);
  Weight push_flow(std::uint32_t node, std::uint32_t sink, Weight limit);

  std::vector<std::vector<Arc>> adj_;
  std::vector<int> level_;
  std::vector<std::uint32_t> next_arc_;
};

} // namespace steinermap

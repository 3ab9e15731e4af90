/*******************************************************************************
 * Pairwise flow-based refinement: grows a region around the cut of a block
 * pair, builds a Steiner-aware flow network (graph model for plain graphs,
 * Lawler-expanded hypergraph model otherwise), and applies the min-cut
 * reassignment when it improves the metric and keeps balance.
 ******************************************************************************/
#pragma once

#include <vector>

#include "steinermap/flow_network.hpp"
#include "steinermap/mapping.hpp"
#include "steinermap/types.hpp"

namespace steinermap {

struct FlowConfig {
  double region_scale = 1.0; // alpha: scales the balance-derived region caps
};

struct Region {
  std::vector<NodeID> nodes;       // side1 nodes first, then side2 nodes
  std::vector<NodeID> side1;
  std::vector<NodeID> side2;

  bool empty() const { return nodes.empty(); }
};

// Alternating breadth-first growth from the pair's cut-net pins, bounded per
// side by c(B_i) <= alpha * L_max - (c(V_other) - c(B_other)) so that any
// reassignment of B keeps the pair balance-recoverable. A positive side_cap
// additionally bounds each side's weight directly. Throws
// Error(empty_region) when the pair has no cut net.
Region grow_region(const Mapping &mapping, BlockID v1, BlockID v2, double alpha,
                   Weight side_cap = 0);

struct NetworkBuild {
  FlowNetwork network;
  std::uint32_t source = 0;
  std::uint32_t sink = 1;
  std::vector<NodeID> region_nodes; // network id of region_nodes[i] is i + 2
  Weight baseline_cut = 0;          // cut-net metric of the current assignment

  // Nets whose single-capacity lower bound was negative and clamped to zero;
  // they are excluded from the improvement prediction.
  struct ClampedNet {
    NetID net;
    Weight bound; // unclamped lower bound on the net's improvement, <= 0
  };
  std::vector<ClampedNet> clamped;
};

// Requires every net of the instance to have exactly two pins.
NetworkBuild build_graph_network(const Mapping &mapping, BlockID v1, BlockID v2,
                                 const Region &region);
NetworkBuild build_hypergraph_network(const Mapping &mapping, BlockID v1, BlockID v2,
                                      const Region &region);

struct FlowPairResult {
  bool accepted = false;
  Weight measured = 0;  // attributed objective improvement of the reassignment
  Weight predicted = 0; // baseline cut minus max-flow value on the network
  // measured minus the contributions of clamped nets; this is the quantity
  // the cut-metric prediction lower-bounds.
  Weight measured_excluding_clamped = 0;
};

// Attempts one flow refinement on the given adjacent block pair.
FlowPairResult flow_refine_pair(Mapping &mapping, BlockID v1, BlockID v2,
                                const FlowConfig &config);

// Round-robin over adjacent block pairs until a full sweep accepts nothing.
// Returns the total measured improvement; optionally logs per-pair results.
Weight flow_refine(Mapping &mapping, const FlowConfig &config,
                   std::vector<FlowPairResult> *log = nullptr);

} // namespace steinermap

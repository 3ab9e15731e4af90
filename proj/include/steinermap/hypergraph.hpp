/*******************************************************************************
 * Static weighted hypergraph in flat incidence form (net -> pins and
 * node -> nets with offset tables), plus cluster contraction.
 ******************************************************************************/
#pragma once

#include <span>
#include <vector>

#include "steinermap/types.hpp"

namespace steinermap {

class Hypergraph {
public:
  Hypergraph(NodeID num_nodes, std::vector<std::vector<NodeID>> nets,
             std::vector<Weight> net_weights, std::vector<Weight> node_weights);

  NodeID num_nodes() const { return num_nodes_; }
  NetID num_nets() const { return static_cast<NetID>(net_offsets_.size() - 1); }
  std::size_t num_pins() const { return pins_.size(); }

  Weight node_weight(NodeID u) const { return node_weights_[u]; }
  Weight net_weight(NetID e) const { return net_weights_[e]; }
  Weight total_node_weight() const { return total_node_weight_; }

  std::span<const NodeID> pins(NetID e) const {
    return {pins_.data() + net_offsets_[e], net_offsets_[e + 1] - net_offsets_[e]};
  }

  std::span<const NetID> incident_nets(NodeID u) const {
    return {incident_nets_.data() + node_offsets_[u], node_offsets_[u + 1] - node_offsets_[u]};
  }

  NodeID net_size(NetID e) const {
    return static_cast<NodeID>(net_offsets_[e + 1] - net_offsets_[e]);
  }

  NodeID degree(NodeID u) const {
    return static_cast<NodeID>(node_offsets_[u + 1] - node_offsets_[u]);
  }

private:
  NodeID num_nodes_ = 0;
  Weight total_node_weight_ = 0;
  std::vector<Weight> node_weights_;
  std::vector<Weight> net_weights_;
  std::vector<std::size_t> net_offsets_;
  std::vector<NodeID> pins_;
  std::vector<std::size_t> node_offsets_;
  std::vector<NetID> incident_nets_;
};

// Surjective node -> cluster assignment with dense cluster ids [0, n').
struct ContractionMap {
  std::vector<NodeID> cluster_of;
  NodeID num_clusters = 0;

  // Throws std::invalid_argument if the map is not valid for n nodes.
  void validate(NodeID num_nodes) const;
};

// Contracts each cluster to one supernode: pin lists are deduplicated,
// single-pin nets dropped, identical nets merged with summed weights.
Hypergraph contract(const Hypergraph &hg, const ContractionMap &map);

} // namespace steinermap

/*******************************************************************************
 * Multilevel hierarchy: repeated heavy-edge clustering and contraction until
 * the hypergraph is small enough.
 ******************************************************************************/
#pragma once

#include <vector>

#include "steinermap/hypergraph.hpp"
#include "steinermap/types.hpp"

namespace steinermap {

struct ClusteringConfig {
  double max_cluster_weight = 0; // no merge may push a cluster beyond this
  std::uint64_t seed = 0;
};

// Heavy-edge rating of node u towards the clusters of its neighbors:
// r(u, C) = sum over shared nets e of omega(e) / (|e| - 1). Returns
// (cluster id, rating) pairs in first-encounter order; u's own cluster is
// excluded. Exposed separately so the rating formula is directly testable.
std::vector<std::pair<NodeID, double>> cluster_ratings(const Hypergraph &hg,
                                                       const std::vector<NodeID> &cluster_of,
                                                       NodeID u);

// One clustering pass: nodes visited in seeded random order, each joining the
// cluster with the highest rating (ties to the smaller cluster id) subject to
// the weight cap. Nodes without a positively rated cluster stay singletons.
ContractionMap compute_clustering(const Hypergraph &hg, const ClusteringConfig &config);

class Hierarchy {
public:
  Hierarchy(const Hypergraph &input) : input_(&input) {}

  std::size_t num_levels() const { return coarse_.size() + 1; }
  const Hypergraph &level(std::size_t i) const { return i == 0 ? *input_ : coarse_[i - 1]; }
  const Hypergraph &coarsest() const { return level(num_levels() - 1); }
  // Map from level i to level i + 1.
  const ContractionMap &map(std::size_t i) const { return maps_[i]; }

  void push(Hypergraph hg, ContractionMap map) {
    coarse_.push_back(std::move(hg));
    maps_.push_back(std::move(map));
  }

private:
  const Hypergraph *input_;
  std::vector<Hypergraph> coarse_;
  std::vector<ContractionMap> maps_;
};

struct CoarseningConfig {
  NodeID contraction_limit = 0;
  double max_cluster_weight = 0;
  std::uint64_t seed = 0;
  double min_shrink_factor = 0.01; // stall guard: stop below 1% shrinkage
};

Hierarchy coarsen(const Hypergraph &input, const CoarseningConfig &config);

} // namespace steinermap

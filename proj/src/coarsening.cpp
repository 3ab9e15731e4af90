#include "steinermap/coarsening.hpp"

#include <algorithm>
#include <numeric>

namespace steinermap {

std::vector<std::pair<NodeID, double>> cluster_ratings(const Hypergraph &hg,
                                                       const std::vector<NodeID> &cluster_of,
                                                       const NodeID u) {
  std::vector<std::pair<NodeID, double>> ratings;
  std::vector<NodeID> touched; // clusters rated by the current net
  for (const NetID e : hg.incident_nets(u)) {
    if (hg.net_size(e) < 2) {
      continue;
    }
    const double score = static_cast<double>(hg.net_weight(e)) / (hg.net_size(e) - 1);
    touched.clear();
    for (const NodeID pin : hg.pins(e)) {
      const NodeID c = cluster_of[pin];
      if (c == cluster_of[u]) {
        continue;
      }
      // each net contributes once per distinct cluster it touches
      if (std::find(touched.begin(), touched.end(), c) != touched.end()) {
        continue;
      }
      touched.push_back(c);
      auto it = std::find_if(ratings.begin(), ratings.end(),
                             [c](const auto &entry) { return entry.first == c; });
      if (it == ratings.end()) {
        ratings.emplace_back(c, score);
      } else {
        it->second += score;
      }
    }
  }
  return ratings;
}

ContractionMap compute_clustering(const Hypergraph &hg, const ClusteringConfig &config) {
  const NodeID n = hg.num_nodes();
  std::vector<NodeID> cluster_of(n);
  std::iota(cluster_of.begin(), cluster_of.end(), 0);
  std::vector<Weight> cluster_weight(n);
  std::vector<NodeID> cluster_size(n, 1);
  for (NodeID u = 0; u < n; ++u) {
    cluster_weight[u] = hg.node_weight(u);
  }

  std::vector<NodeID> order(n);
  std::iota(order.begin(), order.end(), 0);
  Lcg64 rng(config.seed);
  rng.shuffle(order);

  for (const NodeID u : order) {
    if (cluster_size[cluster_of[u]] > 1) {
      continue; // already absorbed someone; keep clusters stable within a pass
    }
    const auto ratings = cluster_ratings(hg, cluster_of, u);
    NodeID best_cluster = kInvalidNode;
    double best_score = 0.0;
    for (const auto &[cluster, score] : ratings) {
      if (cluster_weight[cluster] + hg.node_weight(u) >
          static_cast<Weight>(config.max_cluster_weight)) {
        continue;
      }
      if (score > best_score ||
          (score == best_score && best_cluster != kInvalidNode && cluster < best_cluster)) {
        best_score = score;
        best_cluster = cluster;
      }
    }
    if (best_cluster != kInvalidNode && best_score > 0.0) {
      cluster_weight[cluster_of[u]] -= hg.node_weight(u);
      --cluster_size[cluster_of[u]];
      cluster_of[u] = best_cluster;
      cluster_weight[best_cluster] += hg.node_weight(u);
      ++cluster_size[best_cluster];
    }
  }

  // Compress cluster ids to a dense range in order of first appearance.
  ContractionMap map;
  map.cluster_of.assign(n, kInvalidNode);
  std::vector<NodeID> remap(n, kInvalidNode);
  NodeID next_id = 0;
  for (NodeID u = 0; u < n; ++u) {
    const NodeID c = cluster_of[u];
    if (remap[c] == kInvalidNode) {
      remap[c] = next_id++;
    }
    map.cluster_of[u] = remap[c];
  }
  map.num_clusters = next_id;
  return map;
}

Hierarchy coarsen(const Hypergraph &input, const CoarseningConfig &config) {
  Hierarchy hierarchy(input);
  std::uint64_t pass = 0;
  while (hierarchy.coarsest().num_nodes() > config.contraction_limit) {
    const Hypergraph &current = hierarchy.coarsest();
    ClusteringConfig clustering{config.max_cluster_weight, mix_seed(config.seed, 0xc0a5, pass)};
    ContractionMap map = compute_clustering(current, clustering);
    if (map.num_clusters >
        static_cast<NodeID>((1.0 - config.min_shrink_factor) * current.num_nodes())) {
      break; // stall guard
    }
    Hypergraph next = contract(current, map);
    hierarchy.push(std::move(next), std::move(map));
    ++pass;
  }
  return hierarchy;
}

} // namespace steinermap

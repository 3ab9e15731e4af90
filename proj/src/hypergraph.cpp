#include "steinermap/hypergraph.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace steinermap {

Hypergraph::Hypergraph(const NodeID num_nodes, std::vector<std::vector<NodeID>> nets,
                       std::vector<Weight> net_weights, std::vector<Weight> node_weights)
    : num_nodes_(num_nodes),
      node_weights_(std::move(node_weights)),
      net_weights_(std::move(net_weights)) {
  if (node_weights_.size() != num_nodes_) {
    throw std::invalid_argument("node weight count does not match node count");
  }
  if (net_weights_.size() != nets.size()) {
    throw std::invalid_argument("net weight count does not match net count");
  }
  for (const Weight w : node_weights_) {
    if (w <= 0) {
      throw std::invalid_argument("node weights must be positive");
    }
    total_node_weight_ += w;
  }
  for (const Weight w : net_weights_) {
    if (w <= 0) {
      throw std::invalid_argument("net weights must be positive");
    }
  }

  net_offsets_.reserve(nets.size() + 1);
  net_offsets_.push_back(0);
  std::size_t num_pins = 0;
  for (const auto &net : nets) {
    if (net.empty()) {
      throw std::invalid_argument("nets must be nonempty");
    }
    num_pins += net.size();
    net_offsets_.push_back(num_pins);
  }

  pins_.reserve(num_pins);
  std::vector<std::size_t> degrees(num_nodes_, 0);
  std::vector<NetID> last_net(num_nodes_, kInvalidNode);
  for (NetID e = 0; e < nets.size(); ++e) {
    for (const NodeID pin : nets[e]) {
      if (pin >= num_nodes_) {
        throw std::invalid_argument("pin index out of range");
      }
      if (last_net[pin] == e) {
        throw std::invalid_argument("duplicate pin within a net");
      }
      last_net[pin] = e;
      pins_.push_back(pin);
      ++degrees[pin];
    }
  }

  node_offsets_.assign(num_nodes_ + 1, 0);
  for (NodeID u = 0; u < num_nodes_; ++u) {
    node_offsets_[u + 1] = node_offsets_[u] + degrees[u];
  }
  incident_nets_.resize(num_pins);
  std::vector<std::size_t> cursor(node_offsets_.begin(), node_offsets_.end() - 1);
  for (NetID e = 0; e < nets.size(); ++e) {
    for (const NodeID pin : nets[e]) {
      incident_nets_[cursor[pin]++] = e;
    }
  }
}

void ContractionMap::validate(const NodeID num_nodes) const {
  if (cluster_of.size() != num_nodes) {
    throw std::invalid_argument("contraction map does not cover all nodes");
  }
  std::vector<bool> seen(num_clusters, false);
  for (const NodeID c : cluster_of) {
    if (c >= num_clusters) {
      throw std::invalid_argument("cluster id out of range");
    }
    seen[c] = true;
  }
  for (const bool hit : seen) {
    if (!hit) {
      throw std::invalid_argument("cluster ids must be dense");
    }
  }
}

namespace {

struct PinListHash {
  std::size_t operator()(const std::vector<NodeID> &pins) const {
    std::uint64_t h = 0x811c9dc5ULL;
    for (const NodeID p : pins) {
      h = (h ^ p) * 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

} // namespace

Hypergraph contract(const Hypergraph &hg, const ContractionMap &map) {
  map.validate(hg.num_nodes());

  std::vector<Weight> node_weights(map.num_clusters, 0);
  for (NodeID u = 0; u < hg.num_nodes(); ++u) {
    node_weights[map.cluster_of[u]] += hg.node_weight(u);
  }

  // Identical contracted nets are detected by hashing their sorted pin lists;
  // output order follows first occurrence to keep the result deterministic.
  std::unordered_map<std::vector<NodeID>, std::size_t, PinListHash> net_index;
  std::vector<std::vector<NodeID>> nets;
  std::vector<Weight> net_weights;

  std::vector<NodeID> scratch;
  for (NetID e = 0; e < hg.num_nets(); ++e) {
    scratch.clear();
    for (const NodeID pin : hg.pins(e)) {
      scratch.push_back(map.cluster_of[pin]);
    }
    std::sort(scratch.begin(), scratch.end());
    scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    if (scratch.size() < 2) {
      continue;
    }
    auto [it, inserted] = net_index.try_emplace(scratch, nets.size());
    if (inserted) {
      nets.push_back(scratch);
      net_weights.push_back(hg.net_weight(e));
    } else {
      net_weights[it->second] += hg.net_weight(e);
    }
  }

  return Hypergraph(map.num_clusters, std::move(nets), std::move(net_weights),
                    std::move(node_weights));
}

} // namespace steinermap

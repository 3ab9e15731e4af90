#include "steinermap/flow_network.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace steinermap {

void FlowNetwork::add_arc(const std::uint32_t from, const std::uint32_t to, const Weight capacity,
                          const Weight reverse_capacity) {
  adj_[from].push_back({to, static_cast<std::uint32_t>(adj_[to].size()), capacity, capacity});
  adj_[to].push_back(
      {from, static_cast<std::uint32_t>(adj_[from].size()) - 1, reverse_capacity, reverse_capacity});
}

bool FlowNetwork::build_levels(const std::uint32_t source, const std::uint32_t sink) {
  level_.assign(num_nodes(), -1);
  std::queue<std::uint32_t> queue;
  level_[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    const std::uint32_t u = queue.front();
    queue.pop();
    for (const Arc &arc : adj_[u]) {
      if (arc.capacity > 0 && level_[arc.to] < 0) {
        level_[arc.to] = level_[u] + 1;
        queue.push(arc.to);
      }
    }
  }
  return level_[sink] >= 0;
}

Weight FlowNetwork::push_flow(const std::uint32_t node, const std::uint32_t sink,
                              const Weight limit) {
  if (node == sink || limit == 0) {
    return limit;
  }
  for (std::uint32_t &i = next_arc_[node]; i < adj_[node].size(); ++i) {
    Arc &arc = adj_[node][i];
    if (arc.capacity > 0 && level_[arc.to] == level_[node] + 1) {
      const Weight pushed = push_flow(arc.to, sink, std::min(limit, arc.capacity));
      if (pushed > 0) {
        arc.capacity -= pushed;
        adj_[arc.to][arc.reverse].capacity += pushed;
        return pushed;
      }
    }
  }
  return 0;
}

Weight FlowNetwork::max_flow(const std::uint32_t source, const std::uint32_t sink) {
  Weight flow = 0;
  while (build_levels(source, sink)) {
    next_arc_.assign(num_nodes(), 0);
    while (const Weight pushed = push_flow(source, sink, std::numeric_limits<Weight>::max())) {
      flow += pushed;
    }
  }
  return flow;
}

std::vector<bool> FlowNetwork::source_side(const std::uint32_t source) const {
  std::vector<bool> reachable(num_nodes(), false);
  std::queue<std::uint32_t> queue;
  reachable[source] = true;
  queue.push(source);
  while (!queue.empty()) {
    const std::uint32_t u = queue.front();
    queue.pop();
    for (const Arc &arc : adj_[u]) {
      if (arc.capacity > 0 && !reachable[arc.to]) {
        reachable[arc.to] = true;
        queue.push(arc.to);
      }
    }
  }
  return reachable;
}

std::vector<bool> FlowNetwork::sink_side(const std::uint32_t sink) const {
  // Walk residual arcs backwards: v reaches the sink iff some arc v->w with
  // residual capacity leads to a sink-reaching w. The paired arc of (w -> v)
  // is exactly (v -> w), so scanning adj_[w] suffices.
  std::vector<bool> reaches_sink(num_nodes(), false);
  std::queue<std::uint32_t> queue;
  reaches_sink[sink] = true;
  queue.push(sink);
  while (!queue.empty()) {
    const std::uint32_t w = queue.front();
    queue.pop();
    for (const Arc &arc : adj_[w]) {
      const Arc &paired = adj_[arc.to][arc.reverse];
      if (paired.capacity > 0 && !reaches_sink[arc.to]) {
        reaches_sink[arc.to] = true;
        queue.push(arc.to);
      }
    }
  }
  std::vector<bool> on_source_side(num_nodes());
  for (std::uint32_t v = 0; v < num_nodes(); ++v) {
    on_source_side[v] = !reaches_sink[v];
  }
  return on_source_side;
}

Weight FlowNetwork::cut_capacity(const std::vector<bool> &on_source_side) const {
  Weight total = 0;
  for (std::uint32_t u = 0; u < num_nodes(); ++u) {
    if (!on_source_side[u]) {
      continue;
    }
    for (const Arc &arc : adj_[u]) {
      if (!on_source_side[arc.to]) {
        total += arc.original;
      }
    }
  }
  return total;
}

} // namespace steinermap

#include "doctest.h"

#include <algorithm>

#include "steinermap/errors.hpp"
#include "steinermap/hypergraph.hpp"
#include "steinermap/mapping.hpp"
#include "steinermap/steiner_table.hpp"
#include "steinermap/target_graph.hpp"
#include "test_support.hpp"

using namespace steinermap;
using namespace steinermap::testing;

namespace {

Hypergraph h1() {
  // V = {0,1,2,3}, e0 = {0,1}, e1 = {1,2,3}, e2 = {0,2}, unit weights
  return Hypergraph(4, {{0, 1}, {1, 2, 3}, {0, 2}}, {1, 1, 1}, {1, 1, 1, 1});
}

} // namespace

TEST_CASE("hypergraph incidence is mutually consistent") {
  Lcg64 rng(7);
  const Hypergraph hg = random_hypergraph(30, 50, rng, 5);
  std::size_t pin_sum = 0;
  for (NetID e = 0; e < hg.num_nets(); ++e) {
    pin_sum += hg.net_size(e);
    for (const NodeID u : hg.pins(e)) {
      const auto nets = hg.incident_nets(u);
      CHECK(std::find(nets.begin(), nets.end(), e) != nets.end());
    }
  }
  CHECK(pin_sum == hg.num_pins());
  std::size_t degree_sum = 0;
  for (NodeID u = 0; u < hg.num_nodes(); ++u) {
    degree_sum += hg.degree(u);
    for (const NetID e : hg.incident_nets(u)) {
      const auto pins = hg.pins(e);
      CHECK(std::find(pins.begin(), pins.end(), u) != pins.end());
    }
  }
  CHECK(degree_sum == hg.num_pins());
}

TEST_CASE("hypergraph constructor validates input") {
  CHECK_THROWS_AS(Hypergraph(2, {{0, 5}}, {1}, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Hypergraph(2, {{}}, {1}, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Hypergraph(2, {{0, 1}}, {0}, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Hypergraph(2, {{0, 1}}, {1}, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Hypergraph(2, {{0, 0}}, {1}, {1, 1}), std::invalid_argument);
}

TEST_CASE("contract merges duplicate nets and drops single-pin nets") {
  const Hypergraph hg = h1();
  const ContractionMap map{{0, 0, 1, 1}, 2};
  const Hypergraph contracted = contract(hg, map);

  CHECK(contracted.num_nodes() == 2);
  CHECK(contracted.node_weight(0) == 2);
  CHECK(contracted.node_weight(1) == 2);
  // e0 collapses to a single pin and disappears; e1 and e2 merge into one
  // two-pin net of weight 2
  REQUIRE(contracted.num_nets() == 1);
  CHECK(contracted.net_weight(0) == 2);
  const auto pins = contracted.pins(0);
  CHECK(std::vector<NodeID>(pins.begin(), pins.end()) == std::vector<NodeID>{0, 1});
}

TEST_CASE("contract with the identity map preserves the structure") {
  const Hypergraph hg = h1();
  const ContractionMap map{{0, 1, 2, 3}, 4};
  const Hypergraph contracted = contract(hg, map);
  CHECK(contracted.num_nodes() == hg.num_nodes());
  CHECK(contracted.num_nets() == hg.num_nets());
  CHECK(contracted.num_pins() == hg.num_pins());
  CHECK(contracted.total_node_weight() == hg.total_node_weight());
}

TEST_CASE("contracting everything leaves one node and no nets") {
  const Hypergraph hg = h1();
  const ContractionMap map{{0, 0, 0, 0}, 1};
  const Hypergraph contracted = contract(hg, map);
  CHECK(contracted.num_nodes() == 1);
  CHECK(contracted.num_nets() == 0);
  CHECK(contracted.node_weight(0) == 4);
}

TEST_CASE("contraction preserves total node weight") {
  Lcg64 rng(21);
  for (int round = 0; round < 10; ++round) {
    const Hypergraph hg = random_hypergraph(20, 30, rng, 4, 3, 5);
    ContractionMap map;
    map.num_clusters = static_cast<NodeID>(rng.uniform(1, 10));
    map.cluster_of.resize(20);
    for (NodeID u = 0; u < 20; ++u) {
      map.cluster_of[u] = u < map.num_clusters
                              ? u
                              : static_cast<NodeID>(rng.uniform(0, map.num_clusters - 1));
    }
    const Hypergraph contracted = contract(hg, map);
    CHECK(contracted.total_node_weight() == hg.total_node_weight());
  }
}

TEST_CASE("shortest path distances on fixtures") {
  const TargetGraph p3 = path3();
  CHECK(p3.distance(0, 2) == 3);
  CHECK(p3.distance(2, 0) == 3);
  CHECK(p3.distance(1, 1) == 0);

  const TargetGraph complete(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}});
  for (BlockID a = 0; a < 4; ++a) {
    for (BlockID b = 0; b < 4; ++b) {
      CHECK(complete.distance(a, b) == (a == b ? 0 : 1));
    }
  }

  // 2x2 grid, weights top 1, right 2, bottom 3, left 4; the cheap corner
  // route goes over the top-right node
  const TargetGraph grid(4, {{0, 1, 1}, {1, 3, 2}, {2, 3, 3}, {0, 2, 4}});
  CHECK(grid.distance(0, 3) == 3);
}

TEST_CASE("distance table is symmetric and satisfies the triangle inequality") {
  Lcg64 rng(3);
  for (int round = 0; round < 20; ++round) {
    const TargetGraph target = random_target(static_cast<BlockID>(rng.uniform(2, 8)), rng);
    const BlockID k = target.num_blocks();
    for (BlockID a = 0; a < k; ++a) {
      CHECK(target.distance(a, a) == 0);
      for (BlockID b = 0; b < k; ++b) {
        CHECK(target.distance(a, b) == target.distance(b, a));
        for (BlockID c = 0; c < k; ++c) {
          CHECK(target.distance(a, b) <= target.distance(a, c) + target.distance(c, b));
        }
      }
    }
  }
}

TEST_CASE("disconnected targets are rejected") {
  CHECK_THROWS_AS(TargetGraph(3, {{0, 1, 1}}), Error);
}

TEST_CASE("projection reproduces the coarse assignment") {
  const Hypergraph hg = h1();
  const ContractionMap map{{0, 0, 1, 1}, 2};
  const Hypergraph contracted = contract(hg, map);
  const TargetGraph target(2, {{0, 1, 5}});
  const SteinerTable table(target, 2);

  const Mapping coarse(contracted, target, table, 0.5, {0, 1});
  const Mapping fine = project(coarse, hg, map);
  CHECK(fine.block_of(0) == 0);
  CHECK(fine.block_of(1) == 0);
  CHECK(fine.block_of(2) == 1);
  CHECK(fine.block_of(3) == 1);
}

TEST_CASE("single-pin nets never contribute to the metric") {
  Lcg64 rng(37);
  const TargetGraph target = random_target(4, rng);
  const SteinerTable table(target, 3);
  const Hypergraph plain(4, {{0, 1}, {1, 2, 3}}, {2, 3}, {1, 1, 1, 1});
  const Hypergraph padded(4, {{0, 1}, {2}, {1, 2, 3}, {0}}, {2, 7, 3, 5}, {1, 1, 1, 1});
  for (int round = 0; round < 20; ++round) {
    std::vector<BlockID> assignment(4);
    for (auto &b : assignment) {
      b = static_cast<BlockID>(rng.uniform(0, 3));
    }
    CHECK(evaluate_steiner_metric(plain, target, table, assignment) ==
          evaluate_steiner_metric(padded, target, table, assignment));
  }
}

TEST_CASE("projection preserves the objective on random instances") {
  Lcg64 rng(11);
  for (int round = 0; round < 20; ++round) {
    const NodeID n = static_cast<NodeID>(rng.uniform(8, 24));
    const Hypergraph hg = random_hypergraph(n, 2 * n, rng, 4, 3, 2);
    const BlockID k = static_cast<BlockID>(rng.uniform(2, 5));
    const TargetGraph target = random_target(k, rng);
    const SteinerTable table(target, 3);

    ContractionMap map;
    map.num_clusters = static_cast<NodeID>(rng.uniform(k, n));
    map.cluster_of.resize(n);
    for (NodeID u = 0; u < n; ++u) {
      map.cluster_of[u] =
          u < map.num_clusters ? u : static_cast<NodeID>(rng.uniform(0, map.num_clusters - 1));
    }
    const Hypergraph contracted = contract(hg, map);

    std::vector<BlockID> coarse_assignment(contracted.num_nodes());
    for (NodeID c = 0; c < contracted.num_nodes(); ++c) {
      coarse_assignment[c] = static_cast<BlockID>(rng.uniform(0, k - 1));
    }
    const Mapping coarse(contracted, target, table, 1.0, coarse_assignment);
    const Mapping fine = project(coarse, hg, map);
    CHECK(fine.steiner_objective() == coarse.steiner_objective());
  }
}

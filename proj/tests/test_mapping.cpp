#include "doctest.h"

#include "steinermap/bruteforce_oracle.hpp"
#include "steinermap/errors.hpp"
#include "steinermap/mapping.hpp"
#include "test_support.hpp"

using namespace steinermap;
using namespace steinermap::testing;

namespace {

// Compares the maintained state against a freshly constructed mapping.
void check_state_consistency(const Mapping &mapping) {
  const Hypergraph &hg = mapping.hypergraph();
  const Mapping fresh(hg, mapping.target(), mapping.steiner(), mapping.epsilon(),
                      {mapping.assignment().begin(), mapping.assignment().end()});
  for (BlockID b = 0; b < mapping.num_blocks(); ++b) {
    CHECK(mapping.block_weight(b) == fresh.block_weight(b));
  }
  for (NetID e = 0; e < hg.num_nets(); ++e) {
    CHECK(mapping.connectivity_set(e) == fresh.connectivity_set(e));
    for (BlockID b = 0; b < mapping.num_blocks(); ++b) {
      CHECK(mapping.pin_count(e, b) == fresh.pin_count(e, b));
    }
  }
}

} // namespace

TEST_CASE("single net move gains and exact reversibility") {
  const Hypergraph hg(2, {{0, 1}}, {1}, {1, 1});
  const TargetGraph target(2, {{0, 1, 5}});
  const SteinerTable table(target, 2);
  Mapping mapping(hg, target, table, 1.0, {0, 1});

  CHECK(mapping.steiner_objective() == 5);
  const MoveResult join = mapping.apply_move(0, 1);
  CHECK(join.attributed_gain == 5);
  CHECK(mapping.steiner_objective() == 0);

  const MoveResult back = mapping.apply_move(0, 0);
  CHECK(back.attributed_gain == -5);
  CHECK(mapping.block_of(0) == 0);
  check_state_consistency(mapping);
}

TEST_CASE("attributed gains telescope over random walks") {
  Lcg64 rng(42);
  for (int round = 0; round < 5; ++round) {
    const Hypergraph hg = random_hypergraph(20, 30, rng, 4, 3, 2);
    const BlockID k = 4;
    const TargetGraph target = random_target(k, rng);
    const SteinerTable table(target, 3);
    Mapping mapping(hg, target, table, 1.0, random_balanced(hg, k, 1.0, rng));

    const Weight before = mapping.steiner_objective();
    Weight attributed_sum = 0;
    for (int move = 0; move < 100; ++move) {
      const NodeID u = static_cast<NodeID>(rng.uniform(0, 19));
      const BlockID t = static_cast<BlockID>(rng.uniform(0, k - 1));
      if (t == mapping.block_of(u)) {
        continue;
      }
      attributed_sum += mapping.apply_move(u, t).attributed_gain;
    }
    CHECK(before - attributed_sum == mapping.steiner_objective());
    check_state_consistency(mapping);
  }
}

TEST_CASE("auto revert restores the previous state") {
  const Hypergraph hg(2, {{0, 1}}, {1}, {1, 1});
  const TargetGraph target(2, {{0, 1, 5}});
  const SteinerTable table(target, 2);
  Mapping mapping(hg, target, table, 1.0, {0, 0});

  // separating the net worsens the objective; LP mode reverts
  const MoveResult result = mapping.apply_move(1, 1, /*revert_if_negative=*/true);
  CHECK(result.reverted);
  CHECK(result.attributed_gain == -5);
  CHECK(mapping.block_of(1) == 0);
  CHECK(mapping.steiner_objective() == 0);
  check_state_consistency(mapping);
}

TEST_CASE("invalid move target is rejected") {
  const Hypergraph hg(2, {{0, 1}}, {1}, {1, 1});
  const TargetGraph target(2, {{0, 1, 5}});
  const SteinerTable table(target, 2);
  Mapping mapping(hg, target, table, 1.0, {0, 1});
  CHECK_THROWS_AS(mapping.apply_move(0, 7), Error);
}

TEST_CASE("metric evaluators on fixtures") {
  // everything in one block
  const Hypergraph hg(3, {{0, 1, 2}}, {2}, {1, 1, 1});
  const TargetGraph p3 = path3();
  const SteinerTable table(p3, 3);
  CHECK(evaluate_steiner_metric(hg, p3, table, std::vector<BlockID>{0, 0, 0}) == 0);
  CHECK(evaluate_connectivity_metric(hg, 3, std::vector<BlockID>{0, 0, 0}) == 0);
  CHECK(evaluate_cut_metric(hg, 3, std::vector<BlockID>{0, 0, 0}) == 0);

  // net spread over the whole path: dist {0,1,2} = 3 times weight 2
  CHECK(evaluate_steiner_metric(hg, p3, table, std::vector<BlockID>{0, 1, 2}) == 6);
  // lambda = 3 with weight 2: connectivity 4, cut 2
  CHECK(evaluate_connectivity_metric(hg, 3, std::vector<BlockID>{0, 1, 2}) == 4);
  CHECK(evaluate_cut_metric(hg, 3, std::vector<BlockID>{0, 1, 2}) == 2);

  const Hypergraph pair(2, {{0, 1}}, {3}, {1, 1});
  CHECK(evaluate_connectivity_metric(pair, 3, std::vector<BlockID>{0, 1}) == 3);
  CHECK(evaluate_cut_metric(pair, 3, std::vector<BlockID>{0, 1}) == 3);
}

TEST_CASE("steiner metric equals connectivity on complete unit targets") {
  Lcg64 rng(17);
  for (int round = 0; round < 20; ++round) {
    const Hypergraph hg = random_hypergraph(16, 24, rng, 5, 3, 1);
    const BlockID k = 4;
    std::vector<TargetEdge> edges;
    for (BlockID a = 0; a < k; ++a) {
      for (BlockID b = a + 1; b < k; ++b) {
        edges.push_back({a, b, 1});
      }
    }
    const TargetGraph complete(k, std::move(edges));
    const SteinerTable table(complete, 4);
    std::vector<BlockID> assignment(16);
    for (auto &b : assignment) {
      b = static_cast<BlockID>(rng.uniform(0, k - 1));
    }
    CHECK(evaluate_steiner_metric(hg, complete, table, assignment) ==
          evaluate_connectivity_metric(hg, k, assignment));
  }
}

TEST_CASE("balance checks") {
  const Hypergraph hg(8, {{0, 1}}, {1}, {1, 1, 1, 1, 1, 1, 1, 1});
  const TargetGraph complete(
      4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}});
  const SteinerTable table(complete, 2);

  // n = 8, k = 4, epsilon = 0: a perfect split is balanced
  const Mapping perfect(hg, complete, table, 0.0, {0, 0, 1, 1, 2, 2, 3, 3});
  CHECK(perfect.is_balanced());
  CHECK(perfect.max_block_weight() == 2);

  const Mapping lop_sided(hg, complete, table, 0.0, {0, 0, 0, 0, 0, 0, 0, 0});
  CHECK(!lop_sided.is_balanced());

  Lcg64 rng(23);
  for (int round = 0; round < 20; ++round) {
    std::vector<BlockID> assignment(8);
    for (auto &b : assignment) {
      b = static_cast<BlockID>(rng.uniform(0, 3));
    }
    const Mapping mapping(hg, complete, table, 0.25, assignment);
    std::vector<Weight> weights(4, 0);
    for (NodeID u = 0; u < 8; ++u) {
      weights[assignment[u]] += hg.node_weight(u);
    }
    const bool expect =
        *std::max_element(weights.begin(), weights.end()) <= mapping.max_block_weight();
    CHECK(mapping.is_balanced() == expect);
  }
}

TEST_CASE("boundary nodes and adjacent blocks") {
  const Hypergraph hg(4, {{0, 1}, {1, 2}, {2, 3}}, {1, 1, 1}, {1, 1, 1, 1});
  const TargetGraph p3 = path3();
  const SteinerTable table(p3, 3);
  const Mapping mapping(hg, p3, table, 1.0, {0, 0, 1, 1});

  CHECK(!mapping.is_boundary(0));
  CHECK(mapping.is_boundary(1));
  CHECK(mapping.is_boundary(2));
  CHECK(!mapping.is_boundary(3));

  const BlockSet r1 = mapping.adjacent_blocks(1);
  CHECK(r1.contains(0));
  CHECK(r1.contains(1));
  CHECK(!r1.contains(2));
}

TEST_CASE("from-scratch objective matches the independent oracle") {
  Lcg64 rng(29);
  for (int round = 0; round < 50; ++round) {
    const BlockID k = static_cast<BlockID>(rng.uniform(2, 7));
    const Hypergraph hg = random_hypergraph(12, 20, rng, 5, 3, 2);
    const TargetGraph target = random_target(k, rng);
    const SteinerTable table(target, static_cast<int>(k)); // all sets exact
    std::vector<BlockID> assignment(12);
    for (auto &b : assignment) {
      b = static_cast<BlockID>(rng.uniform(0, k - 1));
    }
    CHECK(evaluate_steiner_metric(hg, target, table, assignment) ==
          oracle::independent_objective(hg, target, assignment, static_cast<int>(k)));
  }
}

TEST_CASE("sparse pin count storage behaves like the dense one") {
  PinCountStore dense(4, 3);
  PinCountStore sparse(4, 3, /*dense_limit=*/0);
  CHECK(dense.dense());
  CHECK(!sparse.dense());
  Lcg64 rng(8);
  std::vector<std::vector<std::int32_t>> reference(4, std::vector<std::int32_t>(3, 0));
  for (int step = 0; step < 200; ++step) {
    const NetID e = static_cast<NetID>(rng.uniform(0, 3));
    const BlockID b = static_cast<BlockID>(rng.uniform(0, 2));
    if (reference[e][b] > 0 && rng.uniform(0, 1) == 0) {
      --reference[e][b];
      CHECK(dense.decrement(e, b) == reference[e][b]);
      CHECK(sparse.decrement(e, b) == reference[e][b]);
    } else {
      ++reference[e][b];
      CHECK(dense.increment(e, b) == reference[e][b]);
      CHECK(sparse.increment(e, b) == reference[e][b]);
    }
    CHECK(dense.get(e, b) == sparse.get(e, b));
  }
}

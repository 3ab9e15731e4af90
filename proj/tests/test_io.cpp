#include "doctest.h"

#include "steinermap/errors.hpp"
#include "steinermap/io.hpp"

using namespace steinermap;

namespace {

bool fails_with(const ErrorCode code, const char *text, const bool hmetis = true) {
  try {
    if (hmetis) {
      parse_hmetis(text);
    } else {
      parse_target_graph(text);
    }
  } catch (const Error &e) {
    return e.code() == code;
  }
  return false;
}

} // namespace

TEST_CASE("hmetis basic format") {
  const Hypergraph hg = parse_hmetis("2 3\n1 2\n2 3\n");
  CHECK(hg.num_nodes() == 3);
  CHECK(hg.num_nets() == 2);
  const auto net0 = hg.pins(0);
  CHECK(std::vector<NodeID>(net0.begin(), net0.end()) == std::vector<NodeID>{0, 1});
  const auto net1 = hg.pins(1);
  CHECK(std::vector<NodeID>(net1.begin(), net1.end()) == std::vector<NodeID>{1, 2});
  CHECK(hg.net_weight(0) == 1);
  CHECK(hg.node_weight(0) == 1);
}

TEST_CASE("hmetis fmt=1 reads net weights") {
  const Hypergraph hg = parse_hmetis("2 3 1\n7 1 2\n2 2 3\n");
  CHECK(hg.net_weight(0) == 7);
  CHECK(hg.net_weight(1) == 2);
}

TEST_CASE("hmetis fmt=10 reads node weights") {
  const Hypergraph hg = parse_hmetis("1 3 10\n1 2 3\n4\n5\n6\n");
  CHECK(hg.node_weight(0) == 4);
  CHECK(hg.node_weight(2) == 6);
  CHECK(hg.net_weight(0) == 1);
}

TEST_CASE("hmetis fmt=11 reads both weight kinds") {
  const Hypergraph hg = parse_hmetis("1 2 11\n9 1 2\n4\n5\n");
  CHECK(hg.net_weight(0) == 9);
  CHECK(hg.node_weight(1) == 5);
}

TEST_CASE("hmetis comments and blank lines are skipped") {
  const Hypergraph hg = parse_hmetis("% comment\n2 3\n\n1 2\n% another\n2 3\n\n");
  CHECK(hg.num_nets() == 2);
}

TEST_CASE("hmetis error paths name the line") {
  CHECK(fails_with(ErrorCode::malformed_header, ""));
  CHECK(fails_with(ErrorCode::malformed_header, "2\n"));
  CHECK(fails_with(ErrorCode::malformed_header, "1 2 7\n1 2\n"));
  CHECK(fails_with(ErrorCode::pin_out_of_range, "1 2\n1 5\n"));
  CHECK(fails_with(ErrorCode::pin_out_of_range, "1 2\n0 1\n"));
  CHECK(fails_with(ErrorCode::empty_net, "2 3\n1 2\n"));
  try {
    parse_hmetis("2 3\n1 2\n2 9\n");
    CHECK(false);
  } catch (const Error &e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("target graph round trip and validation") {
  const TargetGraph p3 = parse_target_graph("3 2 001\n2 1\n1 1 3 2\n2 2\n");
  CHECK(p3.num_blocks() == 3);
  CHECK(p3.distance(0, 2) == 3);

  CHECK(fails_with(ErrorCode::asymmetric_edge, "2 1 001\n2 5\n1 3\n", false));
  CHECK(fails_with(ErrorCode::asymmetric_edge, "3 1 001\n2 1\n\n\n", false));
  CHECK(fails_with(ErrorCode::disconnected_target, "2 0 001\n\n\n", false));
  CHECK(fails_with(ErrorCode::malformed_header, "3 2\n2 1\n1 1 3 2\n2 2\n", false));
}

TEST_CASE("grid generator") {
  const TargetGraph grid = generate_grid(2, 2, 99);
  CHECK(grid.num_blocks() == 4);
  CHECK(grid.edges().size() == 4);

  const TargetGraph one = generate_grid(1, 1, 99);
  CHECK(one.num_blocks() == 1);
  CHECK(one.edges().empty());

  const TargetGraph again = generate_grid(2, 2, 99);
  REQUIRE(again.edges().size() == grid.edges().size());
  for (std::size_t i = 0; i < grid.edges().size(); ++i) {
    CHECK(grid.edges()[i].weight == again.edges()[i].weight);
  }
  for (const TargetEdge &e : grid.edges()) {
    CHECK(e.weight >= 1);
    CHECK(e.weight <= 10);
  }
}

TEST_CASE("hierarchy generator") {
  const TargetGraph hier = generate_hierarchy({4, 8, 1}, {1, 10, 100});
  CHECK(hier.num_blocks() == 32);
  // cores 0..3 share a processor
  CHECK(hier.distance(0, 3) == 1);
  CHECK(hier.distance(0, 4) == 10);
  for (BlockID a = 0; a < 32; ++a) {
    for (BlockID b = 0; b < 32; ++b) {
      CHECK(hier.distance(a, b) == hier.distance(b, a));
    }
  }

  const TargetGraph k2 = generate_hierarchy({2}, {7});
  CHECK(k2.num_blocks() == 2);
  CHECK(k2.distance(0, 1) == 7);
}

TEST_CASE("mapping round trip") {
  Lcg64 rng(5);
  for (int round = 0; round < 20; ++round) {
    const NodeID n = static_cast<NodeID>(rng.uniform(1, 50));
    const BlockID k = static_cast<BlockID>(rng.uniform(1, 16));
    std::vector<BlockID> assignment(n);
    for (NodeID u = 0; u < n; ++u) {
      assignment[u] = static_cast<BlockID>(rng.uniform(0, k - 1));
    }
    const std::vector<BlockID> parsed = parse_mapping(write_mapping(assignment), n, k);
    CHECK(parsed == assignment);
  }

  CHECK_THROWS_AS(parse_mapping("0\n1\n", 3, 2), Error);
  CHECK_THROWS_AS(parse_mapping("0\n5\n", 2, 2), Error);
}

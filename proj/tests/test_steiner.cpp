#include "doctest.h"

#include "steinermap/block_set.hpp"
#include "steinermap/bruteforce_oracle.hpp"
#include "steinermap/errors.hpp"
#include "steinermap/steiner_table.hpp"
#include "test_support.hpp"

using namespace steinermap;
using namespace steinermap::testing;

namespace {

BlockSet make_set(const BlockID width, const std::vector<BlockID> &members) {
  BlockSet set(width);
  for (const BlockID b : members) {
    set.add(b);
  }
  return set;
}

} // namespace

TEST_CASE("block set basics, one word and multi word") {
  for (const BlockID width : {8u, 70u, 130u}) {
    BlockSet set(width);
    CHECK(set.empty());
    set.add(0);
    set.add(width - 1);
    set.add(width / 2);
    CHECK(set.size() == 3);
    CHECK(set.contains(width - 1));
    CHECK(!set.contains(1));

    std::vector<BlockID> seen;
    set.for_each([&](BlockID b) { seen.push_back(b); });
    CHECK(seen == std::vector<BlockID>{0, width / 2, width - 1});
    CHECK(set.first() == 0);

    const BlockSet plus = set.with(1);
    CHECK(plus.size() == 4);
    CHECK(!set.contains(1)); // with() copies
    const BlockSet minus = plus.without(1);
    CHECK(minus == set);
    CHECK(minus.hash() == set.hash());
    CHECK(set.is_subset_of(plus));
    CHECK(!plus.is_subset_of(set));

    set.remove(width / 2);
    CHECK(set.size() == 2);
  }
}

TEST_CASE("exact table on the P3 fixture") {
  const TargetGraph p3 = path3();
  const SteinerTable table(p3, 3);
  CHECK(table.distance(make_set(3, {0})) == 0);
  CHECK(table.distance(make_set(3, {0, 1})) == 1);
  CHECK(table.distance(make_set(3, {1, 2})) == 2);
  CHECK(table.distance(make_set(3, {0, 2})) == 3);
  CHECK(table.distance(make_set(3, {0, 1, 2})) == 3);
}

TEST_CASE("unit 2x2 grid spanning tree") {
  const TargetGraph grid(4, {{0, 1, 1}, {0, 2, 1}, {1, 3, 1}, {2, 3, 1}});
  const SteinerTable table(grid, 4);
  CHECK(table.distance(make_set(4, {0, 1, 2, 3})) == 3);
  CHECK(oracle::brute_force_steiner(grid, {0, 1, 2, 3}) == 3);
}

TEST_CASE("star uses the center as a Steiner point") {
  // center 0, leaves 1..3 with edge weights 1, 2, 3
  const TargetGraph star(4, {{0, 1, 1}, {0, 2, 2}, {0, 3, 3}});
  const SteinerTable table(star, 3);
  CHECK(table.distance(make_set(4, {1, 2, 3})) == 6);
  CHECK(oracle::brute_force_steiner(star, {1, 2, 3}) == 6);
}

TEST_CASE("MST approximation on a unit path is exact") {
  const TargetGraph path(
      6, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 5, 1}});
  const SteinerTable table(path, 4);
  const BlockSet all = make_set(6, {0, 1, 2, 3, 4, 5});
  CHECK(all.size() > table.size_limit());
  CHECK(table.distance(all) == 5);
  CHECK(oracle::brute_force_steiner(path, {0, 1, 2, 3, 4, 5}) == 5);
}

TEST_CASE("delta dist") {
  const TargetGraph p3 = path3();
  const SteinerTable table(p3, 3);
  const BlockSet a = make_set(3, {0, 2});
  const BlockSet b = make_set(3, {0, 1});
  CHECK(table.delta(a, a) == 0);
  CHECK(table.delta(a, b) == 2);
  CHECK(table.delta(b, a) == -2);
  CHECK(table.delta(a, make_set(3, {})) == 3); // a net leaving all blocks
}

TEST_CASE("exactness against the brute force oracle on random targets") {
  Lcg64 rng(1234);
  for (int round = 0; round < 30; ++round) {
    const BlockID k = static_cast<BlockID>(rng.uniform(2, 7));
    const TargetGraph target = random_target(k, rng);
    const int t = static_cast<int>(rng.uniform(2, 4));
    const SteinerTable table(target, t);
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      std::vector<BlockID> members;
      BlockSet set(k);
      for (BlockID b = 0; b < k; ++b) {
        if (mask & (1u << b)) {
          members.push_back(b);
          set.add(b);
        }
      }
      const Weight opt = oracle::brute_force_steiner(target, members);
      const Weight value = table.distance(set);
      if (static_cast<int>(members.size()) <= table.size_limit()) {
        CHECK(value == opt);
      } else {
        CHECK(value >= opt);
        CHECK(value <= 2 * opt);
      }
    }
  }
}

TEST_CASE("monotonicity under subset extension") {
  // Exact weights are monotone under set extension, and an exact weight never
  // exceeds any superset's 2-approximation (which lower-bounds that
  // superset's optimum). Two approximated values need not be monotone: the
  // added block can act as a hub that shortens the metric-completion MST.
  Lcg64 rng(77);
  for (int round = 0; round < 10; ++round) {
    const BlockID k = 6;
    const TargetGraph target = random_target(k, rng);
    const SteinerTable table(target, 4);
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      BlockSet set(k);
      for (BlockID b = 0; b < k; ++b) {
        if (mask & (1u << b)) {
          set.add(b);
        }
      }
      if (set.size() > table.size_limit()) {
        continue;
      }
      for (BlockID extra = 0; extra < k; ++extra) {
        if (!set.contains(extra)) {
          CHECK(table.distance(set) <= table.distance(set.with(extra)));
        }
      }
    }
  }
}

TEST_CASE("complete unit target degenerates to lambda minus one") {
  for (const BlockID k : {4u, 8u}) {
    std::vector<TargetEdge> edges;
    for (BlockID a = 0; a < k; ++a) {
      for (BlockID b = a + 1; b < k; ++b) {
        edges.push_back({a, b, 1});
      }
    }
    const TargetGraph complete(k, std::move(edges));
    const SteinerTable table(complete, 4);
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      BlockSet set(k);
      int bits = 0;
      for (BlockID b = 0; b < k; ++b) {
        if (mask & (1u << b)) {
          set.add(b);
          ++bits;
        }
      }
      CHECK(table.distance(set) == bits - 1);
    }
  }
}

TEST_CASE("cache serves repeated queries and counts them") {
  const TargetGraph path(
      6, {{0, 1, 2}, {1, 2, 3}, {2, 3, 1}, {3, 4, 5}, {4, 5, 2}});
  const SteinerTable table(path, 3);
  const BlockSet all = make_set(6, {0, 1, 2, 3, 4, 5});

  table.reset_stats();
  const Weight first = table.distance(all);
  CHECK(table.stats().cache_misses == 1);
  for (int i = 0; i < 5; ++i) {
    CHECK(table.distance(all) == first);
  }
  CHECK(table.stats().cache_hits == 5);
  CHECK(table.stats().cache_misses == 1);

  table.distance(make_set(6, {0, 1}));
  CHECK(table.stats().exact == 1);
}

TEST_CASE("multi-word block sets work against the table") {
  Lcg64 rng(31);
  const TargetGraph target = random_target(70, rng);
  const SteinerTable table(target, 2);
  BlockSet set(70);
  set.add(3);
  set.add(69);
  CHECK(table.distance(set) == target.distance(3, 69));
  set.add(35); // size 3 > t: MST approximation over the three blocks
  const Weight approx = table.distance(set);
  CHECK(approx >= target.distance(3, 69));
  CHECK(table.distance(set) == approx);
  CHECK(table.stats().cache_hits >= 1);
}

TEST_CASE("memory budget rejects oversized precomputation") {
  Lcg64 rng(13);
  const TargetGraph target = random_target(16, rng);
  CHECK_THROWS_AS(SteinerTable(target, 4, 100), Error);
}

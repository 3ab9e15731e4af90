#include "doctest.h"

#include "steinermap/initial_mapping.hpp"
#include "steinermap/io.hpp"
#include "steinermap/pipeline.hpp"
#include "test_support.hpp"

using namespace steinermap;
using namespace steinermap::testing;

TEST_CASE("pipeline emits balanced deterministic mappings on a 70-block target") {
  // k = 70 exercises the multi-word block set paths end to end
  Lcg64 rng(404);
  const NodeID n = 140;
  const Hypergraph hg = random_hypergraph(n, 2 * n, rng, 4, 3, 1);
  const TargetGraph target = generate_hierarchy({5, 14}, {1, 10});
  REQUIRE(target.num_blocks() == 70);

  PipelineConfig config;
  config.epsilon = 0.1;
  config.seed = 9;
  config.steiner_size_limit = 3;

  const PipelineResult first = run_pipeline(hg, target, config);
  const PipelineResult second = run_pipeline(hg, target, config);
  CHECK(first.assignment == second.assignment);
  CHECK(first.stats.objective == second.stats.objective);

  const SteinerTable table(target, config.steiner_size_limit);
  const Mapping emitted(hg, target, table, config.epsilon, first.assignment);
  CHECK(emitted.is_balanced());
  CHECK(emitted.steiner_objective() == first.stats.objective);
  CHECK(evaluate_connectivity_metric(hg, 70, first.assignment) == first.stats.connectivity);
}

TEST_CASE("two-phase mode is exactly the partition-then-map composition") {
  Lcg64 rng(505);
  const NodeID n = 48;
  const Hypergraph hg = random_hypergraph(n, 2 * n, rng, 4, 3, 1);
  const TargetGraph grid = generate_grid(2, 3, 51);

  PipelineConfig config;
  config.epsilon = 0.2;
  config.seed = 31;
  config.mode = Mode::kTwoPhase;
  const PipelineResult result = run_pipeline(hg, grid, config);

  const SteinerTable table(grid, config.steiner_size_limit);
  InitialMappingConfig initial{config.epsilon, config.initial_partition_reps,
                               config.greedy_seed_cap, config.kl_max_passes,
                               mix_seed(config.seed, 0x1111)};
  const Mapping manual = initial_mapping(hg, grid, table, initial);
  CHECK(std::vector<BlockID>(manual.assignment().begin(), manual.assignment().end()) ==
        result.assignment);
}

TEST_CASE("an exhausted time limit skips refinement but still emits a valid mapping") {
  Lcg64 rng(606);
  const NodeID n = 60;
  const Hypergraph hg = random_hypergraph(n, 2 * n, rng, 4, 3, 1);
  const TargetGraph grid = generate_grid(2, 2, 3);

  PipelineConfig config;
  config.epsilon = 0.3;
  config.seed = 5;
  config.preset = Preset::kQuality;
  config.time_limit_seconds = 1e-9;
  const PipelineResult result = run_pipeline(hg, grid, config);

  const SteinerTable table(grid, config.steiner_size_limit);
  const Mapping emitted(hg, grid, table, config.epsilon, result.assignment);
  CHECK(emitted.is_balanced());
  CHECK(result.stats.time_lp == 0);
  CHECK(result.stats.time_fm == 0);
  CHECK(result.stats.time_flow == 0);
}

TEST_CASE("deeper hierarchies keep the objective consistent across levels") {
  // a chain long enough to force several coarsening levels
  std::vector<std::vector<NodeID>> nets;
  for (NodeID u = 0; u + 1 < 600; ++u) {
    nets.push_back({u, u + 1});
  }
  for (NodeID u = 0; u + 10 < 600; u += 7) {
    nets.push_back({u, u + 5, u + 10});
  }
  const NetID m = static_cast<NetID>(nets.size());
  const Hypergraph chain(600, std::move(nets), std::vector<Weight>(m, 1),
                         std::vector<Weight>(600, 1));
  const TargetGraph grid = generate_grid(2, 2, 17);

  PipelineConfig config;
  config.epsilon = 0.1;
  config.seed = 77;
  config.contraction_limit_factor = 20; // force a real multilevel hierarchy
  const PipelineResult result = run_pipeline(chain, grid, config);
  CHECK(result.stats.num_levels > 1);

  const SteinerTable table(grid, config.steiner_size_limit);
  const Mapping emitted(chain, grid, table, config.epsilon, result.assignment);
  CHECK(emitted.is_balanced());
  CHECK(emitted.steiner_objective() == result.stats.objective);
}

TEST_CASE("stats percentages cover every query") {
  Lcg64 rng(707);
  const Hypergraph hg = random_hypergraph(50, 120, rng, 7, 3, 1);
  const TargetGraph grid = generate_grid(3, 3, 23);
  PipelineConfig config;
  config.epsilon = 0.2;
  config.seed = 13;
  config.preset = Preset::kQuality;
  const PipelineResult result = run_pipeline(hg, grid, config);
  const auto &queries = result.stats.queries;
  CHECK(queries.total() == queries.exact + queries.cache_hits + queries.cache_misses);
  CHECK(result.stats.exact_pct() + result.stats.cache_hit_pct() +
            result.stats.cache_miss_pct() ==
        doctest::Approx(100.0));
}

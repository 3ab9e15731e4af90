/*******************************************************************************
 * Multilevel pipeline: coarsen, map the coarsest level, then project and
 * refine level by level (label propagation, FM, and — in the quality preset —
 * flow-based refinement, looped until the relative improvement stalls).
 ******************************************************************************/
#pragma once

#include <string>
#include <vector>

#include "steinermap/hypergraph.hpp"
#include "steinermap/steiner_table.hpp"
#include "steinermap/target_graph.hpp"
#include "steinermap/types.hpp"

namespace steinermap {

enum class Preset { kDefault, kQuality };
enum class Mode { kDirect, kTwoPhase };
enum class Objective { kSteiner, kConnectivity };

struct PipelineConfig {
  double epsilon = 0.03;
  std::uint64_t seed = 1;
  int steiner_size_limit = 4;
  Preset preset = Preset::kDefault;
  Mode mode = Mode::kDirect;
  Objective objective = Objective::kSteiner;
  double time_limit_seconds = 0; // 0 = unlimited; checked at phase boundaries

  NodeID contraction_limit_factor = 160; // coarsen down to factor * k nodes
  int initial_partition_reps = 4;
  int greedy_seed_cap = 16;
  int kl_max_passes = 8;
  int lp_rounds = 5;
  int fm_rounds = 10;
  int fm_seed_batch = 25;
  double flow_region_scale = 1.0;
  double quality_stall_threshold = 0.0025; // rel. improvement per quality loop
  std::uint64_t steiner_memory_budget = SteinerTable::kDefaultBudgetCells;
};

struct PipelineStats {
  Weight objective = 0;    // Steiner tree metric of the emitted mapping
  Weight connectivity = 0; // connectivity metric of the emitted mapping
  double time_total = 0;
  double time_coarsen = 0;
  double time_initial = 0;
  double time_lp = 0;
  double time_fm = 0;
  double time_flow = 0;
  std::size_t num_levels = 1;
  SteinerQueryStats queries;

  double exact_pct() const;
  double cache_hit_pct() const;
  double cache_miss_pct() const;
};

struct PipelineResult {
  std::vector<BlockID> assignment;
  PipelineStats stats;
};

// Runs the configured pipeline. Throws Error(infeasible_balance) when no
// balanced mapping exists for the instance.
PipelineResult run_pipeline(const Hypergraph &hg, const TargetGraph &target,
                            const PipelineConfig &config);

// One CSV row (plus the column header) in the layout consumed by the
// benchmark harness scripts.
std::string stats_csv_header();
std::string stats_csv_row(const std::string &instance, BlockID k, std::uint64_t seed,
                          const PipelineConfig &config, const PipelineStats &stats);
std::string stats_json(const std::string &instance, BlockID k, std::uint64_t seed,
                       const PipelineConfig &config, const PipelineStats &stats);

} // namespace steinermap

#include "steinermap/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "steinermap/coarsening.hpp"
#include "steinermap/errors.hpp"
#include "steinermap/gain_table.hpp"
#include "steinermap/initial_mapping.hpp"
#include "steinermap/mapping.hpp"
#include "steinermap/refine_flow.hpp"
#include "steinermap/refine_fm.hpp"
#include "steinermap/refine_lp.hpp"

#include "json.hpp"

namespace steinermap {

namespace {

class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}

  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

struct Refiners {
  const PipelineConfig &config;
  PipelineStats &stats;
  const Stopwatch &clock;

  bool out_of_time() const {
    return config.time_limit_seconds > 0 && clock.seconds() > config.time_limit_seconds;
  }

  void run_level(Mapping &mapping, const std::size_t level) {
    if (out_of_time()) {
      return;
    }
    const std::uint64_t seed = mix_seed(config.seed, 0x11ef, level);
    if (config.preset == Preset::kDefault) {
      run_once(mapping, seed, /*with_flows=*/false);
      return;
    }
    // quality preset: loop all refiners until the relative improvement stalls
    Weight current = mapping.steiner_objective();
    for (int iteration = 0;; ++iteration) {
      run_once(mapping, mix_seed(seed, 0x717e, static_cast<std::uint64_t>(iteration)),
               /*with_flows=*/true);
      const Weight next = mapping.steiner_objective();
      if (current <= 0 || out_of_time()) {
        break;
      }
      const double relative =
          static_cast<double>(current - next) / static_cast<double>(current);
      current = next;
      if (relative < config.quality_stall_threshold) {
        break;
      }
    }
  }

private:
  void run_once(Mapping &mapping, const std::uint64_t seed, const bool with_flows) {
    {
      Stopwatch timer;
      LpConfig lp{config.lp_rounds, mix_seed(seed, 0x19), false};
      lp_refine(mapping, lp);
      stats.time_lp += timer.seconds();
    }
    if (out_of_time()) {
      return;
    }
    {
      Stopwatch timer;
      GainTable gains(mapping);
      FmConfig fm{config.fm_rounds, config.fm_seed_batch, mix_seed(seed, 0x29), false};
      fm_refine(mapping, gains, fm);
      stats.time_fm += timer.seconds();
    }
    if (with_flows && !out_of_time()) {
      Stopwatch timer;
      FlowConfig flow{config.flow_region_scale};
      flow_refine(mapping, flow);
      stats.time_flow += timer.seconds();
    }
  }
};

PipelineResult run_direct(const Hypergraph &hg, const TargetGraph &target,
                          const SteinerTable &table, const PipelineConfig &config,
                          PipelineStats &stats, const Stopwatch &clock) {
  Refiners refiners{config, stats, clock};

  Stopwatch coarsen_timer;
  CoarseningConfig coarsening;
  coarsening.contraction_limit =
      std::max<NodeID>(target.num_blocks(), config.contraction_limit_factor * target.num_blocks());
  coarsening.max_cluster_weight =
      (1.0 + config.epsilon) *
      static_cast<double>((hg.total_node_weight() + target.num_blocks() - 1) /
                          target.num_blocks()) /
      3.0;
  coarsening.seed = mix_seed(config.seed, 0xc0a0);
  const Hierarchy hierarchy = coarsen(hg, coarsening);
  stats.num_levels = hierarchy.num_levels();
  stats.time_coarsen = coarsen_timer.seconds();

  Stopwatch initial_timer;
  InitialMappingConfig initial{config.epsilon, config.initial_partition_reps,
                               config.greedy_seed_cap, config.kl_max_passes,
                               mix_seed(config.seed, 0x1111)};
  Mapping mapping = initial_mapping(hierarchy.coarsest(), target, table, initial);
  stats.time_initial = initial_timer.seconds();

  refiners.run_level(mapping, hierarchy.num_levels() - 1);
  for (std::size_t level = hierarchy.num_levels() - 1; level > 0; --level) {
    Mapping finer = project(mapping, hierarchy.level(level - 1), hierarchy.map(level - 1));
    mapping = std::move(finer);
    refiners.run_level(mapping, level - 1);
  }

  return {std::vector<BlockID>(mapping.assignment().begin(), mapping.assignment().end()), stats};
}

PipelineResult run_two_phase(const Hypergraph &hg, const TargetGraph &target,
                             const SteinerTable &table, const PipelineConfig &config,
                             PipelineStats &stats) {
  // Connectivity-optimizing partition of the input hypergraph, then one-to-one
  // mapping of the contracted blocks; no Steiner-aware refinement.
  Stopwatch initial_timer;
  InitialMappingConfig initial{config.epsilon, config.initial_partition_reps,
                               config.greedy_seed_cap, config.kl_max_passes,
                               mix_seed(config.seed, 0x1111)};
  Mapping mapping = initial_mapping(hg, target, table, initial);
  stats.time_initial = initial_timer.seconds();
  return {std::vector<BlockID>(mapping.assignment().begin(), mapping.assignment().end()), stats};
}

} // namespace

PipelineResult run_pipeline(const Hypergraph &hg, const TargetGraph &target,
                            const PipelineConfig &config) {
  const Stopwatch clock;
  PipelineStats stats;

  const Weight limit = compute_max_block_weight(hg.total_node_weight(), target.num_blocks(),
                                        config.epsilon);
  for (NodeID u = 0; u < hg.num_nodes(); ++u) {
    if (hg.node_weight(u) > limit) {
      fail(ErrorCode::infeasible_balance, "node " + std::to_string(u) +
                                              " exceeds the block weight limit");
    }
  }

  SteinerTable table(target, config.steiner_size_limit, config.steiner_memory_budget);

  PipelineResult result = config.mode == Mode::kDirect
                              ? run_direct(hg, target, table, config, stats, clock)
                              : run_two_phase(hg, target, table, config, stats);

  result.stats.objective = evaluate_steiner_metric(hg, target, table, result.assignment);
  result.stats.connectivity =
      evaluate_connectivity_metric(hg, target.num_blocks(), result.assignment);
  result.stats.queries = table.stats();
  result.stats.time_total = clock.seconds();
  return result;
}

namespace {

double percentage(const std::uint64_t part, const std::uint64_t total) {
  return total == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(total);
}

std::string format_double(const double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  return buffer;
}

const char *preset_name(const Preset preset) {
  return preset == Preset::kDefault ? "default" : "quality";
}

const char *mode_name(const Mode mode) { return mode == Mode::kDirect ? "direct" : "two-phase"; }

} // namespace

double PipelineStats::exact_pct() const { return percentage(queries.exact, queries.total()); }
double PipelineStats::cache_hit_pct() const {
  return percentage(queries.cache_hits, queries.total());
}
double PipelineStats::cache_miss_pct() const {
  return percentage(queries.cache_misses, queries.total());
}

std::string stats_csv_header() {
  return "instance,k,seed,mode,preset,objective,connectivity,time_total,time_coarsen,"
         "time_initial,time_lp,time_fm,time_flow,steiner_exact_pct,cache_hit_pct,"
         "cache_miss_pct\n";
}

std::string stats_csv_row(const std::string &instance, const BlockID k, const std::uint64_t seed,
                          const PipelineConfig &config, const PipelineStats &stats) {
  std::ostringstream row;
  row << instance << ',' << k << ',' << seed << ',' << mode_name(config.mode) << ','
      << preset_name(config.preset) << ',' << stats.objective << ',' << stats.connectivity << ','
      << format_double(stats.time_total) << ',' << format_double(stats.time_coarsen) << ','
      << format_double(stats.time_initial) << ',' << format_double(stats.time_lp) << ','
      << format_double(stats.time_fm) << ',' << format_double(stats.time_flow) << ','
      << format_double(stats.exact_pct()) << ',' << format_double(stats.cache_hit_pct()) << ','
      << format_double(stats.cache_miss_pct()) << '\n';
  return row.str();
}

std::string stats_json(const std::string &instance, const BlockID k, const std::uint64_t seed,
                       const PipelineConfig &config, const PipelineStats &stats) {
  nlohmann::json out;
  out["instance"] = instance;
  out["k"] = k;
  out["seed"] = seed;
  out["mode"] = mode_name(config.mode);
  out["preset"] = preset_name(config.preset);
  out["epsilon"] = config.epsilon;
  out["steiner_size_limit"] = config.steiner_size_limit;
  out["objective"] = stats.objective;
  out["connectivity"] = stats.connectivity;
  out["num_levels"] = stats.num_levels;
  out["time"] = {{"total", stats.time_total},   {"coarsen", stats.time_coarsen},
                 {"initial", stats.time_initial}, {"lp", stats.time_lp},
                 {"fm", stats.time_fm},          {"flow", stats.time_flow}};
  out["steiner_queries"] = {{"exact", stats.queries.exact},
                            {"cache_hits", stats.queries.cache_hits},
                            {"cache_misses", stats.queries.cache_misses},
                            {"exact_pct", stats.exact_pct()},
                            {"cache_hit_pct", stats.cache_hit_pct()},
                            {"cache_miss_pct", stats.cache_miss_pct()}};
  return out.dump(2) + "\n";
}

} // namespace steinermap

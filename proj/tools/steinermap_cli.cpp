/*******************************************************************************
 * Command line driver: maps an hMetis hypergraph onto a target graph and
 * writes the mapping plus a stats record.
 *
 * Exit codes: 0 success, 2 infeasible balance, 3 I/O error, 4 config error.
 ******************************************************************************/
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "steinermap/errors.hpp"
#include "steinermap/io.hpp"
#include "steinermap/pipeline.hpp"

namespace {

using namespace steinermap;

// --target accepts file:PATH, grid:NxM, hier:a1:..:al=d1:..:dl, complete:k
TargetGraph make_target(const std::string &spec, const std::uint64_t seed) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos) {
    fail(ErrorCode::config, "target spec must look like kind:arguments");
  }
  const std::string kind = spec.substr(0, colon);
  const std::string args = spec.substr(colon + 1);

  if (kind == "file") {
    return parse_target_graph(read_file(args));
  }
  if (kind == "grid") {
    const std::size_t x = args.find('x');
    if (x == std::string::npos) {
      fail(ErrorCode::config, "grid spec must be grid:NxM");
    }
    const int rows = std::stoi(args.substr(0, x));
    const int cols = std::stoi(args.substr(x + 1));
    if (rows < 1 || cols < 1) {
      fail(ErrorCode::config, "grid dimensions must be positive");
    }
    return generate_grid(static_cast<BlockID>(rows), static_cast<BlockID>(cols),
                         mix_seed(seed, 0x6e1d));
  }
  if (kind == "hier") {
    const std::size_t eq = args.find('=');
    if (eq == std::string::npos) {
      fail(ErrorCode::config, "hierarchy spec must be hier:a1:..:al=d1:..:dl");
    }
    const auto parse_list = [](const std::string &list) {
      std::vector<std::int64_t> values;
      std::size_t pos = 0;
      while (pos <= list.size()) {
        const std::size_t next = list.find(':', pos);
        const std::string token =
            list.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        if (token.empty()) {
          fail(ErrorCode::config, "empty entry in hierarchy spec");
        }
        values.push_back(std::stoll(token));
        if (next == std::string::npos) {
          break;
        }
        pos = next + 1;
      }
      return values;
    };
    std::vector<BlockID> arity;
    std::vector<Weight> costs;
    for (const std::int64_t a : parse_list(args.substr(0, eq))) {
      if (a < 1) {
        fail(ErrorCode::config, "hierarchy arities must be positive");
      }
      arity.push_back(static_cast<BlockID>(a));
    }
    for (const std::int64_t d : parse_list(args.substr(eq + 1))) {
      if (d < 1) {
        fail(ErrorCode::config, "hierarchy costs must be positive");
      }
      costs.push_back(d);
    }
    return generate_hierarchy(arity, costs);
  }
  if (kind == "complete") {
    const int k = std::stoi(args);
    if (k < 1) {
      fail(ErrorCode::config, "complete:k needs a positive k");
    }
    return generate_complete(static_cast<BlockID>(k));
  }
  fail(ErrorCode::config, "unknown target kind '" + kind + "'");
}

int exit_code_for(const ErrorCode code) {
  switch (code) {
  case ErrorCode::infeasible_balance:
    return 2;
  case ErrorCode::io:
  case ErrorCode::malformed_header:
  case ErrorCode::pin_out_of_range:
  case ErrorCode::empty_net:
  case ErrorCode::asymmetric_edge:
  case ErrorCode::disconnected_target:
  case ErrorCode::length_mismatch:
  case ErrorCode::invalid_block:
    return 3;
  default:
    return 4;
  }
}

std::string basename_of(const std::string &path) {
  const std::size_t slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"steinermap: k-way hypergraph mapping onto weighted target graphs"};

  std::string hypergraph_path;
  std::string target_spec;
  std::string output_path;
  std::string stats_path;
  std::string stats_json_path;
  std::string preset = "default";
  std::string mode = "direct";
  std::string objective = "steiner";
  PipelineConfig config;
  int threads = 1;

  app.add_option("--hypergraph", hypergraph_path, "hMetis hypergraph file")->required();
  app.add_option("--target", target_spec,
                 "target graph: file:F | grid:NxM | hier:a1:..=d1:.. | complete:k")
      ->required();
  app.add_option("--epsilon", config.epsilon, "imbalance ratio (default 0.03)");
  app.add_option("--seed", config.seed, "random seed");
  app.add_option("--preset", preset, "default | quality");
  app.add_option("--mode", mode, "direct | two-phase");
  app.add_option("--objective", objective, "steiner | connectivity");
  app.add_option("--steiner-size-limit", config.steiner_size_limit,
                 "exact Steiner tree precomputation up to this set size (default 4)");
  app.add_option("--output", output_path, "mapping output file");
  app.add_option("--stats", stats_path, "stats CSV output file");
  app.add_option("--stats-json", stats_json_path, "detailed stats JSON output file");
  app.add_option("--time-limit", config.time_limit_seconds,
                 "soft time limit in seconds, checked at phase boundaries");
  app.add_option("--threads", threads,
                 "reserved; repetitions run sequentially in this build")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 4; // help/version exit cleanly, bad flags are config errors
  }

  try {
    if (preset == "default") {
      config.preset = Preset::kDefault;
    } else if (preset == "quality") {
      config.preset = Preset::kQuality;
    } else {
      fail(ErrorCode::config, "unknown preset '" + preset + "'");
    }
    if (mode == "direct") {
      config.mode = Mode::kDirect;
    } else if (mode == "two-phase") {
      config.mode = Mode::kTwoPhase;
    } else {
      fail(ErrorCode::config, "unknown mode '" + mode + "'");
    }
    if (objective == "steiner") {
      config.objective = Objective::kSteiner;
    } else if (objective == "connectivity") {
      config.objective = Objective::kConnectivity;
    } else {
      fail(ErrorCode::config, "unknown objective '" + objective + "'");
    }
    if (config.epsilon < 0 || config.epsilon >= 1.0) {
      fail(ErrorCode::config, "epsilon must lie in [0, 1)");
    }
    if (config.objective == Objective::kConnectivity &&
        target_spec.rfind("complete:", 0) != 0) {
      fail(ErrorCode::config,
           "the connectivity objective requires a complete:k target, where the "
           "Steiner tree metric coincides with it");
    }

    const Hypergraph hg = parse_hmetis(read_file(hypergraph_path));
    const TargetGraph target = make_target(target_spec, config.seed);

    const PipelineResult result = run_pipeline(hg, target, config);
    const Weight reported = config.objective == Objective::kConnectivity
                                ? result.stats.connectivity
                                : result.stats.objective;

    if (!output_path.empty()) {
      write_file(output_path, write_mapping(result.assignment));
    }
    const std::string instance = basename_of(hypergraph_path);
    if (!stats_path.empty()) {
      write_file(stats_path, stats_csv_header() + stats_csv_row(instance, target.num_blocks(),
                                                                config.seed, config, result.stats));
    }
    if (!stats_json_path.empty()) {
      write_file(stats_json_path,
                 stats_json(instance, target.num_blocks(), config.seed, config, result.stats));
    }

    std::cout << "instance=" << instance << " k=" << target.num_blocks() << " seed=" << config.seed
              << " objective=" << reported << " steiner=" << result.stats.objective
              << " connectivity=" << result.stats.connectivity
              << " time=" << result.stats.time_total << "s\n";
    return 0;
  } catch (const Error &error) {
    std::cerr << "error: " << error.what() << "\n";
    return exit_code_for(error.code());
  } catch (const std::exception &error) {
    std::cerr << "error: " << error.what() << "\n";
    return 4;
  }
}

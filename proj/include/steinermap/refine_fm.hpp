#pragma once

#include "steinermap/gain_table.hpp"
#include "steinermap/mapping.hpp"
#include "steinermap/types.hpp"

namespace steinermap {

struct FmConfig {
  int max_rounds = 10;
  int seed_batch = 25; // seeds polled per localized search
  std::uint64_t seed = 0;
  bool forbid_empty_source = false;
};

// Localized multi-try FM. Per round, all boundary nodes enter a task queue;
// localized searches seeded with batches of nodes extract gain-table-backed
// moves (worsening allowed), then keep only the best balanced prefix of the
// move sequence. Each node moves at most once per round. Returns the total
// kept improvement (never negative).
Weight fm_refine(Mapping &mapping, GainTable &gain_table, const FmConfig &config);

} // namespace steinermap

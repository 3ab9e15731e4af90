#pragma once

#include "steinermap/mapping.hpp"
#include "steinermap/types.hpp"

namespace steinermap {

struct LpConfig {
  int rounds = 5;
  std::uint64_t seed = 0;
  bool forbid_empty_source = false;
};

// Label propagation over boundary nodes: per round, each boundary node is
// offered its best positive-gain, balance-keeping move among its adjacent
// blocks; moves whose attributed gain turns out negative are reverted.
// Returns the total attributed improvement (never negative).
Weight lp_refine(Mapping &mapping, const LpConfig &config);

} // namespace steinermap

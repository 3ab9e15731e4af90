/*******************************************************************************
 * Independent exact oracles for audits: optimal Steiner trees by enumeration
 * over Steiner point subsets, exhaustive optimal mappings on tiny instances,
 * and a from-scratch objective evaluator. Deliberately shares no code with
 * the production Steiner table (distances come from a local Floyd-Warshall).
 ******************************************************************************/
#pragma once

#include <vector>

#include "steinermap/hypergraph.hpp"
#include "steinermap/target_graph.hpp"
#include "steinermap/types.hpp"

namespace steinermap::oracle {

// Exact minimal Steiner tree weight for the given terminals: minimum over all
// supersets of the terminal set of the MST weight on the metric completion.
// Throws Error(too_large) for targets with more than 12 nodes.
Weight brute_force_steiner(const TargetGraph &target, const std::vector<BlockID> &terminals);

struct OptimalMapping {
  std::vector<BlockID> assignment;
  Weight objective = 0;
};

// Exhaustive enumeration of balanced mappings; global optimum. Throws
// Error(too_large) when k^n exceeds 10^7.
OptimalMapping brute_force_mapping(const Hypergraph &hg, const TargetGraph &target,
                                   double epsilon);

// Objective recomputed from the assignment alone, using brute-force Steiner
// weights up to the given exact limit and an independent MST 2-approximation
// beyond it (mirroring the production table's policy on large sets).
Weight independent_objective(const Hypergraph &hg, const TargetGraph &target,
                             std::span<const BlockID> assignment, int exact_limit);

} // namespace steinermap::oracle

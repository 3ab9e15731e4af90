/*******************************************************************************
 * Maps the coarsest hypergraph onto the target graph: connectivity-optimizing
 * k-way partition, block contraction to a one-to-one mapping instance, greedy
 * construction, Kernighan-Lin pair exchange. The same composition applied to
 * the input hypergraph is the standalone two-phase baseline.
 ******************************************************************************/
#pragma once

#include <vector>

#include "steinermap/mapping.hpp"
#include "steinermap/types.hpp"

namespace steinermap {

struct InitialMappingConfig {
  double epsilon = 0.03;
  int partition_reps = 4;  // seeded repetitions of the k-way partitioner
  int greedy_seed_cap = 16; // greedy construction seeds, capped at min(n, 16)
  int kl_max_passes = 8;
  std::uint64_t seed = 0;
};

// epsilon-balanced k-way partition minimizing the connectivity metric: the
// best of `reps` seeded runs of random balanced assignment followed by label
// propagation and FM on a complete unit-weight target (where the Steiner
// metric collapses to connectivity). Throws Error(infeasible_balance) when no
// balanced assignment exists.
std::vector<BlockID> initial_kway_partition(const Hypergraph &hg, BlockID k, double epsilon,
                                            int reps, std::uint64_t seed);

// Greedy one-to-one construction: the seed node lands on the target node with
// the smallest communication volume; remaining nodes leave a priority queue
// ordered by their net weight towards the partial mapping and take the free
// block with the highest gain. Unreached nodes fill free blocks round-robin.
std::vector<BlockID> greedy_opmp(const Hypergraph &instance, const TargetGraph &target,
                                 const SteinerTable &table, NodeID seed_node);

// Kernighan-Lin pair exchange with lazy gain updates and best-prefix revert;
// never returns a worse mapping. Returns the total improvement.
Weight kl_refine(Mapping &mapping, int max_passes);

// Full composition on an arbitrary hypergraph; also the two-phase baseline
// when handed the input hypergraph directly.
Mapping initial_mapping(const Hypergraph &hg, const TargetGraph &target,
                        const SteinerTable &table, const InitialMappingConfig &config);

} // namespace steinermap

/*******************************************************************************
 * File formats and deterministic target-graph generators. Hypergraphs use the
 * hMetis format, target graphs the Metis graph format with edge weights
 * (fmt 001); mappings are one target node id per line. All formats are UTF-8
 * with '\n' line ends and '%' comment lines.
 ******************************************************************************/
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "steinermap/hypergraph.hpp"
#include "steinermap/target_graph.hpp"
#include "steinermap/types.hpp"

namespace steinermap {

// Header "m n [fmt]" with fmt in {absent, 1, 10, 11} controlling net and
// node weights; 1-based pin indices. Errors carry the offending line number.
Hypergraph parse_hmetis(std::string_view text);

// Header "k m 001", one adjacency line "v w v w ..." per node, 1-based.
// Rejects asymmetric edges and disconnected graphs.
TargetGraph parse_target_graph(std::string_view text);

// N*M grid with 4-neighborhood edges; integer weights uniform in [1, 10]
// drawn from the lcg64 generator, so a seed pins the graph exactly. Edges are
// enumerated row-major, right neighbor before down neighbor.
TargetGraph generate_grid(BlockID rows, BlockID cols, std::uint64_t weight_seed);

// Hierarchical topology a1:...:al with communication costs d1:...:dl:
// a complete graph on prod(a_i) cores where two cores pay the cost of the
// lowest level at which they share an ancestor.
TargetGraph generate_hierarchy(const std::vector<BlockID> &arity,
                               const std::vector<Weight> &costs);

// Complete graph with unit edge weights (the Steiner tree metric degenerates
// to the connectivity metric on this target).
TargetGraph generate_complete(BlockID k);

std::string write_mapping(std::span<const BlockID> assignment);
std::vector<BlockID> parse_mapping(std::string_view text, NodeID num_nodes, BlockID num_blocks);

std::string read_file(const std::string &path);
void write_file(const std::string &path, std::string_view contents);

} // namespace steinermap

#include "steinermap/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "steinermap/errors.hpp"

namespace steinermap {

namespace {

struct LineReader {
  std::string_view text;
  bool keep_blank = false; // Metis adjacency lines may be legitimately empty
  std::size_t pos = 0;
  std::size_t line_number = 0;

  // Next non-comment line, optionally skipping blank lines as well.
  bool next(std::string_view &line) {
    while (pos < text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) {
        end = text.size();
      }
      std::string_view candidate = text.substr(pos, end - pos);
      pos = end + 1;
      ++line_number;
      if (!candidate.empty() && candidate.back() == '\r') {
        candidate.remove_suffix(1);
      }
      const std::size_t first = candidate.find_first_not_of(" \t");
      if (first == std::string_view::npos) {
        if (!keep_blank) {
          continue;
        }
        line = std::string_view();
        return true;
      }
      if (candidate[first] == '%') {
        continue;
      }
      line = candidate;
      return true;
    }
    return false;
  }
};

std::vector<std::int64_t> parse_ints(std::string_view line, const std::size_t line_number,
                                     const ErrorCode code) {
  std::vector<std::int64_t> values;
  const char *it = line.data();
  const char *end = line.data() + line.size();
  while (it != end) {
    if (*it == ' ' || *it == '\t') {
      ++it;
      continue;
    }
    std::int64_t value = 0;
    const auto [next, ec] = std::from_chars(it, end, value);
    if (ec != std::errc()) {
      fail(code, "line " + std::to_string(line_number) + ": expected an integer");
    }
    values.push_back(value);
    it = next;
  }
  return values;
}

} // namespace

Hypergraph parse_hmetis(const std::string_view text) {
  LineReader reader{text};
  std::string_view line;
  if (!reader.next(line)) {
    fail(ErrorCode::malformed_header, "line 1: missing hMetis header");
  }
  const auto header = parse_ints(line, reader.line_number, ErrorCode::malformed_header);
  if (header.size() < 2 || header.size() > 3 || header[0] < 0 || header[1] < 0) {
    fail(ErrorCode::malformed_header,
         "line " + std::to_string(reader.line_number) + ": header must be 'm n [fmt]'");
  }
  const NetID num_nets = static_cast<NetID>(header[0]);
  const NodeID num_nodes = static_cast<NodeID>(header[1]);
  const std::int64_t fmt = header.size() == 3 ? header[2] : 0;
  if (fmt != 0 && fmt != 1 && fmt != 10 && fmt != 11) {
    fail(ErrorCode::malformed_header,
         "line " + std::to_string(reader.line_number) + ": fmt must be one of 1, 10, 11");
  }
  const bool has_net_weights = fmt == 1 || fmt == 11;
  const bool has_node_weights = fmt == 10 || fmt == 11;

  std::vector<std::vector<NodeID>> nets;
  std::vector<Weight> net_weights;
  nets.reserve(num_nets);
  for (NetID e = 0; e < num_nets; ++e) {
    if (!reader.next(line)) {
      fail(ErrorCode::empty_net,
           "line " + std::to_string(reader.line_number + 1) + ": missing net line");
    }
    auto values = parse_ints(line, reader.line_number, ErrorCode::malformed_header);
    Weight weight = 1;
    std::size_t first_pin = 0;
    if (has_net_weights) {
      if (values.empty()) {
        fail(ErrorCode::empty_net,
             "line " + std::to_string(reader.line_number) + ": net has no weight");
      }
      weight = values[0];
      first_pin = 1;
      if (weight <= 0) {
        fail(ErrorCode::malformed_header,
             "line " + std::to_string(reader.line_number) + ": net weight must be positive");
      }
    }
    if (values.size() == first_pin) {
      fail(ErrorCode::empty_net, "line " + std::to_string(reader.line_number) + ": empty net");
    }
    std::vector<NodeID> pins;
    pins.reserve(values.size() - first_pin);
    for (std::size_t i = first_pin; i < values.size(); ++i) {
      if (values[i] < 1 || values[i] > static_cast<std::int64_t>(num_nodes)) {
        fail(ErrorCode::pin_out_of_range,
             "line " + std::to_string(reader.line_number) + ": pin " + std::to_string(values[i]) +
                 " out of range [1, " + std::to_string(num_nodes) + "]");
      }
      const NodeID pin = static_cast<NodeID>(values[i] - 1);
      // duplicate pins occur in the wild; keep the first occurrence
      if (std::find(pins.begin(), pins.end(), pin) == pins.end()) {
        pins.push_back(pin);
      }
    }
    nets.push_back(std::move(pins));
    net_weights.push_back(weight);
  }

  std::vector<Weight> node_weights(num_nodes, 1);
  if (has_node_weights) {
    for (NodeID u = 0; u < num_nodes; ++u) {
      if (!reader.next(line)) {
        fail(ErrorCode::malformed_header,
             "line " + std::to_string(reader.line_number + 1) + ": missing node weight");
      }
      const auto values = parse_ints(line, reader.line_number, ErrorCode::malformed_header);
      if (values.size() != 1 || values[0] <= 0) {
        fail(ErrorCode::malformed_header,
             "line " + std::to_string(reader.line_number) + ": node weight must be positive");
      }
      node_weights[u] = values[0];
    }
  }
  return Hypergraph(num_nodes, std::move(nets), std::move(net_weights), std::move(node_weights));
}

TargetGraph parse_target_graph(const std::string_view text) {
  LineReader reader{text, /*keep_blank=*/true};
  std::string_view line;
  do {
    if (!reader.next(line)) {
      fail(ErrorCode::malformed_header, "line 1: missing Metis header");
    }
  } while (line.empty());
  const auto header = parse_ints(line, reader.line_number, ErrorCode::malformed_header);
  if (header.size() != 3 || header[0] < 1 || header[1] < 0 || header[2] != 1) {
    fail(ErrorCode::malformed_header,
         "line " + std::to_string(reader.line_number) + ": header must be 'k m 001'");
  }
  const BlockID k = static_cast<BlockID>(header[0]);
  const std::size_t num_edges = static_cast<std::size_t>(header[1]);

  std::map<std::pair<BlockID, BlockID>, Weight> half_edges;
  std::vector<TargetEdge> edges;
  for (BlockID u = 0; u < k; ++u) {
    if (!reader.next(line)) {
      fail(ErrorCode::malformed_header,
           "line " + std::to_string(reader.line_number + 1) + ": missing adjacency line");
    }
    const auto values = parse_ints(line, reader.line_number, ErrorCode::malformed_header);
    if (values.size() % 2 != 0) {
      fail(ErrorCode::malformed_header,
           "line " + std::to_string(reader.line_number) + ": expected neighbor/weight pairs");
    }
    for (std::size_t i = 0; i < values.size(); i += 2) {
      if (values[i] < 1 || values[i] > static_cast<std::int64_t>(k)) {
        fail(ErrorCode::malformed_header,
             "line " + std::to_string(reader.line_number) + ": neighbor out of range");
      }
      const BlockID v = static_cast<BlockID>(values[i] - 1);
      const Weight w = values[i + 1];
      if (v == u || w <= 0) {
        fail(ErrorCode::malformed_header,
             "line " + std::to_string(reader.line_number) + ": invalid edge");
      }
      if (u < v) {
        half_edges[{u, v}] = w;
      } else {
        const auto it = half_edges.find({v, u});
        if (it == half_edges.end() || it->second != w) {
          fail(ErrorCode::asymmetric_edge,
               "line " + std::to_string(reader.line_number) + ": edge " + std::to_string(u + 1) +
                   "-" + std::to_string(v + 1) + " is asymmetric");
        }
        edges.push_back({v, u, w});
        half_edges.erase(it);
      }
    }
  }
  if (!half_edges.empty()) {
    fail(ErrorCode::asymmetric_edge, "some edges lack their reverse direction");
  }
  if (edges.size() != num_edges) {
    fail(ErrorCode::malformed_header, "edge count does not match the header");
  }
  return TargetGraph(k, std::move(edges)); // throws on disconnected input
}

TargetGraph generate_grid(const BlockID rows, const BlockID cols,
                          const std::uint64_t weight_seed) {
  Lcg64 rng(weight_seed);
  std::vector<TargetEdge> edges;
  for (BlockID r = 0; r < rows; ++r) {
    for (BlockID c = 0; c < cols; ++c) {
      const BlockID id = r * cols + c;
      if (c + 1 < cols) {
        edges.push_back({id, id + 1, rng.uniform(1, 10)});
      }
      if (r + 1 < rows) {
        edges.push_back({id, id + cols, rng.uniform(1, 10)});
      }
    }
  }
  return TargetGraph(rows * cols, std::move(edges));
}

TargetGraph generate_hierarchy(const std::vector<BlockID> &arity,
                               const std::vector<Weight> &costs) {
  if (arity.empty() || arity.size() != costs.size()) {
    fail(ErrorCode::config, "hierarchy needs matching arity and cost sequences");
  }
  BlockID k = 1;
  for (const BlockID a : arity) {
    if (a == 0) {
      fail(ErrorCode::config, "hierarchy arities must be positive");
    }
    k *= a;
  }
  std::vector<TargetEdge> edges;
  for (BlockID u = 0; u < k; ++u) {
    for (BlockID v = u + 1; v < k; ++v) {
      BlockID group = 1;
      Weight cost = costs.back();
      for (std::size_t level = 0; level < arity.size(); ++level) {
        group *= arity[level];
        if (u / group == v / group) {
          cost = costs[level];
          break;
        }
      }
      edges.push_back({u, v, cost});
    }
  }
  return TargetGraph(k, std::move(edges));
}

TargetGraph generate_complete(const BlockID k) {
  std::vector<TargetEdge> edges;
  for (BlockID u = 0; u < k; ++u) {
    for (BlockID v = u + 1; v < k; ++v) {
      edges.push_back({u, v, 1});
    }
  }
  return TargetGraph(k, std::move(edges));
}

std::string write_mapping(std::span<const BlockID> assignment) {
  std::string out;
  for (const BlockID b : assignment) {
    out += std::to_string(b);
    out += '\n';
  }
  return out;
}

std::vector<BlockID> parse_mapping(const std::string_view text, const NodeID num_nodes,
                                   const BlockID num_blocks) {
  LineReader reader{text};
  std::string_view line;
  std::vector<BlockID> assignment;
  while (reader.next(line)) {
    const auto values = parse_ints(line, reader.line_number, ErrorCode::length_mismatch);
    for (const std::int64_t value : values) {
      if (value < 0 || value >= static_cast<std::int64_t>(num_blocks)) {
        fail(ErrorCode::invalid_block,
             "line " + std::to_string(reader.line_number) + ": block id out of range");
      }
      assignment.push_back(static_cast<BlockID>(value));
    }
  }
  if (assignment.size() != num_nodes) {
    fail(ErrorCode::length_mismatch, "mapping has " + std::to_string(assignment.size()) +
                                         " entries, expected " + std::to_string(num_nodes));
  }
  return assignment;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorCode::io, "cannot open " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string &path, const std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    fail(ErrorCode::io, "cannot open " + path + " for writing");
  }
  out << contents;
  if (!out) {
    fail(ErrorCode::io, "failed to write " + path);
  }
}

} // namespace steinermap

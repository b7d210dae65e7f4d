#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "osnim/graph.hpp"

namespace osnim {

enum class Orientation {
  propagation,  // "u v": v follows u (arc u -> v)
  follows,      // "u v": u follows v (reversed on load)
};

struct LoadedGraph {
  SocialGraph graph;
  // external_ids[internal] = id as written in the input.
  std::vector<std::uint64_t> external_ids;
};

// Whitespace-separated "src dst" pairs, one per line; '#' starts a comment.
// External ids are compacted to [0, n) in ascending order.
LoadedGraph load_edgelist(std::istream& in, Orientation orientation = Orientation::propagation);
LoadedGraph load_edgelist(const std::filesystem::path& path,
                          Orientation orientation = Orientation::propagation);

// Writes internal ids in propagation orientation.
void write_edgelist(std::ostream& out, const SocialGraph& graph);

// CSV "external_id,internal_id".
void write_id_map(std::ostream& out, const std::vector<std::uint64_t>& external_ids);
std::vector<std::uint64_t> read_id_map(std::istream& in);

// Binary adjacency cache: "CBG1", u64 node count, u64 arc count,
// u64 offsets[node_count + 1], u32 targets[arc_count]; little-endian.
void write_binary_cache(std::ostream& out, const SocialGraph& graph);
SocialGraph read_binary_cache(std::istream& in);

// Dispatches on the leading magic bytes.
LoadedGraph load_graph_file(const std::filesystem::path& path,
                            Orientation orientation = Orientation::propagation);

}  // namespace osnim

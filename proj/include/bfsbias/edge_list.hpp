// edge_list.hpp -- whitespace-separated edge-list files, with id remapping.

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "bfsbias/graph.hpp"

namespace bfsbias {

struct EdgeListResult {
  Graph graph;  // simple, undirected
  // internal id -> external id, ascending; identity iff ids_were_dense.
  std::vector<std::int64_t> external_ids;
  std::size_t dropped_self_loops = 0;
  std::size_t dropped_duplicates = 0;
  bool ids_were_dense = false;  // external ids were exactly 0..n-1
};

// Reads "u v" per line; blank lines and lines starting with '#' are ignored.
// Ids are nonnegative integers, not necessarily contiguous: they are remapped
// to 0..n-1 in ascending order. Direction, duplicate edges (either
// orientation) and self-loops are collapsed/dropped, with counts reported.
// Malformed lines raise std::runtime_error naming the file and line number.
EdgeListResult read_edge_list(const std::filesystem::path& path);

// Writes one "u v" line per edge with u < v, sorted lexicographically.
// Requires a simple graph (internal ids are written).
void write_edge_list(const Graph& g, const std::filesystem::path& path);

// CSV "external_id,internal_id" companion for remapped reads.
void write_id_map(const EdgeListResult& r, const std::filesystem::path& path);

}  // namespace bfsbias

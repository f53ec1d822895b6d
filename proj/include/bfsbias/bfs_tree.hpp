// bfs_tree.hpp -- single-source BFS spanning trees with randomized tie-breaking,
// and the coupled variant that tags vertices with an arrival-time proxy.

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "bfsbias/graph.hpp"

namespace bfsbias {

// BFS tree of the component containing root. Arrays are indexed by vertex;
// vertices outside the component have discovery_rank == -1, parent == -1 and
// tree_degree == 0. The root also has parent == -1 but discovery_rank == 0.
struct SampledTree {
  VertexId root = 0;
  std::vector<std::int64_t> parent;
  std::vector<std::int64_t> discovery_rank;  // 0 = root, then discovery order
  std::vector<std::uint32_t> tree_degree;    // children + (1 parent edge unless root)
  std::size_t covered = 0;                   // discovered vertex count
};

// Classic FIFO BFS; each vertex's neighbor list is scanned in an independently
// seeded uniformly random order (stream = substream(seed-derived id, vertex)),
// so ties inside a BFS level are broken uniformly. Deterministic in (g, root,
// seed). Requires root < g.order().
SampledTree bfs_tree(const Graph& g, VertexId root, std::uint64_t seed);

// One row per non-root discovered vertex of a coupled run.
struct VisibilityRecord {
  VertexId vertex = 0;
  std::uint32_t graph_degree = 0;
  double time_index = 0.0;         // max of deg(v) i.i.d. U[0,1) marks
  std::uint32_t visible_children = 0;  // tree children of v
};

struct CoupledSample {
  SampledTree tree;
  std::vector<VisibilityRecord> records;  // in discovery order
};

// Same BFS law as bfs_tree, but randomness is carried by edge-endpoint marks:
// every adjacency slot draws an i.i.d. U[0,1) mark, and a vertex scans edge
// {u,w} in decreasing order of the mark on w's side (so the marks steering a
// vertex's scan order are disjoint from those steering any other vertex's,
// keeping the scan orders independent and uniform). A vertex's time index is
// the max of its own marks -- marginally distributed as t^deg(v) -- and a high
// own mark places the vertex early in the matching neighbor's scan order, so
// high-time_index vertices are discovered earlier and keep more of their
// neighborhood unclaimed. That coupling is what the records expose.
CoupledSample coupled_bfs(const Graph& g, VertexId root, std::uint64_t seed);

// Graph-dependent (seed-independent) slot layout used by coupled_bfs: slot
// offset[v]+j holds v's j-th adjacency entry, and reverse_slot maps each slot
// to the same edge instance seen from the other endpoint. Build once per
// graph when running many coupled samples.
struct EdgePairing {
  std::vector<std::size_t> offset;        // size order()+1
  std::vector<std::size_t> reverse_slot;  // size 2 * edge count
};
EdgePairing build_edge_pairing(const Graph& g);
CoupledSample coupled_bfs(const Graph& g, const EdgePairing& pairing, VertexId root,
                          std::uint64_t seed);

// Tree-degree counts over discovered vertices (root included).
std::map<std::int64_t, std::size_t> tree_degree_histogram(const SampledTree& t);

}  // namespace bfsbias

// pooling.hpp -- many BFS runs from a root set, reduced into shared
// accumulators. Each kernel exists twice: a plain serial reference and an
// OpenMP variant. Results are bitwise identical across thread counts: the
// tree-stat accumulators are integers (associative addition), and the
// floating-point visibility sums are accumulated per root and merged in root
// order.

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "bfsbias/graph.hpp"

namespace bfsbias {

// Per-graph-degree tallies over non-root discovered vertices, pooled across
// roots. Indexed by graph degree; all counters are integers on purpose (see
// header note). at_least_threshold counts tree degrees reaching the
// concentration threshold i(i-1)/(2(i+3)) and stays 0 for degrees < 2.
struct TreeStatsPool {
  std::vector<std::uint64_t> observations;
  std::vector<std::uint64_t> sum_tree_degree;
  std::vector<std::uint64_t> sum_children;
  std::vector<std::uint64_t> at_least_threshold;
  std::size_t roots = 0;

  void merge(const TreeStatsPool& other);
};

// One BFS tree per entry of roots (repeats allowed; each entry gets its own
// derived seed, so a repeated root yields a fresh tree). `stream` namespaces
// the runs under the caller's seed.
TreeStatsPool pool_tree_stats_serial(const Graph& g, std::span<const VertexId> roots,
                                     std::uint64_t seed, std::uint64_t stream);
TreeStatsPool pool_tree_stats(const Graph& g, std::span<const VertexId> roots,
                              std::uint64_t seed, std::uint64_t stream, int threads);

// Coupled-BFS visibility records bucketed by time index: bin b covers
// [b/bins, (b+1)/bins). Only records with graph_degree >= 2 contribute a
// children/(degree-1) ratio.
struct VisibilityPool {
  std::vector<std::uint64_t> records;  // per bin
  std::vector<double> ratio_sum;       // per bin
  std::size_t roots = 0;

  void merge(const VisibilityPool& other);
};

VisibilityPool pool_visibility_serial(const Graph& g, std::span<const VertexId> roots,
                                      std::size_t bins, std::uint64_t seed,
                                      std::uint64_t stream);
VisibilityPool pool_visibility(const Graph& g, std::span<const VertexId> roots,
                               std::size_t bins, std::uint64_t seed,
                               std::uint64_t stream, int threads);

// Tree-degree histogram of each root's tree, in root order.
std::vector<std::map<std::int64_t, std::size_t>> pool_tree_histograms_serial(
    const Graph& g, std::span<const VertexId> roots, std::uint64_t seed,
    std::uint64_t stream);
std::vector<std::map<std::int64_t, std::size_t>> pool_tree_histograms(
    const Graph& g, std::span<const VertexId> roots, std::uint64_t seed,
    std::uint64_t stream, int threads);

// Thread-count resolution: n > 0 passes through; 0 means "all available"
// (OpenMP's default device limit, 1 when built without OpenMP).
int resolve_threads(int requested);

}  // namespace bfsbias

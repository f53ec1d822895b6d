#include "bfsbias/pooling.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bfsbias/analytic.hpp"
#include "bfsbias/bfs_tree.hpp"
#include "bfsbias/rng.hpp"

namespace bfsbias {

namespace {

std::uint64_t tree_seed(std::uint64_t seed, std::uint64_t stream, std::size_t index) {
  return substream(substream(stream, index), seed);
}

void grow_to(TreeStatsPool& pool, std::size_t size) {
  if (pool.observations.size() >= size) return;
  pool.observations.resize(size, 0);
  pool.sum_tree_degree.resize(size, 0);
  pool.sum_children.resize(size, 0);
  pool.at_least_threshold.resize(size, 0);
}

void accumulate_tree(const Graph& g, const SampledTree& t,
                     const std::vector<double>& thresholds, TreeStatsPool& pool) {
  for (std::size_t v = 0; v < g.order(); ++v) {
    if (t.discovery_rank[v] <= 0) continue;  // skip root and undiscovered
    const std::size_t d = g.degree(static_cast<VertexId>(v));
    pool.observations[d] += 1;
    pool.sum_tree_degree[d] += t.tree_degree[v];
    pool.sum_children[d] += t.tree_degree[v] - 1;  // parent edge removed
    if (d >= 2 && static_cast<double>(t.tree_degree[v]) >= thresholds[d])
      pool.at_least_threshold[d] += 1;
  }
  pool.roots += 1;
}

std::vector<double> threshold_table(const Graph& g) {
  std::size_t max_degree = 0;
  for (std::size_t v = 0; v < g.order(); ++v)
    max_degree = std::max(max_degree, g.degree(static_cast<VertexId>(v)));
  std::vector<double> thresholds(max_degree + 1, 0.0);
  for (std::size_t d = 2; d <= max_degree; ++d)
    thresholds[d] = chernoff_threshold_and_eps(static_cast<std::int64_t>(d)).threshold;
  return thresholds;
}

void accumulate_visibility(const CoupledSample& s, std::size_t bins,
                           VisibilityPool& pool) {
  for (const VisibilityRecord& rec : s.records) {
    if (rec.graph_degree < 2) continue;
    auto b = static_cast<std::size_t>(rec.time_index * static_cast<double>(bins));
    b = std::min(b, bins - 1);
    pool.records[b] += 1;
    pool.ratio_sum[b] += static_cast<double>(rec.visible_children) /
                         static_cast<double>(rec.graph_degree - 1);
  }
  pool.roots += 1;
}

}  // namespace

int resolve_threads(int requested) {
  if (requested < 0)
    throw std::invalid_argument("threads must be >= 0 (0 = all available)");
  if (requested > 0) return requested;
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void TreeStatsPool::merge(const TreeStatsPool& other) {
  grow_to(*this, other.observations.size());
  for (std::size_t d = 0; d < other.observations.size(); ++d) {
    observations[d] += other.observations[d];
    sum_tree_degree[d] += other.sum_tree_degree[d];
    sum_children[d] += other.sum_children[d];
    at_least_threshold[d] += other.at_least_threshold[d];
  }
  roots += other.roots;
}

void VisibilityPool::merge(const VisibilityPool& other) {
  if (records.size() != other.records.size())
    throw std::invalid_argument("VisibilityPool::merge: bin counts differ");
  for (std::size_t b = 0; b < records.size(); ++b) {
    records[b] += other.records[b];
    ratio_sum[b] += other.ratio_sum[b];
  }
  roots += other.roots;
}

TreeStatsPool pool_tree_stats_serial(const Graph& g, std::span<const VertexId> roots,
                                     std::uint64_t seed, std::uint64_t stream) {
  const std::vector<double> thresholds = threshold_table(g);
  TreeStatsPool pool;
  grow_to(pool, thresholds.size());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const SampledTree t = bfs_tree(g, roots[i], tree_seed(seed, stream, i));
    accumulate_tree(g, t, thresholds, pool);
  }
  return pool;
}

TreeStatsPool pool_tree_stats(const Graph& g, std::span<const VertexId> roots,
                              std::uint64_t seed, std::uint64_t stream, int threads) {
  const int t = resolve_threads(threads);
  if (t == 1) return pool_tree_stats_serial(g, roots, seed, stream);

  const std::vector<double> thresholds = threshold_table(g);
  TreeStatsPool pool;
  grow_to(pool, thresholds.size());
  // Integer accumulators make the merge associative, so any merge order
  // yields the same bits; no per-root partials needed.
#pragma omp parallel num_threads(t)
  {
    TreeStatsPool local;
    grow_to(local, thresholds.size());
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(roots.size()); ++i) {
      const SampledTree tree =
          bfs_tree(g, roots[static_cast<std::size_t>(i)],
                   tree_seed(seed, stream, static_cast<std::size_t>(i)));
      accumulate_tree(g, tree, thresholds, local);
    }
#pragma omp critical(bfsbias_pool_tree_stats)
    pool.merge(local);
  }
  return pool;
}

VisibilityPool pool_visibility_serial(const Graph& g, std::span<const VertexId> roots,
                                      std::size_t bins, std::uint64_t seed,
                                      std::uint64_t stream) {
  if (bins == 0)
    throw std::invalid_argument("pool_visibility: bins must be positive");
  const EdgePairing pairing = build_edge_pairing(g);
  VisibilityPool pool;
  pool.records.assign(bins, 0);
  pool.ratio_sum.assign(bins, 0.0);
  // Mirror the parallel kernel's per-root partial sums so the floating-point
  // addition order (within a root, then root by root) is identical and the
  // results match bitwise.
  for (std::size_t i = 0; i < roots.size(); ++i) {
    VisibilityPool partial;
    partial.records.assign(bins, 0);
    partial.ratio_sum.assign(bins, 0.0);
    const CoupledSample s = coupled_bfs(g, pairing, roots[i], tree_seed(seed, stream, i));
    accumulate_visibility(s, bins, partial);
    pool.merge(partial);
  }
  return pool;
}

VisibilityPool pool_visibility(const Graph& g, std::span<const VertexId> roots,
                               std::size_t bins, std::uint64_t seed,
                               std::uint64_t stream, int threads) {
  const int t = resolve_threads(threads);
  if (t == 1) return pool_visibility_serial(g, roots, bins, seed, stream);
  if (bins == 0)
    throw std::invalid_argument("pool_visibility: bins must be positive");

  // ratio_sum is floating point, so merge order matters: store one partial
  // pool per root and fold them in root order afterwards.
  const EdgePairing pairing = build_edge_pairing(g);
  std::vector<VisibilityPool> partial(roots.size());
#pragma omp parallel for schedule(static) num_threads(t)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(roots.size()); ++i) {
    auto& p = partial[static_cast<std::size_t>(i)];
    p.records.assign(bins, 0);
    p.ratio_sum.assign(bins, 0.0);
    const CoupledSample s =
        coupled_bfs(g, pairing, roots[static_cast<std::size_t>(i)],
                    tree_seed(seed, stream, static_cast<std::size_t>(i)));
    accumulate_visibility(s, bins, p);
  }

  VisibilityPool pool;
  pool.records.assign(bins, 0);
  pool.ratio_sum.assign(bins, 0.0);
  for (const VisibilityPool& p : partial) pool.merge(p);
  return pool;
}

std::vector<std::map<std::int64_t, std::size_t>> pool_tree_histograms_serial(
    const Graph& g, std::span<const VertexId> roots, std::uint64_t seed,
    std::uint64_t stream) {
  std::vector<std::map<std::int64_t, std::size_t>> out(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i)
    out[i] = tree_degree_histogram(bfs_tree(g, roots[i], tree_seed(seed, stream, i)));
  return out;
}

std::vector<std::map<std::int64_t, std::size_t>> pool_tree_histograms(
    const Graph& g, std::span<const VertexId> roots, std::uint64_t seed,
    std::uint64_t stream, int threads) {
  const int t = resolve_threads(threads);
  if (t == 1) return pool_tree_histograms_serial(g, roots, seed, stream);
  std::vector<std::map<std::int64_t, std::size_t>> out(roots.size());
#pragma omp parallel for schedule(static) num_threads(t)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(roots.size()); ++i)
    out[static_cast<std::size_t>(i)] = tree_degree_histogram(
        bfs_tree(g, roots[static_cast<std::size_t>(i)],
                 tree_seed(seed, stream, static_cast<std::size_t>(i))));
  return out;
}

}  // namespace bfsbias

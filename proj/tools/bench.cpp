// Benchmark of the pooled BFS kernels: serial reference vs OpenMP variant,
// with a bitwise-equality check so the speedup numbers are for identical work.
//
// Usage: bfsbias_bench [n] [roots] [gamma] [seed]

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "bfsbias/config_model.hpp"
#include "bfsbias/degree_distribution.hpp"
#include "bfsbias/graph.hpp"
#include "bfsbias/pooling.hpp"
#include "bfsbias/rng.hpp"

using namespace bfsbias;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <typename F>
double timed(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return seconds_since(start);
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n = 200000;
  std::size_t n_roots = 400;
  double gamma = 2.5;
  std::uint64_t seed = 1;
  if (argc > 1) n = std::stoull(argv[1]);
  if (argc > 2) n_roots = std::stoull(argv[2]);
  if (argc > 3) gamma = std::stod(argv[3]);
  if (argc > 4) seed = std::stoull(argv[4]);

  const int threads = resolve_threads(0);
  std::cout << "graph: gamma=" << gamma << " n=" << n << " seed=" << seed
            << "; roots=" << n_roots << "; threads=" << threads << "\n";

  const DegreeDistribution dist =
      DegreeDistribution::power_law(gamma, static_cast<std::int64_t>(n) - 1);
  const std::vector<std::int64_t> degrees = sample_degree_sequence(dist, n, seed);
  Graph full = configuration_model(degrees, seed, /*simplify=*/true);
  const GiantComponent giant = giant_component(full);
  const Graph& g = giant.graph;
  std::cout << "giant component: " << g.order() << " vertices, " << g.size()
            << " edges\n";

  std::vector<VertexId> roots(n_roots);
  Rng rng(seed, streams::kRootSelection);
  for (VertexId& r : roots) r = static_cast<VertexId>(rng.next_below(g.order()));

  // --- tree-stat pooling ----------------------------------------------------
  TreeStatsPool serial_stats, parallel_stats;
  const double t_stats_serial =
      timed([&] { serial_stats = pool_tree_stats_serial(g, roots, seed, streams::kValidator); });
  const double t_stats_parallel = timed(
      [&] { parallel_stats = pool_tree_stats(g, roots, seed, streams::kValidator, 0); });
  const bool stats_equal = serial_stats.observations == parallel_stats.observations &&
                           serial_stats.sum_tree_degree == parallel_stats.sum_tree_degree &&
                           serial_stats.sum_children == parallel_stats.sum_children &&
                           serial_stats.at_least_threshold == parallel_stats.at_least_threshold;
  std::cout << "pool_tree_stats   serial " << t_stats_serial << " s, parallel "
            << t_stats_parallel << " s, speedup " << t_stats_serial / t_stats_parallel
            << "x, results " << (stats_equal ? "identical" : "DIFFER") << "\n";

  // --- visibility pooling ---------------------------------------------------
  VisibilityPool serial_vis, parallel_vis;
  const double t_vis_serial = timed([&] {
    serial_vis = pool_visibility_serial(g, roots, 20, seed, streams::kVisibilityValidator);
  });
  const double t_vis_parallel = timed([&] {
    parallel_vis = pool_visibility(g, roots, 20, seed, streams::kVisibilityValidator, 0);
  });
  const bool vis_equal = serial_vis.records == parallel_vis.records &&
                         serial_vis.ratio_sum == parallel_vis.ratio_sum;
  std::cout << "pool_visibility   serial " << t_vis_serial << " s, parallel "
            << t_vis_parallel << " s, speedup " << t_vis_serial / t_vis_parallel
            << "x, results " << (vis_equal ? "identical" : "DIFFER") << "\n";

  // --- per-root histograms --------------------------------------------------
  std::vector<std::map<std::int64_t, std::size_t>> serial_hist, parallel_hist;
  const double t_hist_serial = timed(
      [&] { serial_hist = pool_tree_histograms_serial(g, roots, seed, streams::kTreeSampling); });
  const double t_hist_parallel = timed(
      [&] { parallel_hist = pool_tree_histograms(g, roots, seed, streams::kTreeSampling, 0); });
  const bool hist_equal = serial_hist == parallel_hist;
  std::cout << "pool_histograms   serial " << t_hist_serial << " s, parallel "
            << t_hist_parallel << " s, speedup " << t_hist_serial / t_hist_parallel
            << "x, results " << (hist_equal ? "identical" : "DIFFER") << "\n";

  if (!(stats_equal && vis_equal && hist_equal)) {
    std::cerr << "ERROR: serial and parallel kernels disagree\n";
    return 1;
  }
  return 0;
}

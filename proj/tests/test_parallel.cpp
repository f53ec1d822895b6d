#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "bfsbias/config_model.hpp"
#include "bfsbias/degree_distribution.hpp"
#include "bfsbias/graph.hpp"
#include "bfsbias/pooling.hpp"

using namespace bfsbias;

namespace {

// Giant component of a gamma=2.5 configuration-model graph, plus a root set
// spread across it (with one deliberate repeat).
struct Fixture {
  Graph graph;
  std::vector<VertexId> roots;
};

Fixture make_fixture() {
  const DegreeDistribution dist = DegreeDistribution::power_law(2.5, 200);
  const std::vector<std::int64_t> degrees = sample_degree_sequence(dist, 20000, 60601);
  const GiantComponent giant = giant_component(configuration_model(degrees, 60601, true));
  Fixture f;
  f.graph = giant.graph;
  for (std::size_t v = 0; v < f.graph.order(); v += 97)
    f.roots.push_back(static_cast<VertexId>(v));
  f.roots.push_back(f.roots.front());  // repeated root: must get a fresh tree
  return f;
}

const Fixture& fixture() {
  static const Fixture f = make_fixture();
  return f;
}

constexpr std::uint64_t kSeed = 12345;
constexpr std::uint64_t kStream = 7;

}  // namespace

TEST_CASE("tree-stat pools are bitwise identical across thread counts") {
  const Fixture& f = fixture();
  const TreeStatsPool ref = pool_tree_stats_serial(f.graph, f.roots, kSeed, kStream);
  REQUIRE(ref.roots == f.roots.size());

  std::uint64_t total_obs = 0, total_tree_degree = 0, total_children = 0;
  for (std::size_t d = 0; d < ref.observations.size(); ++d) {
    total_obs += ref.observations[d];
    total_tree_degree += ref.sum_tree_degree[d];
    total_children += ref.sum_children[d];
    CHECK(ref.at_least_threshold[d] <= ref.observations[d]);
  }
  CHECK(total_obs > 0);
  // Every non-root observation spends one tree edge on its parent.
  CHECK(total_children == total_tree_degree - total_obs);

  for (const int threads : {1, 2, 3, 8}) {
    const TreeStatsPool p = pool_tree_stats(f.graph, f.roots, kSeed, kStream, threads);
    CHECK(p.observations == ref.observations);
    CHECK(p.sum_tree_degree == ref.sum_tree_degree);
    CHECK(p.sum_children == ref.sum_children);
    CHECK(p.at_least_threshold == ref.at_least_threshold);
    CHECK(p.roots == ref.roots);
  }
}

TEST_CASE("visibility pools are bitwise identical across thread counts") {
  const Fixture& f = fixture();
  constexpr std::size_t kBins = 16;
  const VisibilityPool ref =
      pool_visibility_serial(f.graph, f.roots, kBins, kSeed, kStream);
  REQUIRE(ref.records.size() == kBins);
  REQUIRE(ref.ratio_sum.size() == kBins);

  std::uint64_t total = 0;
  for (std::size_t b = 0; b < kBins; ++b) {
    total += ref.records[b];
    // Each record contributes a ratio in [0, 1].
    CHECK(ref.ratio_sum[b] >= 0.0);
    CHECK(ref.ratio_sum[b] <= static_cast<double>(ref.records[b]));
  }
  CHECK(total > 0);

  for (const int threads : {1, 2, 3, 8}) {
    const VisibilityPool p =
        pool_visibility(f.graph, f.roots, kBins, kSeed, kStream, threads);
    CHECK(p.records == ref.records);
    CHECK(p.ratio_sum == ref.ratio_sum);  // exact double equality by design
    CHECK(p.roots == ref.roots);
  }
}

TEST_CASE("per-root histograms are identical across thread counts") {
  const Fixture& f = fixture();
  const auto ref = pool_tree_histograms_serial(f.graph, f.roots, kSeed, kStream);
  REQUIRE(ref.size() == f.roots.size());
  for (const auto& hist : ref) CHECK_FALSE(hist.empty());

  for (const int threads : {1, 2, 3, 8}) {
    const auto p = pool_tree_histograms(f.graph, f.roots, kSeed, kStream, threads);
    CHECK(p == ref);
  }
}

TEST_CASE("a repeated root gets a fresh tree, not a copy") {
  const Fixture& f = fixture();
  const auto hists = pool_tree_histograms_serial(f.graph, f.roots, kSeed, kStream);
  // The last root repeats the first; their trees come from different derived
  // seeds and (for this fixture) differ.
  CHECK(f.roots.back() == f.roots.front());
  CHECK(hists.back() != hists.front());
}

TEST_CASE("pool merges add counter-wise and validate bin shape") {
  TreeStatsPool a;
  a.observations = {0, 2, 5};
  a.sum_tree_degree = {0, 2, 9};
  a.sum_children = {0, 0, 4};
  a.at_least_threshold = {0, 0, 3};
  a.roots = 2;
  TreeStatsPool b;
  b.observations = {1, 1, 1, 7};
  b.sum_tree_degree = {0, 1, 2, 21};
  b.sum_children = {0, 0, 1, 14};
  b.at_least_threshold = {0, 0, 1, 6};
  b.roots = 1;
  a.merge(b);  // grows to the larger degree range
  CHECK(a.observations == std::vector<std::uint64_t>{1, 3, 6, 7});
  CHECK(a.sum_tree_degree == std::vector<std::uint64_t>{0, 3, 11, 21});
  CHECK(a.sum_children == std::vector<std::uint64_t>{0, 0, 5, 14});
  CHECK(a.at_least_threshold == std::vector<std::uint64_t>{0, 0, 4, 6});
  CHECK(a.roots == 3);

  VisibilityPool va, vb;
  va.records.assign(4, 1);
  va.ratio_sum.assign(4, 0.5);
  vb.records.assign(8, 1);
  vb.ratio_sum.assign(8, 0.5);
  CHECK_THROWS_AS(va.merge(vb), std::invalid_argument);
}

TEST_CASE("thread resolution and bin validation") {
  CHECK(resolve_threads(3) == 3);
  CHECK(resolve_threads(1) == 1);
  CHECK(resolve_threads(0) >= 1);
  CHECK_THROWS_AS(resolve_threads(-1), std::invalid_argument);

  const Fixture& f = fixture();
  CHECK_THROWS_AS(pool_visibility_serial(f.graph, f.roots, 0, kSeed, kStream),
                  std::invalid_argument);
  CHECK_THROWS_AS(pool_visibility(f.graph, f.roots, 0, kSeed, kStream, 4),
                  std::invalid_argument);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <vector>

#include "bfsbias/bfs_tree.hpp"
#include "bfsbias/config_model.hpp"
#include "bfsbias/degree_distribution.hpp"
#include "bfsbias/graph.hpp"
#include "bfsbias/rng.hpp"

using namespace bfsbias;

namespace {

Graph star(std::size_t leaves) {
  std::vector<std::vector<VertexId>> adj(leaves + 1);
  for (VertexId leaf = 1; leaf <= leaves; ++leaf) {
    adj[0].push_back(leaf);
    adj[leaf].push_back(0);
  }
  return Graph(std::move(adj), true);
}

Graph cycle(std::size_t n) {
  std::vector<std::vector<VertexId>> adj(n);
  for (VertexId v = 0; v < n; ++v) {
    const auto next = static_cast<VertexId>((v + 1) % n);
    adj[v].push_back(next);
    adj[next].push_back(v);
  }
  return Graph(std::move(adj), true);
}

Graph path(std::size_t n) {
  std::vector<std::vector<VertexId>> adj(n);
  for (VertexId v = 0; v + 1 < n; ++v) {
    adj[v].push_back(v + 1);
    adj[v + 1].push_back(v);
  }
  return Graph(std::move(adj), true);
}

// Deterministic reference BFS distances (adjacency order, no randomization).
std::vector<std::int64_t> bfs_distances(const Graph& g, VertexId root) {
  std::vector<std::int64_t> dist(g.order(), -1);
  std::queue<VertexId> q;
  dist[root] = 0;
  q.push(root);
  while (!q.empty()) {
    const VertexId u = q.front();
    q.pop();
    for (const VertexId w : g.neighbors(u)) {
      if (dist[w] == -1) {
        dist[w] = dist[u] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

std::int64_t tree_depth(const SampledTree& t, VertexId v) {
  std::int64_t depth = 0;
  while (t.parent[v] != -1) {
    v = static_cast<VertexId>(t.parent[v]);
    ++depth;
  }
  return depth;
}

void check_tree_invariants(const Graph& g, const SampledTree& t) {
  REQUIRE(t.parent.size() == g.order());
  REQUIRE(t.discovery_rank.size() == g.order());
  REQUIRE(t.tree_degree.size() == g.order());
  CHECK(t.discovery_rank[t.root] == 0);
  CHECK(t.parent[t.root] == -1);

  const std::vector<std::int64_t> dist = bfs_distances(g, t.root);
  std::size_t discovered = 0, tree_edges = 0;
  std::size_t degree_sum = 0;
  std::set<std::int64_t> ranks;
  for (VertexId v = 0; v < g.order(); ++v) {
    if (t.discovery_rank[v] < 0) {
      CHECK(dist[v] == -1);  // undiscovered iff unreachable
      CHECK(t.parent[v] == -1);
      CHECK(t.tree_degree[v] == 0);
      continue;
    }
    ++discovered;
    CHECK(ranks.insert(t.discovery_rank[v]).second);  // ranks are unique
    CHECK(t.tree_degree[v] <= g.degree(v));
    degree_sum += t.tree_degree[v];
    if (v != t.root) {
      REQUIRE(t.parent[v] >= 0);
      ++tree_edges;
      const auto p = static_cast<VertexId>(t.parent[v]);
      // The parent edge exists in the graph and respects BFS layering.
      const auto nb = g.neighbors(p);
      CHECK(std::find(nb.begin(), nb.end(), v) != nb.end());
      CHECK(t.discovery_rank[p] < t.discovery_rank[v]);
      CHECK(dist[v] == dist[p] + 1);
    }
    // Shortest-path-tree property against the oracle.
    CHECK(tree_depth(t, v) == dist[v]);
  }
  CHECK(t.covered == discovered);
  CHECK(tree_edges == discovered - 1);
  CHECK(degree_sum == 2 * tree_edges);
}

std::multiset<std::size_t> layer_sizes(const Graph& g, const SampledTree& t) {
  std::map<std::int64_t, std::size_t> by_depth;
  for (VertexId v = 0; v < g.order(); ++v)
    if (t.discovery_rank[v] >= 0) ++by_depth[tree_depth(t, v)];
  std::multiset<std::size_t> out;
  for (const auto& [depth, size] : by_depth) out.insert(size);
  return out;
}

}  // namespace

// --- structural cases --------------------------------------------------------

TEST_CASE("star from the center: one level of leaves") {
  const Graph g = star(4);
  const SampledTree t = bfs_tree(g, 0, 3);
  CHECK(t.covered == 5);
  CHECK(t.tree_degree[0] == 4);
  for (VertexId leaf = 1; leaf <= 4; ++leaf) {
    CHECK(t.parent[leaf] == 0);
    CHECK(t.tree_degree[leaf] == 1);
    CHECK(t.discovery_rank[leaf] > 0);
  }
  check_tree_invariants(g, t);
}

TEST_CASE("star from a leaf: the center keeps its full degree") {
  const Graph g = star(4);
  const SampledTree t = bfs_tree(g, 2, 3);
  CHECK(t.covered == 5);
  CHECK(t.parent[0] == 2);
  CHECK(t.tree_degree[0] == 4);  // 3 children + the parent edge
  CHECK(t.tree_degree[2] == 1);
  for (const VertexId leaf : {1u, 3u, 4u}) CHECK(t.parent[leaf] == 0);
  check_tree_invariants(g, t);
}

TEST_CASE("triangle: one edge stays invisible") {
  const Graph g = cycle(3);
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const SampledTree t = bfs_tree(g, 0, seed);
    CHECK(t.covered == 3);
    CHECK(t.parent[1] == 0);
    CHECK(t.parent[2] == 0);
    CHECK(t.tree_degree[0] == 2);
    CHECK(t.tree_degree[1] == 1);
    CHECK(t.tree_degree[2] == 1);
    check_tree_invariants(g, t);
  }
}

TEST_CASE("path graph: the tree is the path itself") {
  const Graph g = path(4);
  const SampledTree t = bfs_tree(g, 0, 1);
  for (VertexId v = 0; v < 4; ++v) CHECK(t.discovery_rank[v] == v);
  CHECK(t.tree_degree[0] == 1);
  CHECK(t.tree_degree[1] == 2);
  CHECK(t.tree_degree[2] == 2);
  CHECK(t.tree_degree[3] == 1);
  check_tree_invariants(g, t);
}

TEST_CASE("vertices outside the root's component stay untouched") {
  // Path 0-1 plus triangle 2-3-4.
  std::vector<std::vector<VertexId>> adj(5);
  adj[0] = {1};
  adj[1] = {0};
  adj[2] = {3, 4};
  adj[3] = {2, 4};
  adj[4] = {2, 3};
  const Graph g(std::move(adj), true);
  const SampledTree t = bfs_tree(g, 0, 5);
  CHECK(t.covered == 2);
  for (const VertexId v : {2u, 3u, 4u}) {
    CHECK(t.discovery_rank[v] == -1);
    CHECK(t.parent[v] == -1);
    CHECK(t.tree_degree[v] == 0);
  }
  check_tree_invariants(g, t);
}

// --- randomized properties ---------------------------------------------------

TEST_CASE("sampled trees satisfy the invariants on random graphs") {
  const DegreeDistribution dist = DegreeDistribution::power_law(2.5, 199);
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto degrees = sample_degree_sequence(dist, 150, seed);
    const Graph g = configuration_model(degrees, seed, seed % 2 == 0);
    const auto root = static_cast<VertexId>(seed % g.order());
    check_tree_invariants(g, bfs_tree(g, root, seed + 1000));
    const CoupledSample coupled = coupled_bfs(g, root, seed + 2000);
    check_tree_invariants(g, coupled.tree);
  }
}

TEST_CASE("trees are deterministic in (graph, root, seed)") {
  const DegreeDistribution dist = DegreeDistribution::power_law(2.5, 99);
  const auto degrees = sample_degree_sequence(dist, 80, 4);
  const Graph g = configuration_model(degrees, 4, true);
  const SampledTree a = bfs_tree(g, 0, 11);
  const SampledTree b = bfs_tree(g, 0, 11);
  CHECK(a.parent == b.parent);
  CHECK(a.discovery_rank == b.discovery_rank);
  CHECK(a.tree_degree == b.tree_degree);
}

TEST_CASE("layer-size multiset is seed-invariant") {
  const DegreeDistribution dist = DegreeDistribution::power_law(2.5, 299);
  const auto degrees = sample_degree_sequence(dist, 300, 6);
  const Graph g = configuration_model(degrees, 6, true);
  const VertexId root = 0;
  const auto reference = layer_sizes(g, bfs_tree(g, root, 0));
  for (std::uint64_t seed = 1; seed < 10; ++seed) {
    CHECK(layer_sizes(g, bfs_tree(g, root, seed)) == reference);
    CHECK(layer_sizes(g, coupled_bfs(g, root, seed).tree) == reference);
  }
}

TEST_CASE("tie-breaking within a level is uniform for both samplers") {
  // From the center of a 4-star, the first-discovered leaf must be uniform.
  const Graph g = star(4);
  const int trials = 40000;
  std::array<int, 5> plain_first{}, coupled_first{};
  for (int i = 0; i < trials; ++i) {
    const auto seed = static_cast<std::uint64_t>(i);
    const SampledTree t = bfs_tree(g, 0, seed);
    for (VertexId leaf = 1; leaf <= 4; ++leaf)
      if (t.discovery_rank[leaf] == 1) ++plain_first[leaf];
    const SampledTree ct = coupled_bfs(g, 0, seed).tree;
    for (VertexId leaf = 1; leaf <= 4; ++leaf)
      if (ct.discovery_rank[leaf] == 1) ++coupled_first[leaf];
  }
  for (VertexId leaf = 1; leaf <= 4; ++leaf) {
    CHECK(static_cast<double>(plain_first[leaf]) / trials ==
          doctest::Approx(0.25).epsilon(0.04));
    CHECK(static_cast<double>(coupled_first[leaf]) / trials ==
          doctest::Approx(0.25).epsilon(0.04));
  }
}

TEST_CASE("both samplers give the 4-cycle's far vertex either parent equally") {
  // On 0-1-2-3-0 rooted at 0, vertex 2's parent is whichever of {1,3} was
  // discovered first; a uniform scan order makes that a fair coin.
  const Graph g = cycle(4);
  const int trials = 20000;
  int plain_via_1 = 0, coupled_via_1 = 0;
  for (int i = 0; i < trials; ++i) {
    const auto seed = static_cast<std::uint64_t>(i);
    plain_via_1 += bfs_tree(g, 0, seed).parent[2] == 1;
    coupled_via_1 += coupled_bfs(g, 0, seed).tree.parent[2] == 1;
  }
  CHECK(static_cast<double>(plain_via_1) / trials == doctest::Approx(0.5).epsilon(0.03));
  CHECK(static_cast<double>(coupled_via_1) / trials == doctest::Approx(0.5).epsilon(0.03));
}

// --- coupled sampler ---------------------------------------------------------

TEST_CASE("coupled records cover exactly the non-root discovered vertices") {
  const DegreeDistribution dist = DegreeDistribution::power_law(2.5, 199);
  const auto degrees = sample_degree_sequence(dist, 200, 9);
  const Graph g = configuration_model(degrees, 9, true);
  const CoupledSample s = coupled_bfs(g, 3, 17);

  CHECK(s.records.size() == s.tree.covered - 1);
  std::int64_t last_rank = 0;
  std::set<VertexId> seen;
  for (const VisibilityRecord& rec : s.records) {
    CHECK(seen.insert(rec.vertex).second);
    CHECK(rec.vertex != s.tree.root);
    const std::int64_t rank = s.tree.discovery_rank[rec.vertex];
    CHECK(rank > last_rank);  // records arrive in discovery order
    last_rank = rank;
    CHECK(rec.graph_degree == g.degree(rec.vertex));
    CHECK(rec.time_index >= 0.0);
    CHECK(rec.time_index < 1.0);
    CHECK(rec.visible_children == s.tree.tree_degree[rec.vertex] - 1);
  }
}

TEST_CASE("coupled sampling is deterministic and pairing-independent") {
  const DegreeDistribution dist = DegreeDistribution::power_law(2.5, 99);
  const auto degrees = sample_degree_sequence(dist, 120, 2);
  const Graph g = configuration_model(degrees, 2, true);
  const EdgePairing pairing = build_edge_pairing(g);

  const CoupledSample a = coupled_bfs(g, 1, 5);
  const CoupledSample b = coupled_bfs(g, pairing, 1, 5);
  CHECK(a.tree.parent == b.tree.parent);
  CHECK(a.tree.discovery_rank == b.tree.discovery_rank);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].vertex == b.records[i].vertex);
    CHECK(a.records[i].time_index == b.records[i].time_index);
  }
}

TEST_CASE("edge pairing is an involution that crosses each edge") {
  const auto check_pairing = [](const Graph& g) {
    const EdgePairing p = build_edge_pairing(g);
    REQUIRE(p.offset.size() == g.order() + 1);
    REQUIRE(p.reverse_slot.size() == 2 * g.size());
    for (VertexId u = 0; u < g.order(); ++u) {
      CHECK(p.offset[u + 1] - p.offset[u] == g.degree(u));
      for (std::size_t j = 0; j < g.degree(u); ++j) {
        const std::size_t slot = p.offset[u] + j;
        const VertexId w = g.neighbors(u)[j];
        const std::size_t rev = p.reverse_slot[slot];
        CHECK(p.reverse_slot[rev] == slot);  // involution
        // The reverse slot belongs to w and points back at u.
        CHECK(rev >= p.offset[w]);
        CHECK(rev < p.offset[w + 1]);
        CHECK(g.neighbors(w)[rev - p.offset[w]] == u);
      }
    }
  };

  check_pairing(cycle(3));
  check_pairing(path(5));
  check_pairing(star(6));
  // Multigraph shapes: a double edge and a pair of self-loops.
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    check_pairing(configuration_model({2, 2}, seed, false));
  for (std::uint64_t seed = 0; seed < 10; ++seed)
    check_pairing(configuration_model({3, 3, 2, 4}, seed, false));
}

TEST_CASE("time index of a degree-5 vertex follows t^5 (KS at the 0.1% level)") {
  // K_{1,5} rooted at a leaf: the center is a non-root, degree-5 vertex, so
  // its time index must be the max of 5 independent uniforms.
  const Graph g = star(5);
  const std::size_t n = 20000;
  std::vector<double> samples;
  samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const CoupledSample s = coupled_bfs(g, 1, static_cast<std::uint64_t>(i));
    REQUIRE(s.records.front().vertex == 0);
    REQUIRE(s.records.front().graph_degree == 5);
    samples.push_back(s.records.front().time_index);
  }
  std::sort(samples.begin(), samples.end());
  double d_stat = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = std::pow(samples[i], 5.0);
    const double lo = static_cast<double>(i) / static_cast<double>(n);
    const double hi = static_cast<double>(i + 1) / static_cast<double>(n);
    d_stat = std::max({d_stat, std::abs(f - lo), std::abs(f - hi)});
  }
  // Asymptotic Kolmogorov critical value at alpha = 0.001.
  const double d_crit = 1.9494746035204051 / std::sqrt(static_cast<double>(n));
  CHECK(d_stat < d_crit);
}

TEST_CASE("tree-degree histogram counts discovered vertices only") {
  const Graph g = star(4);
  const SampledTree t = bfs_tree(g, 0, 1);
  const std::map<std::int64_t, std::size_t> hist = tree_degree_histogram(t);
  CHECK(hist.at(1) == 4);
  CHECK(hist.at(4) == 1);

  // Root in the 2-path component of a disconnected graph.
  std::vector<std::vector<VertexId>> adj(4);
  adj[0] = {1};
  adj[1] = {0};
  adj[2] = {3};
  adj[3] = {2};
  const SampledTree part = bfs_tree(Graph(std::move(adj), true), 0, 1);
  const auto part_hist = tree_degree_histogram(part);
  CHECK(part_hist.size() == 1);
  CHECK(part_hist.at(1) == 2);
}

TEST_CASE("invalid roots are rejected") {
  const Graph g = star(3);
  CHECK_THROWS_AS(bfs_tree(g, 99, 1), std::invalid_argument);
  CHECK_THROWS_AS(coupled_bfs(g, 99, 1), std::invalid_argument);
}

#include "bfsbias/bfs_tree.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "bfsbias/rng.hpp"

namespace bfsbias {

namespace {

// Internal stream tags under the caller-supplied seed.
constexpr std::uint64_t kScanOrderTag = 0x5C4E;  // bfs_tree neighbor shuffles
constexpr std::uint64_t kEdgeMarkTag = 0xED6E;   // coupled_bfs slot marks

SampledTree make_tree_shell(const Graph& g, VertexId root) {
  if (root >= g.order())
    throw std::invalid_argument("bfs: root out of range");
  SampledTree t;
  t.root = root;
  t.parent.assign(g.order(), -1);
  t.discovery_rank.assign(g.order(), -1);
  t.tree_degree.assign(g.order(), 0);
  return t;
}

// Shared BFS core: `scan` is called once per popped vertex and must fill
// `order` with that vertex's neighbors in the order they should be tried.
template <typename ScanFn>
void run_bfs(SampledTree& t, ScanFn&& scan) {
  std::vector<VertexId> queue;
  queue.reserve(64);
  queue.push_back(t.root);
  t.discovery_rank[t.root] = 0;
  std::int64_t next_rank = 1;
  std::vector<VertexId> order;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId v = queue[head];
    scan(v, order);
    for (VertexId w : order) {
      if (t.discovery_rank[w] != -1) continue;
      t.discovery_rank[w] = next_rank++;
      t.parent[w] = v;
      ++t.tree_degree[v];
      ++t.tree_degree[w];
      queue.push_back(w);
    }
  }
  t.covered = static_cast<std::size_t>(next_rank);
}

}  // namespace

SampledTree bfs_tree(const Graph& g, VertexId root, std::uint64_t seed) {
  SampledTree t = make_tree_shell(g, root);
  run_bfs(t, [&](VertexId v, std::vector<VertexId>& order) {
    const auto nbrs = g.neighbors(v);
    order.assign(nbrs.begin(), nbrs.end());
    Rng rng(seed, substream(kScanOrderTag, v));
    rng.shuffle(order);
  });
  return t;
}

EdgePairing build_edge_pairing(const Graph& g) {
  const std::size_t n = g.order();
  EdgePairing p;
  p.offset.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v)
    p.offset[v + 1] = p.offset[v] + g.degree(static_cast<VertexId>(v));
  const std::size_t slot_count = p.offset[n];

  // Sorting slots by (min endpoint, max endpoint, owner, slot) lines the two
  // sides of every edge instance up inside its {a,b}-block: a-side instance k
  // pairs with b-side instance k, and a self-loop block pairs consecutive
  // entries (its two slots are adjacent in the owner's list order).
  using SlotKey = std::tuple<VertexId, VertexId, VertexId, std::size_t>;
  std::vector<SlotKey> keys;
  keys.reserve(slot_count);
  for (std::size_t v = 0; v < n; ++v) {
    const auto nbrs = g.neighbors(static_cast<VertexId>(v));
    for (std::size_t j = 0; j < nbrs.size(); ++j) {
      const VertexId u = static_cast<VertexId>(v), w = nbrs[j];
      keys.emplace_back(std::min(u, w), std::max(u, w), u, p.offset[v] + j);
    }
  }
  std::sort(keys.begin(), keys.end());

  p.reverse_slot.assign(slot_count, 0);
  std::size_t i = 0;
  while (i < keys.size()) {
    const VertexId a = std::get<0>(keys[i]), b = std::get<1>(keys[i]);
    std::size_t j = i;
    while (j < keys.size() && std::get<0>(keys[j]) == a && std::get<1>(keys[j]) == b)
      ++j;
    if (a == b) {
      for (std::size_t k = i; k < j; k += 2) {
        p.reverse_slot[std::get<3>(keys[k])] = std::get<3>(keys[k + 1]);
        p.reverse_slot[std::get<3>(keys[k + 1])] = std::get<3>(keys[k]);
      }
    } else {
      const std::size_t half = (j - i) / 2;
      for (std::size_t k = 0; k < half; ++k) {
        p.reverse_slot[std::get<3>(keys[i + k])] = std::get<3>(keys[i + half + k]);
        p.reverse_slot[std::get<3>(keys[i + half + k])] = std::get<3>(keys[i + k]);
      }
    }
    i = j;
  }
  return p;
}

CoupledSample coupled_bfs(const Graph& g, const EdgePairing& pairing, VertexId root,
                          std::uint64_t seed) {
  CoupledSample out;
  out.tree = make_tree_shell(g, root);
  const std::size_t n = g.order();
  const auto& offset = pairing.offset;
  if (offset.size() != n + 1 || pairing.reverse_slot.size() != offset[n])
    throw std::invalid_argument("coupled_bfs: pairing does not match graph");

  std::vector<double> mark(offset[n]);
  std::vector<double> time_index(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    Rng rng(seed, substream(kEdgeMarkTag, v));
    double best = 0.0;
    for (std::size_t s = offset[v]; s < offset[v + 1]; ++s) {
      mark[s] = rng.next_double();
      best = std::max(best, mark[s]);
    }
    time_index[v] = best;
  }

  // Scan priority of a slot is the mark on the far side of its edge; ties
  // (measure zero, but determinism matters) break toward the lower slot.
  std::vector<std::pair<double, std::size_t>> scratch;
  run_bfs(out.tree, [&](VertexId v, std::vector<VertexId>& order) {
    const auto nbrs = g.neighbors(v);
    scratch.clear();
    for (std::size_t j = 0; j < nbrs.size(); ++j)
      scratch.emplace_back(mark[pairing.reverse_slot[offset[v] + j]], j);
    std::sort(scratch.begin(), scratch.end(), [](const auto& x, const auto& y) {
      return x.first != y.first ? x.first > y.first : x.second < y.second;
    });
    order.clear();
    for (const auto& [m, j] : scratch) order.push_back(nbrs[j]);
  });

  // Records for non-root discovered vertices, in discovery order.
  std::vector<VertexId> by_rank(out.tree.covered, 0);
  for (std::size_t v = 0; v < n; ++v) {
    const std::int64_t r = out.tree.discovery_rank[v];
    if (r >= 0) by_rank[static_cast<std::size_t>(r)] = static_cast<VertexId>(v);
  }
  out.records.reserve(out.tree.covered > 0 ? out.tree.covered - 1 : 0);
  for (std::size_t r = 1; r < by_rank.size(); ++r) {
    const VertexId v = by_rank[r];
    VisibilityRecord rec;
    rec.vertex = v;
    rec.graph_degree = static_cast<std::uint32_t>(g.degree(v));
    rec.time_index = time_index[v];
    rec.visible_children = out.tree.tree_degree[v] - 1;  // drop the parent edge
    out.records.push_back(rec);
  }
  return out;
}

CoupledSample coupled_bfs(const Graph& g, VertexId root, std::uint64_t seed) {
  return coupled_bfs(g, build_edge_pairing(g), root, seed);
}

std::map<std::int64_t, std::size_t> tree_degree_histogram(const SampledTree& t) {
  std::map<std::int64_t, std::size_t> hist;
  for (std::size_t v = 0; v < t.discovery_rank.size(); ++v)
    if (t.discovery_rank[v] >= 0)
      ++hist[static_cast<std::int64_t>(t.tree_degree[v])];
  return hist;
}

}  // namespace bfsbias

#include "bfsbias/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bfsbias {

std::size_t Graph::size() const {
  std::size_t stubs = 0;
  for (const auto& nbrs : adj_) stubs += nbrs.size();
  return stubs / 2;
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> d(adj_.size());
  for (std::size_t v = 0; v < adj_.size(); ++v) d[v] = adj_[v].size();
  return d;
}

std::map<std::int64_t, std::size_t> Graph::degree_histogram() const {
  std::map<std::int64_t, std::size_t> hist;
  for (const auto& nbrs : adj_) ++hist[static_cast<std::int64_t>(nbrs.size())];
  return hist;
}

void Graph::validate() const {
  const std::size_t n = adj_.size();
  // Count directed arcs (u,v); symmetry means count(u,v) == count(v,u).
  std::vector<std::pair<VertexId, VertexId>> arcs;
  for (std::size_t u = 0; u < n; ++u) {
    for (VertexId v : adj_[u]) {
      if (v >= n)
        throw std::logic_error("graph: neighbor id " + std::to_string(v) +
                               " out of range for order " + std::to_string(n));
      arcs.emplace_back(static_cast<VertexId>(u), v);
    }
  }
  auto flipped = arcs;
  for (auto& [u, v] : flipped) std::swap(u, v);
  std::sort(arcs.begin(), arcs.end());
  std::sort(flipped.begin(), flipped.end());
  if (arcs != flipped)
    throw std::logic_error("graph: adjacency lists are not symmetric");
  if (simple_) {
    for (std::size_t u = 0; u < n; ++u) {
      auto nbrs = adj_[u];
      std::sort(nbrs.begin(), nbrs.end());
      if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end())
        throw std::logic_error("graph: parallel edge at vertex " + std::to_string(u) +
                               " in a graph marked simple");
      if (std::binary_search(nbrs.begin(), nbrs.end(), static_cast<VertexId>(u)))
        throw std::logic_error("graph: self-loop at vertex " + std::to_string(u) +
                               " in a graph marked simple");
    }
  }
}

ComponentLabeling connected_components(const Graph& g) {
  const std::size_t n = g.order();
  ComponentLabeling out;
  out.component.assign(n, std::numeric_limits<std::uint32_t>::max());
  std::vector<VertexId> queue;
  for (std::size_t s = 0; s < n; ++s) {
    if (out.component[s] != std::numeric_limits<std::uint32_t>::max()) continue;
    const auto id = static_cast<std::uint32_t>(out.count++);
    out.component[s] = id;
    queue.clear();
    queue.push_back(static_cast<VertexId>(s));
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const VertexId v = queue[head];
      for (VertexId w : g.neighbors(v)) {
        if (out.component[w] == std::numeric_limits<std::uint32_t>::max()) {
          out.component[w] = id;
          queue.push_back(w);
        }
      }
    }
  }
  return out;
}

bool is_connected(const Graph& g) {
  if (g.order() == 0) return true;
  return connected_components(g).count == 1;
}

GiantComponent giant_component(const Graph& g) {
  if (g.order() == 0)
    throw std::invalid_argument("giant_component: graph has no vertices");
  const ComponentLabeling labels = connected_components(g);

  std::vector<std::size_t> sizes(labels.count, 0);
  for (std::uint32_t c : labels.component) ++sizes[c];
  // Largest component; ties go to the lowest component id, which by
  // construction is the one containing the smallest vertex.
  const std::uint32_t best = static_cast<std::uint32_t>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

  GiantComponent out;
  out.component_count = labels.count;
  out.original_ids.reserve(sizes[best]);
  std::vector<VertexId> relabel(g.order());
  for (std::size_t v = 0; v < g.order(); ++v) {
    if (labels.component[v] == best) {
      relabel[v] = static_cast<VertexId>(out.original_ids.size());
      out.original_ids.push_back(static_cast<VertexId>(v));
    }
  }

  std::vector<std::vector<VertexId>> adj(out.original_ids.size());
  for (std::size_t i = 0; i < out.original_ids.size(); ++i) {
    const VertexId v = out.original_ids[i];
    adj[i].reserve(g.degree(v));
    for (VertexId w : g.neighbors(v)) adj[i].push_back(relabel[w]);
  }
  out.graph = Graph(std::move(adj), g.simple());
  out.fraction = static_cast<double>(out.original_ids.size()) /
                 static_cast<double>(g.order());
  return out;
}

}  // namespace bfsbias

// graph.hpp -- undirected (multi)graph as adjacency lists, plus component utilities.

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace bfsbias {

using VertexId = std::uint32_t;

// Undirected graph stored as adjacency lists. Multigraphs are allowed: a
// parallel edge appears repeatedly in both endpoint lists, and a self-loop
// {v,v} contributes two entries to adj[v] (so degree(v) counts loop ends,
// keeping the degree sum equal to twice the edge count).
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n) {}
  Graph(std::vector<std::vector<VertexId>> adj, bool simple)
      : adj_(std::move(adj)), simple_(simple) {}

  std::size_t order() const { return adj_.size(); }
  std::size_t size() const;  // edge count (degree sum / 2)

  std::size_t degree(VertexId v) const { return adj_[v].size(); }
  std::span<const VertexId> neighbors(VertexId v) const { return adj_[v]; }

  // True when the graph is guaranteed free of self-loops and parallel edges
  // (one-directional contract: false just means "not checked/enforced").
  bool simple() const { return simple_; }

  std::vector<std::size_t> degrees() const;
  std::map<std::int64_t, std::size_t> degree_histogram() const;

  // Throws std::logic_error if adjacency lists are not symmetric or reference
  // out-of-range vertices, or if simple() is set but a loop/parallel edge
  // exists. Meant for tests and after-deserialization checks, not hot paths.
  void validate() const;

 private:
  std::vector<std::vector<VertexId>> adj_;
  bool simple_ = false;
};

// Component id (0-based, assigned in order of lowest contained vertex) for
// every vertex, plus the number of components.
struct ComponentLabeling {
  std::vector<std::uint32_t> component;
  std::size_t count = 0;
};
ComponentLabeling connected_components(const Graph& g);

bool is_connected(const Graph& g);

// Induced subgraph on the largest connected component (ties broken toward the
// component containing the smallest vertex id). Vertices are relabeled
// 0..k-1 in increasing order of original id; original_ids maps back.
struct GiantComponent {
  Graph graph;
  std::vector<VertexId> original_ids;
  std::size_t component_count = 0;
  double fraction = 0.0;  // |giant| / |g|
};
GiantComponent giant_component(const Graph& g);

}  // namespace bfsbias

#include "bfsbias/config_model.hpp"

#include <algorithm>
#include <stdexcept>

#include "bfsbias/rng.hpp"

namespace bfsbias {

Graph configuration_model(const std::vector<std::int64_t>& degrees,
                          std::uint64_t seed, bool simplify) {
  std::uint64_t stub_count = 0;
  for (std::int64_t d : degrees) {
    if (d < 0)
      throw std::invalid_argument("configuration_model: negative degree");
    stub_count += static_cast<std::uint64_t>(d);
  }
  if (stub_count % 2 != 0)
    throw std::invalid_argument("configuration_model: degree sum must be even");

  std::vector<VertexId> stubs;
  stubs.reserve(stub_count);
  for (std::size_t v = 0; v < degrees.size(); ++v)
    stubs.insert(stubs.end(), static_cast<std::size_t>(degrees[v]),
                 static_cast<VertexId>(v));

  Rng rng(seed, streams::kStubMatching);
  rng.shuffle(stubs);

  std::vector<std::vector<VertexId>> adj(degrees.size());
  for (std::size_t v = 0; v < degrees.size(); ++v)
    adj[v].reserve(static_cast<std::size_t>(degrees[v]));
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    const VertexId u = stubs[i], v = stubs[i + 1];
    adj[u].push_back(v);
    if (u != v)
      adj[v].push_back(u);
    else
      adj[u].push_back(u);  // loop: both ends land in the same list
  }

  if (simplify) {
    for (std::size_t v = 0; v < adj.size(); ++v) {
      auto& nbrs = adj[v];
      std::sort(nbrs.begin(), nbrs.end());
      nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
      nbrs.erase(std::remove(nbrs.begin(), nbrs.end(), static_cast<VertexId>(v)),
                 nbrs.end());
    }
  }
  return Graph(std::move(adj), simplify);
}

}  // namespace bfsbias

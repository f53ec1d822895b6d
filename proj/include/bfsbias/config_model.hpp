// config_model.hpp -- configuration-model multigraph from a fixed degree sequence.

#pragma once

#include <cstdint>
#include <vector>

#include "bfsbias/graph.hpp"

namespace bfsbias {

// Uniform stub matching: each vertex contributes degree-many stubs, the stub
// array is shuffled once, and consecutive entries are paired. Every perfect
// matching on stubs is equally likely, so self-loops and parallel edges occur
// with their natural probabilities (e.g. degrees {2,2} yield a double edge
// with probability 2/3).
//
// With simplify=true, self-loops and duplicate neighbors are erased afterwards
// and the result is marked simple; degrees then may be lower than requested.
// Requires nonnegative degrees with an even sum (throws std::invalid_argument
// otherwise -- use sample_degree_sequence's parity repair upstream).
Graph configuration_model(const std::vector<std::int64_t>& degrees,
                          std::uint64_t seed, bool simplify);

}  // namespace bfsbias

// rng.hpp -- splittable counter-based PRNG used everywhere randomness is needed.
//
// All randomness in the library flows from a single 64-bit master seed through
// derived streams, so any unit of work (a replicate, a BFS root, a vertex's
// neighbor order) can be given its own statistically independent generator and
// results stay byte-identical regardless of scheduling or thread count.
// std::mt19937 + std::uniform_int_distribution would not give that guarantee
// (distribution algorithms are implementation-defined), hence this small
// splitmix64-style generator with an explicit stream parameter.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace bfsbias {

namespace detail {

inline constexpr std::uint64_t kGamma64 = 0x9E3779B97F4A7C15ull;

// Stafford "mix13" finalizer: bijective, strong avalanche.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

}  // namespace detail

// Derive a child stream id from a parent stream id. Chains of substream()
// calls address a tree of independent streams (root id = caller's choice).
inline constexpr std::uint64_t substream(std::uint64_t stream, std::uint64_t child) {
  return detail::mix64(stream ^ detail::mix64(child + 0xA0761D6478BD642Full));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(detail::mix64(seed + detail::kGamma64) ^
               detail::mix64(stream + 0x8BB84B93962EACC9ull)) {}

  std::uint64_t next_u64() {
    state_ += detail::kGamma64;
    return detail::mix64(state_);
  }

  // Uniform in [0, 1): 53 random mantissa bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n). Rejection sampling removes modulo bias; n must be > 0.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

  // Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

// Well-known top-level stream ids. Every module that consumes the master seed
// picks from this enum so no two consumers ever share a stream by accident.
namespace streams {
inline constexpr std::uint64_t kDegreeSequence = 1;
inline constexpr std::uint64_t kParityRepair = 2;
inline constexpr std::uint64_t kStubMatching = 3;
inline constexpr std::uint64_t kRootSelection = 4;
inline constexpr std::uint64_t kTreeSampling = 5;
inline constexpr std::uint64_t kValidator = 6;
inline constexpr std::uint64_t kVisibilityValidator = 7;
}  // namespace streams

// Collapse (master seed, stream id) into a seed for APIs that take one.
inline constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return substream(stream, seed);
}

}  // namespace bfsbias

// degree_distribution.hpp -- discrete degree laws on {1..k_max} and sequence sampling.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "bfsbias/rng.hpp"

namespace bfsbias {

// Probability distribution over positive integer degrees with finite support
// 1..k_max. The power-law factory builds a_k = C * k^(-gamma) truncated at
// k_max with C chosen so the masses sum to one exactly (in floating point, to
// within one rounding of the normalizing sum).
class DegreeDistribution {
 public:
  // Requires gamma > 1 (normalizable on the truncated support) and k_max >= 2.
  static DegreeDistribution power_law(double gamma, std::int64_t k_max);

  // Arbitrary nonnegative masses on positive degrees; normalized internally.
  // At least one strictly positive mass is required.
  static DegreeDistribution from_masses(const std::map<std::int64_t, double>& masses);

  double mass(std::int64_t k) const;
  double mean() const { return mean_; }
  std::int64_t k_max() const { return static_cast<std::int64_t>(pmf_.size()); }

  // Set only for power_law instances.
  std::optional<double> gamma() const { return gamma_; }
  std::optional<double> normalization() const { return normalization_; }

  // One inverse-CDF draw.
  std::int64_t sample(Rng& rng) const;

 private:
  std::vector<double> pmf_;  // pmf_[k-1] = P(degree == k)
  std::vector<double> cdf_;  // cdf_[k-1] = P(degree <= k); back() == 1 exactly
  double mean_ = 0.0;
  std::optional<double> gamma_;
  std::optional<double> normalization_;

  void finalize(std::vector<double> masses);
};

// n i.i.d. draws, then parity repair: if the sum is odd, one uniformly random
// position gets +1 so a perfect matching on stubs exists. Degree draws come
// from stream kDegreeSequence, the repair position from kParityRepair.
std::vector<std::int64_t> sample_degree_sequence(const DegreeDistribution& dist,
                                                 std::size_t n, std::uint64_t seed);

}  // namespace bfsbias

#include "bfsbias/degree_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bfsbias {

void DegreeDistribution::finalize(std::vector<double> masses) {
  // Kahan-sum the normalizer; for heavy tails the terms span many orders of
  // magnitude and naive summation loses digits we later assert on.
  double total = 0.0, comp = 0.0;
  for (double m : masses) {
    const double y = m - comp;
    const double t = total + y;
    comp = (t - total) - y;
    total = t;
  }
  if (!(total > 0.0) || !std::isfinite(total))
    throw std::invalid_argument("degree distribution: total mass must be positive and finite");

  pmf_.resize(masses.size());
  cdf_.resize(masses.size());
  double acc = 0.0;
  double mean_acc = 0.0, mean_comp = 0.0;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    pmf_[i] = masses[i] / total;
    acc += pmf_[i];
    cdf_[i] = acc;
    const double y = pmf_[i] * static_cast<double>(i + 1) - mean_comp;
    const double t = mean_acc + y;
    mean_comp = (t - mean_acc) - y;
    mean_acc = t;
  }
  cdf_.back() = 1.0;  // guard inverse-CDF search against rounding
  mean_ = mean_acc;
}

DegreeDistribution DegreeDistribution::power_law(double gamma, std::int64_t k_max) {
  if (!(gamma > 1.0))
    throw std::invalid_argument(
        "power_law: gamma must exceed 1 (not normalizable below that)");
  if (k_max < 2)
    throw std::invalid_argument("power_law: k_max must be at least 2");
  std::vector<double> masses(static_cast<std::size_t>(k_max));
  for (std::int64_t k = 1; k <= k_max; ++k)
    masses[static_cast<std::size_t>(k - 1)] = std::pow(static_cast<double>(k), -gamma);
  DegreeDistribution d;
  d.finalize(std::move(masses));
  d.gamma_ = gamma;
  d.normalization_ = d.pmf_[0];  // C = C * 1^(-gamma)
  return d;
}

DegreeDistribution DegreeDistribution::from_masses(
    const std::map<std::int64_t, double>& masses) {
  if (masses.empty())
    throw std::invalid_argument("degree distribution: no masses given");
  for (const auto& [k, m] : masses) {
    if (k < 1)
      throw std::invalid_argument("degree distribution: degrees must be positive integers");
    if (m < 0.0 || !std::isfinite(m))
      throw std::invalid_argument("degree distribution: masses must be finite and nonnegative");
  }
  std::vector<double> dense(static_cast<std::size_t>(masses.rbegin()->first), 0.0);
  for (const auto& [k, m] : masses) dense[static_cast<std::size_t>(k - 1)] = m;
  DegreeDistribution d;
  d.finalize(std::move(dense));
  return d;
}

double DegreeDistribution::mass(std::int64_t k) const {
  if (k < 1 || k > k_max()) return 0.0;
  return pmf_[static_cast<std::size_t>(k - 1)];
}

std::int64_t DegreeDistribution::sample(Rng& rng) const {
  const double u = rng.next_double();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return static_cast<std::int64_t>(it - cdf_.begin()) + 1;
}

std::vector<std::int64_t> sample_degree_sequence(const DegreeDistribution& dist,
                                                 std::size_t n, std::uint64_t seed) {
  if (n < 2)
    throw std::invalid_argument("sample_degree_sequence: n must be at least 2");
  Rng rng(seed, streams::kDegreeSequence);
  std::vector<std::int64_t> degrees(n);
  std::uint64_t parity = 0;
  for (std::size_t i = 0; i < n; ++i) {
    degrees[i] = dist.sample(rng);
    parity ^= static_cast<std::uint64_t>(degrees[i]) & 1u;
  }
  if (parity) {
    Rng repair(seed, streams::kParityRepair);
    degrees[repair.next_below(n)] += 1;
  }
  return degrees;
}

}  // namespace bfsbias

// stats.hpp -- empirical CCDFs, power-law exponent estimators, degree strata.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bfsbias/graph.hpp"

namespace bfsbias {

// Empirical complementary CDF: at(k) = fraction of samples with value >= k.
// Stored as a right-continuous step function on the observed support
// (descending fractions; first point carries fraction 1 when the minimum
// observed value is the query floor).
struct Ccdf {
  std::vector<std::pair<std::int64_t, double>> points;  // (value, P[X >= value])
  std::size_t sample_count = 0;

  // P[X >= k]: fraction at the smallest stored value >= k; 1 below the
  // support, 0 above it.
  double at(std::int64_t k) const;
};

// From a value -> count histogram (counts must not all be zero).
Ccdf ccdf_from_histogram(const std::map<std::int64_t, std::size_t>& hist);

// Pointwise mean over the union of supports; sample_count sums the inputs'.
Ccdf average_ccdf(std::span<const Ccdf> curves);

enum class FitMethod { kRegressionCcdf, kMleHill };

struct PowerLawFit {
  double gamma_hat = 0.0;
  std::int64_t k_min = 0;
  FitMethod method = FitMethod::kRegressionCcdf;
  std::optional<double> r_squared;       // regression only
  std::optional<double> standard_error;  // MLE only
  std::size_t sample_size = 0;  // distinct support points (regression) / tail draws (MLE)
};

// Least-squares slope s of log CCDF vs log value over support points >= k_min;
// gamma_hat = 1 - s. Scale-invariant in the CCDF's normalization. Requires
// at least 10 distinct support points >= k_min with positive mass and a
// nondegenerate fit with gamma_hat > 1 (throws std::invalid_argument /
// std::domain_error otherwise).
PowerLawFit fit_gamma_regression(const Ccdf& curve, std::int64_t k_min);

// Hill/Clauset-style discrete MLE with continuity correction: over tail draws
// x_i >= k_min, gamma_hat = 1 + n / sum ln(x_i / (k_min - 0.5)), standard
// error (gamma_hat - 1)/sqrt(n). Requires k_min >= 1, at least 10 tail draws,
// and a nondegenerate tail (positive log sum).
PowerLawFit fit_gamma_mle(std::span<const std::int64_t> samples, std::int64_t k_min);

// Same MLE on pre-binned counts.
PowerLawFit fit_gamma_mle_histogram(const std::map<std::int64_t, std::size_t>& hist,
                                    std::int64_t k_min);

// Inclusive degree band; hi == nullopt means unbounded above.
struct DegreeBand {
  std::int64_t lo = 1;
  std::optional<std::int64_t> hi;

  bool contains(std::int64_t d) const { return d >= lo && (!hi || d <= *hi); }
  std::string label() const;
};

// Vertex ids of g in each band (ascending within a band). Bands must be
// well-formed (1 <= lo <= hi) and pairwise disjoint; gaps are fine, and
// vertices outside every band are simply unassigned.
std::vector<std::vector<VertexId>> stratify_by_degree(const Graph& g,
                                                      std::span<const DegreeBand> bands);

}  // namespace bfsbias

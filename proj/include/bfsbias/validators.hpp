// validators.hpp -- empirical checks of the analytic claims: mean tree degree
// per graph degree, concentration of tree degrees, the time-resolved
// visibility curve, and the linear envelopes / lower bound of the weighted sum.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bfsbias/analytic.hpp"
#include "bfsbias/pooling.hpp"

namespace bfsbias {

// --- mean tree degree vs i(i-1)/(i+3) ---------------------------------------

struct MeanTreeDegreeRow {
  std::int64_t degree = 0;
  std::uint64_t observations = 0;
  double mean_tree_degree = 0.0;
  double mean_children = 0.0;
  double predicted = 0.0;
  // mean_tree_degree / predicted; unset for the degree-1 boundary row where
  // the prediction is 0.
  std::optional<double> ratio;
  bool boundary = false;
};

// One row per degree with at least min_observations pooled observations,
// ascending by degree.
std::vector<MeanTreeDegreeRow> summarize_mean_tree_degree(const TreeStatsPool& pool,
                                                          std::uint64_t min_observations);

// --- concentration: P[deg_T >= m(i)] >= 1 - eps(i) --------------------------

struct ConcentrationRow {
  std::int64_t degree = 0;
  std::uint64_t observations = 0;
  double threshold = 0.0;       // m(i) = i(i-1)/(2(i+3))
  double lower_bound = 0.0;     // 1 - eps(i)
  double empirical_fraction = 0.0;
  bool satisfied = false;       // empirical_fraction >= lower_bound
};

std::vector<ConcentrationRow> summarize_concentration(const TreeStatsPool& pool,
                                                      std::int64_t min_degree,
                                                      std::uint64_t min_observations);

// --- time-resolved visibility vs t^3 ----------------------------------------

struct VisibilityBin {
  double t_lo = 0.0, t_hi = 0.0, t_mid = 0.0;
  std::uint64_t records = 0;
  // mean children/(degree-1) of the bin's records; unset when empty.
  std::optional<double> empirical_ratio;
  double predicted_cubic = 0.0;  // t_mid^3
};

std::vector<VisibilityBin> summarize_visibility(const VisibilityPool& pool);

// --- analytic envelope sweep ------------------------------------------------

struct EnvelopeViolation {
  double gamma = 0.0;
  double t = 0.0;
  std::string inequality;  // human-readable "lhs <= rhs" description
  double lhs = 0.0, rhs = 0.0;
};

struct EnvelopeSweep {
  std::vector<double> gammas;
  std::int64_t k_max = 0;
  std::size_t grid = 0;        // points per gamma, t = i/(grid-1)
  std::size_t checks = 0;      // individual inequalities evaluated
  std::vector<EnvelopeViolation> violations;
  bool upper_attained_at_one = false;  // W(1) == mu bitwise for every gamma
  bool pass() const { return violations.empty(); }
};

// For each gamma and each grid point t in [0, 1]: C*t <= W(t), W(t) <= mu*t,
// W nondecreasing along the grid, and (for t > 0) the raw visibility value
// >= the uniform lower bound (C/mu)^2. Sums are exact on the truncated
// support. Requires grid >= 2 and every gamma > 2.
EnvelopeSweep validate_envelopes(const std::vector<double>& gammas, std::size_t grid,
                                 std::int64_t k_max);

}  // namespace bfsbias

#include "bfsbias/validators.hpp"

#include <stdexcept>

namespace bfsbias {

std::vector<MeanTreeDegreeRow> summarize_mean_tree_degree(const TreeStatsPool& pool,
                                                          std::uint64_t min_observations) {
  std::vector<MeanTreeDegreeRow> rows;
  for (std::size_t d = 1; d < pool.observations.size(); ++d) {
    if (pool.observations[d] < min_observations || pool.observations[d] == 0) continue;
    MeanTreeDegreeRow row;
    row.degree = static_cast<std::int64_t>(d);
    row.observations = pool.observations[d];
    const auto n = static_cast<double>(pool.observations[d]);
    row.mean_tree_degree = static_cast<double>(pool.sum_tree_degree[d]) / n;
    row.mean_children = static_cast<double>(pool.sum_children[d]) / n;
    row.predicted = expected_tree_degree(row.degree);
    row.boundary = row.degree < 2;  // prediction is 0 there
    if (!row.boundary) row.ratio = row.mean_tree_degree / row.predicted;
    rows.push_back(row);
  }
  return rows;
}

std::vector<ConcentrationRow> summarize_concentration(const TreeStatsPool& pool,
                                                      std::int64_t min_degree,
                                                      std::uint64_t min_observations) {
  if (min_degree < 2)
    throw std::invalid_argument("summarize_concentration: min_degree must be >= 2");
  std::vector<ConcentrationRow> rows;
  for (std::size_t d = static_cast<std::size_t>(min_degree);
       d < pool.observations.size(); ++d) {
    if (pool.observations[d] < min_observations || pool.observations[d] == 0) continue;
    const ChernoffBound bound = chernoff_threshold_and_eps(static_cast<std::int64_t>(d));
    ConcentrationRow row;
    row.degree = static_cast<std::int64_t>(d);
    row.observations = pool.observations[d];
    row.threshold = bound.threshold;
    row.lower_bound = 1.0 - bound.epsilon;
    row.empirical_fraction = static_cast<double>(pool.at_least_threshold[d]) /
                             static_cast<double>(pool.observations[d]);
    row.satisfied = row.empirical_fraction >= row.lower_bound;
    rows.push_back(row);
  }
  return rows;
}

std::vector<VisibilityBin> summarize_visibility(const VisibilityPool& pool) {
  const std::size_t bins = pool.records.size();
  std::vector<VisibilityBin> out(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    VisibilityBin& bin = out[b];
    bin.t_lo = static_cast<double>(b) / static_cast<double>(bins);
    bin.t_hi = static_cast<double>(b + 1) / static_cast<double>(bins);
    bin.t_mid = (bin.t_lo + bin.t_hi) / 2.0;
    bin.records = pool.records[b];
    if (pool.records[b] > 0)
      bin.empirical_ratio = pool.ratio_sum[b] / static_cast<double>(pool.records[b]);
    bin.predicted_cubic = pvis_cubic(bin.t_mid);
  }
  return out;
}

EnvelopeSweep validate_envelopes(const std::vector<double>& gammas, std::size_t grid,
                                 std::int64_t k_max) {
  if (grid < 2)
    throw std::invalid_argument("validate_envelopes: grid must have at least 2 points");
  if (gammas.empty())
    throw std::invalid_argument("validate_envelopes: no gammas given");

  EnvelopeSweep sweep;
  sweep.gammas = gammas;
  sweep.grid = grid;
  sweep.k_max = k_max;
  sweep.upper_attained_at_one = true;

  for (double gamma : gammas) {
    const PowerLawModel m = PowerLawModel::create(gamma, k_max);
    const double q = pvis_lower_bound(m);
    double prev_w = 0.0;
    for (std::size_t i = 0; i < grid; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(grid - 1);
      const double w = exact_weighted_sum(m, t);

      const double lower = m.normalization * t;
      ++sweep.checks;
      if (!(lower <= w))
        sweep.violations.push_back({gamma, t, "C*t <= W(t)", lower, w});

      const double upper = m.mean_degree * t;
      ++sweep.checks;
      if (!(w <= upper))
        sweep.violations.push_back({gamma, t, "W(t) <= mu*t", w, upper});

      ++sweep.checks;
      if (!(w >= prev_w))
        sweep.violations.push_back({gamma, t, "W nondecreasing", prev_w, w});
      prev_w = w;

      if (t > 0.0) {
        ++sweep.checks;
        const PvisValue p = pvis_exact(m, t);
        if (!(p.raw >= q))
          sweep.violations.push_back({gamma, t, "(C/mu)^2 <= pvis_raw", q, p.raw});
      }
    }
    if (exact_weighted_sum(m, 1.0) != m.mean_degree) sweep.upper_attained_at_one = false;
  }
  return sweep;
}

}  // namespace bfsbias

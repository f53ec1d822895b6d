#include "bfsbias/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bfsbias {

double Ccdf::at(std::int64_t k) const {
  // points are ascending in value, descending in fraction; the first point
  // always carries fraction 1, so queries below the support get 1 for free.
  auto it = std::lower_bound(points.begin(), points.end(), k,
                             [](const auto& p, std::int64_t v) { return p.first < v; });
  return it == points.end() ? 0.0 : it->second;
}

Ccdf ccdf_from_histogram(const std::map<std::int64_t, std::size_t>& hist) {
  std::size_t total = 0;
  for (const auto& [value, count] : hist) total += count;
  if (total == 0)
    throw std::invalid_argument("ccdf_from_histogram: histogram is empty");

  Ccdf out;
  out.sample_count = total;
  out.points.reserve(hist.size());
  std::size_t seen = 0;  // samples strictly below the current value
  for (const auto& [value, count] : hist) {
    if (count == 0) continue;
    out.points.emplace_back(value, static_cast<double>(total - seen) /
                                       static_cast<double>(total));
    seen += count;
  }
  return out;
}

Ccdf average_ccdf(std::span<const Ccdf> curves) {
  if (curves.empty())
    throw std::invalid_argument("average_ccdf: no curves given");
  std::vector<std::int64_t> support;
  Ccdf out;
  for (const Ccdf& c : curves) {
    for (const auto& [value, fraction] : c.points) support.push_back(value);
    out.sample_count += c.sample_count;
  }
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());

  out.points.reserve(support.size());
  for (std::int64_t value : support) {
    double acc = 0.0;
    for (const Ccdf& c : curves) acc += c.at(value);
    out.points.emplace_back(value, acc / static_cast<double>(curves.size()));
  }
  return out;
}

PowerLawFit fit_gamma_regression(const Ccdf& curve, std::int64_t k_min) {
  if (k_min < 1)
    throw std::invalid_argument("fit_gamma_regression: k_min must be >= 1");
  std::vector<std::pair<double, double>> pts;  // (log value, log fraction)
  for (const auto& [value, fraction] : curve.points)
    if (value >= k_min && fraction > 0.0)
      pts.emplace_back(std::log(static_cast<double>(value)), std::log(fraction));
  if (pts.size() < 10)
    throw std::invalid_argument(
        "fit_gamma_regression: need at least 10 distinct support points at or above k_min");

  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx == 0.0)
    throw std::domain_error("fit_gamma_regression: degenerate support (single value)");
  const double slope = sxy / sxx;

  PowerLawFit fit;
  fit.method = FitMethod::kRegressionCcdf;
  fit.k_min = k_min;
  fit.sample_size = pts.size();
  fit.gamma_hat = 1.0 - slope;
  if (!(fit.gamma_hat > 1.0))
    throw std::domain_error("fit_gamma_regression: fit left the power-law domain (gamma <= 1)");
  // r^2 = explained variance; syy == 0 would mean a flat CCDF, which cannot
  // happen with >= 2 distinct positive fractions and is rejected above via
  // gamma_hat > 1 when slope is 0.
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 0.0;
  return fit;
}

namespace {

PowerLawFit hill_mle(double log_sum, std::size_t n, std::int64_t k_min) {
  if (n < 10)
    throw std::invalid_argument("fit_gamma_mle: need at least 10 tail samples at or above k_min");
  if (!(log_sum > 0.0))
    throw std::domain_error("fit_gamma_mle: degenerate tail (all mass at k_min)");
  PowerLawFit fit;
  fit.method = FitMethod::kMleHill;
  fit.k_min = k_min;
  fit.sample_size = n;
  fit.gamma_hat = 1.0 + static_cast<double>(n) / log_sum;
  fit.standard_error = (fit.gamma_hat - 1.0) / std::sqrt(static_cast<double>(n));
  return fit;
}

}  // namespace

PowerLawFit fit_gamma_mle(std::span<const std::int64_t> samples, std::int64_t k_min) {
  if (k_min < 1)
    throw std::invalid_argument("fit_gamma_mle: k_min must be >= 1");
  const double ref = static_cast<double>(k_min) - 0.5;  // continuity correction
  double log_sum = 0.0;
  std::size_t n = 0;
  for (std::int64_t x : samples) {
    if (x < k_min) continue;
    log_sum += std::log(static_cast<double>(x) / ref);
    ++n;
  }
  return hill_mle(log_sum, n, k_min);
}

PowerLawFit fit_gamma_mle_histogram(const std::map<std::int64_t, std::size_t>& hist,
                                    std::int64_t k_min) {
  if (k_min < 1)
    throw std::invalid_argument("fit_gamma_mle: k_min must be >= 1");
  const double ref = static_cast<double>(k_min) - 0.5;
  double log_sum = 0.0;
  std::size_t n = 0;
  for (const auto& [value, count] : hist) {
    if (value < k_min || count == 0) continue;
    log_sum += static_cast<double>(count) * std::log(static_cast<double>(value) / ref);
    n += count;
  }
  return hill_mle(log_sum, n, k_min);
}

std::string DegreeBand::label() const {
  return "[" + std::to_string(lo) + "," + (hi ? std::to_string(*hi) : "inf") + "]";
}

std::vector<std::vector<VertexId>> stratify_by_degree(const Graph& g,
                                                      std::span<const DegreeBand> bands) {
  for (const DegreeBand& b : bands) {
    if (b.lo < 1 || (b.hi && *b.hi < b.lo))
      throw std::invalid_argument("stratify_by_degree: malformed band " + b.label());
  }
  for (std::size_t i = 0; i < bands.size(); ++i)
    for (std::size_t j = i + 1; j < bands.size(); ++j) {
      const bool disjoint = (bands[i].hi && *bands[i].hi < bands[j].lo) ||
                            (bands[j].hi && *bands[j].hi < bands[i].lo);
      if (!disjoint)
        throw std::invalid_argument("stratify_by_degree: overlapping bands " +
                                    bands[i].label() + " and " + bands[j].label());
    }

  std::vector<std::vector<VertexId>> groups(bands.size());
  for (std::size_t v = 0; v < g.order(); ++v) {
    const auto d = static_cast<std::int64_t>(g.degree(static_cast<VertexId>(v)));
    for (std::size_t b = 0; b < bands.size(); ++b) {
      if (bands[b].contains(d)) {
        groups[b].push_back(static_cast<VertexId>(v));
        break;
      }
    }
  }
  return groups;
}

}  // namespace bfsbias

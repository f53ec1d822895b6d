#include "bfsbias/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bfsbias {

namespace {

constexpr double kTailTol = 1e-12;
constexpr std::int64_t kMaxSupport = 10'000'000;

// sum_{k=1..k_max} k^(-s) t^k, Kahan-compensated, exact on the truncated
// support. For t < 1 the loop stops once the geometric tail majorant
// sum_{j>k} j^(-s) t^j <= term_k * t / (1 - t) falls below kTailTol; at t = 1
// no geometric majorant exists and all k_max terms are summed, which is still
// exact because the support itself ends at k_max.
double power_sum(double s, double t, std::int64_t k_max) {
  double sum = 0.0, comp = 0.0;
  double tk = 1.0;
  for (std::int64_t k = 1; k <= k_max; ++k) {
    tk *= t;
    if (tk == 0.0) break;  // t^k underflowed; every remaining term is 0.0
    const double term = std::pow(static_cast<double>(k), -s) * tk;
    const double y = term - comp;
    const double acc = sum + y;
    comp = (acc - sum) - y;
    sum = acc;
    if (t < 1.0 && term * t / (1.0 - t) < kTailTol) break;
  }
  return sum;
}

}  // namespace

PowerLawModel PowerLawModel::create(double gamma, std::int64_t k_max) {
  if (!(gamma > 2.0))
    throw std::invalid_argument("PowerLawModel: gamma must exceed 2");
  if (k_max < 2)
    throw std::invalid_argument("PowerLawModel: k_max must be at least 2");
  if (k_max > kMaxSupport)
    throw std::invalid_argument("PowerLawModel: k_max above supported cap " +
                                std::to_string(kMaxSupport));
  PowerLawModel m;
  m.gamma = gamma;
  m.k_max = k_max;
  m.normalization = 1.0 / power_sum(gamma, 1.0, k_max);
  m.mean_degree = m.normalization * power_sum(gamma - 1.0, 1.0, k_max);
  return m;
}

double exact_weighted_sum(const PowerLawModel& m, double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::domain_error("exact_weighted_sum: t must lie in [0, 1]");
  return m.normalization * power_sum(m.gamma - 1.0, t, m.k_max);
}

double cubic_sum_approx(const PowerLawModel& m, double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::domain_error("cubic_sum_approx: t must lie in [0, 1]");
  return t * t * t / (m.gamma - 2.0);
}

double pvis_cubic(double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::domain_error("pvis_cubic: t must lie in [0, 1]");
  return t * t * t;
}

PvisValue pvis_exact(const PowerLawModel& m, double t) {
  if (!(t <= 1.0))
    throw std::domain_error("pvis_exact: t must not exceed 1");
  PvisValue out;
  if (t <= 0.0) {
    out.defined_limit = true;  // no mass arrives at or below time 0
    return out;
  }
  const double w_t = exact_weighted_sum(m, t);
  // r = W(t)/(mu t) lies in (C/mu, 1]; clip the float guard at 1 so that
  // W(r) stays inside the domain and t = 1 maps to exactly W(1)/W(1) = 1.
  const double r = std::min(w_t / (m.mean_degree * t), 1.0);
  out.raw = exact_weighted_sum(m, r) / w_t;
  out.value = std::clamp(out.raw, 0.0, 1.0);
  return out;
}

double pvis_lower_bound(const PowerLawModel& m) {
  const double ratio = m.normalization / m.mean_degree;
  return ratio * ratio;
}

double expected_tree_degree(std::int64_t i) {
  if (i < 1)
    throw std::invalid_argument("expected_tree_degree: degree must be >= 1");
  const double di = static_cast<double>(i);
  return di * (di - 1.0) / (di + 3.0);
}

ChernoffBound chernoff_threshold_and_eps(std::int64_t i) {
  if (i < 1)
    throw std::invalid_argument("chernoff_threshold_and_eps: degree must be >= 1");
  const double di = static_cast<double>(i);
  ChernoffBound b;
  b.threshold = di * (di - 1.0) / (2.0 * (di + 3.0));
  b.epsilon = std::exp(-di * (di - 1.0) / (8.0 * (di + 3.0)));
  return b;
}

double markov_rigorous_fraction(const PowerLawModel& m, double epsilon) {
  if (!(epsilon > 0.0))
    throw std::invalid_argument("markov_rigorous_fraction: epsilon must be positive");
  const double q = pvis_lower_bound(m);
  return (1.0 - q) / (1.0 - q + epsilon);
}

double predicted_tree_exponent(double gamma) {
  if (!(gamma > 2.0 && gamma < 3.0))
    throw std::invalid_argument("predicted_tree_exponent: gamma must lie in (2, 3)");
  return gamma;
}

}  // namespace bfsbias

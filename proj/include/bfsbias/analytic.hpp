// analytic.hpp -- closed forms for BFS-tree visibility on power-law graphs:
// the exact visibility probability and its cubic approximation, the linear
// envelope of the weighted degree sum, concentration bounds for tree degrees,
// and the predicted tree-degree exponent.

#pragma once

#include <cstdint>

namespace bfsbias {

// Power law a_k = C * k^(-gamma) on support 1..k_max (gamma > 2, k_max >= 2).
// All sums below are evaluated exactly on that support (term-wise, with an
// additive truncation bound below 1e-12 when early termination applies), so
// identities like exact_weighted_sum(m, 1) == mean_degree hold bitwise.
struct PowerLawModel {
  double gamma = 0.0;
  double normalization = 0.0;  // C = 1 / sum_k k^(-gamma)
  double mean_degree = 0.0;    // mu = C * sum_k k^(1-gamma)
  std::int64_t k_max = 0;

  static PowerLawModel create(double gamma, std::int64_t k_max);
};

// W(t) = C * sum_{k=1..k_max} k^(1-gamma) t^k for t in [0, 1].
// W is increasing, W(1) = mu, and C*t <= W(t) <= mu*t on [0, 1].
double exact_weighted_sum(const PowerLawModel& m, double t);

// Leading-order approximation W(t) ~= t^3 / (gamma - 2) near t = 1 (continuum
// tail integral); kept for comparison against the exact sum.
double cubic_sum_approx(const PowerLawModel& m, double t);

// The cubic visibility shortcut P_vis(t) ~= t^3, valid for t in [0, 1].
double pvis_cubic(double t);

// Exact visibility probability of a degree-weighted vertex first reachable at
// time index t: P_vis(t) = W(r) / W(t) with r = W(t) / (mu * t), clamped into
// [0, 1] (raw keeps the unclamped ratio). t <= 0 returns the defined limit 0;
// t > 1 is a domain error.
struct PvisValue {
  double value = 0.0;  // clamped to [0, 1]
  double raw = 0.0;
  bool defined_limit = false;  // true for the t <= 0 boundary case
};
PvisValue pvis_exact(const PowerLawModel& m, double t);

// Uniform lower bound q = (C / mu)^2 <= P_vis(t) for all t in (0, 1].
double pvis_lower_bound(const PowerLawModel& m);

// Expected BFS-tree degree of a vertex of graph degree i: i(i-1)/(i+3).
// Defined for i >= 1 (0 at i = 1).
double expected_tree_degree(std::int64_t i);

// Chernoff tail for the tree degree of a degree-i vertex: with threshold
// m(i) = i(i-1)/(2(i+3)) (half the mean), P[deg_T < m(i)] <= epsilon(i) =
// exp(-i(i-1)/(8(i+3))). Requires i >= 1; i = 1 gives the vacuous bound
// (threshold 0, epsilon 1).
struct ChernoffBound {
  double threshold = 0.0;
  double epsilon = 0.0;
};
ChernoffBound chernoff_threshold_and_eps(std::int64_t i);

// The Markov-argument constant (1-q)/(1-q+eps) with q = pvis_lower_bound(m):
// the guaranteed bound on P[deg_G - deg_T > (1-q+eps) deg_G], strictly below
// one for any eps > 0 (which is what makes the tail argument close). Requires
// eps > 0; decreasing in eps with limit 0.
double markov_rigorous_fraction(const PowerLawModel& m, double epsilon);

// Tree-degree tail exponent predicted for an underlying exponent gamma: the
// identity, because the sampled tree's high-degree tail keeps the underlying
// exponent. Requires 2 < gamma < 3 (the regime where that conservation is
// established).
double predicted_tree_exponent(double gamma);

}  // namespace bfsbias

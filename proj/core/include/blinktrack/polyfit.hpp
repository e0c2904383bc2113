#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace blinktrack {

/// Rank deficiency of the (scaled) Vandermonde system: fewer than d+1
/// distinct sample times. Callers fall back to a non-regression gate.
struct DegenerateFitError : std::runtime_error {
  explicit DegenerateFitError(const std::string& what) : std::runtime_error(what) {}
};

/// Result of a weighted polynomial least-squares fit on one pixel axis.
/// Coefficients live in shifted time coordinates (t - t_ref, newest sample
/// at 0); t_bar_w and sum_sq_dev keep the original time scale.
struct WeightedFit {
  std::vector<double> coefficients;  // constant term first
  double sigma_sq_hat = 0.0;         // weighted residual variance estimate
  double t_bar_w = 0.0;              // weighted mean of sample times
  double sum_sq_dev = 0.0;           // sum of (t_k - t_bar_w)^2
  int n_samples = 0;
  int degree = 0;
  double t_ref = 0.0;                // shift origin (newest sample time)
};

/// Fits a degree-d polynomial to (times, values) minimizing the weighted
/// squared residual. The scaled Vandermonde system is factorized with
/// Householder reflections and solved by back substitution; the normal
/// matrix is never formed. Weights must be positive and sum to 1.
/// Requires n >= d+2 samples; throws DegenerateFitError when fewer than
/// d+1 distinct times are present.
WeightedFit weighted_polyfit(std::span<const double> times, std::span<const double> values,
                             std::span<const double> weights, int degree);

/// Horner evaluation of the fitted polynomial at time t.
double predict(const WeightedFit& fit, double t);

/// Half-width of the two-sided prediction interval for a new response at
/// time t: t_{1-alpha/2,nu} * sqrt(sigma^2 (1 + 1/n + (t - t_bar)^2 / ssd))
/// with nu = n - (d+1). Throws std::invalid_argument when nu < 1.
double prediction_halfwidth(const WeightedFit& fit, double t, double alpha);

}  // namespace blinktrack

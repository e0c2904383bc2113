#include "blinktrack/polyfit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "blinktrack/student_t.hpp"

namespace blinktrack {
namespace {

double horner(std::span<const double> coeffs, double s) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * s + *it;
  return acc;
}

}  // namespace

WeightedFit weighted_polyfit(std::span<const double> times, std::span<const double> values,
                             std::span<const double> weights, int degree) {
  const std::size_t n = times.size();
  const int m = degree + 1;
  if (degree < 0) throw std::invalid_argument("weighted_polyfit: degree must be >= 0");
  if (values.size() != n || weights.size() != n) {
    throw std::invalid_argument("weighted_polyfit: input length mismatch");
  }
  if (static_cast<int>(n) < degree + 2) {
    throw std::invalid_argument("weighted_polyfit: need at least degree + 2 samples");
  }
  double wsum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw std::invalid_argument("weighted_polyfit: weights must be positive");
    wsum += w;
  }
  if (std::fabs(wsum - 1.0) > 1e-6) {
    throw std::invalid_argument("weighted_polyfit: weights must sum to 1");
  }
  if (std::set<double>(times.begin(), times.end()).size() < static_cast<std::size_t>(m)) {
    throw DegenerateFitError("weighted_polyfit: fewer than degree + 1 distinct times");
  }

  const double t_ref = *std::max_element(times.begin(), times.end());

  // Scaled Vandermonde system A beta = b with A = W^(1/2) X, row-major.
  std::vector<double> a(n * static_cast<std::size_t>(m));
  std::vector<double> b(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double sw = std::sqrt(weights[k]);
    const double s = times[k] - t_ref;
    double pw = 1.0;
    for (int j = 0; j < m; ++j) {
      a[k * m + j] = sw * pw;
      pw *= s;
    }
    b[k] = sw * values[k];
  }

  // Householder QR applied to [A | b].
  std::vector<double> v(n);
  for (int col = 0; col < m; ++col) {
    double norm_sq = 0.0;
    for (std::size_t i = col; i < n; ++i) norm_sq += a[i * m + col] * a[i * m + col];
    const double norm = std::sqrt(norm_sq);
    if (norm <= 0.0) throw DegenerateFitError("weighted_polyfit: rank-deficient system");

    const double pivot = a[static_cast<std::size_t>(col) * m + col];
    const double alpha = pivot > 0.0 ? -norm : norm;
    double vtv = 0.0;
    for (std::size_t i = col; i < n; ++i) {
      v[i] = a[i * m + col];
      if (i == static_cast<std::size_t>(col)) v[i] -= alpha;
      vtv += v[i] * v[i];
    }
    if (vtv <= 0.0) throw DegenerateFitError("weighted_polyfit: rank-deficient system");

    for (int j = col; j < m; ++j) {
      double dot = 0.0;
      for (std::size_t i = col; i < n; ++i) dot += v[i] * a[i * m + j];
      const double c = 2.0 * dot / vtv;
      for (std::size_t i = col; i < n; ++i) a[i * m + j] -= c * v[i];
    }
    double dot = 0.0;
    for (std::size_t i = col; i < n; ++i) dot += v[i] * b[i];
    const double c = 2.0 * dot / vtv;
    for (std::size_t i = col; i < n; ++i) b[i] -= c * v[i];
  }

  double max_diag = 0.0;
  for (int j = 0; j < m; ++j) {
    max_diag = std::max(max_diag, std::fabs(a[static_cast<std::size_t>(j) * m + j]));
  }
  const double diag_tol = std::numeric_limits<double>::epsilon() * static_cast<double>(n) * max_diag;

  WeightedFit fit;
  fit.coefficients.assign(static_cast<std::size_t>(m), 0.0);
  for (int row = m - 1; row >= 0; --row) {
    const double diag = a[static_cast<std::size_t>(row) * m + row];
    if (std::fabs(diag) <= diag_tol) {
      throw DegenerateFitError("weighted_polyfit: rank-deficient system");
    }
    double acc = b[static_cast<std::size_t>(row)];
    for (int j = row + 1; j < m; ++j) {
      acc -= a[static_cast<std::size_t>(row) * m + j] * fit.coefficients[static_cast<std::size_t>(j)];
    }
    fit.coefficients[static_cast<std::size_t>(row)] = acc / diag;
  }

  fit.degree = degree;
  fit.n_samples = static_cast<int>(n);
  fit.t_ref = t_ref;

  double ssr = 0.0;
  double t_bar = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = values[k] - horner(fit.coefficients, times[k] - t_ref);
    ssr += weights[k] * r * r;
    t_bar += weights[k] * times[k];
  }
  // Residual weights are rescaled to mean 1 (sum n): the interval's
  // 1 + 1/n + dev^2/ssd structure assumes unit-mean weights, and uniform
  // weights must reproduce the ordinary unbiased estimator. Sum-1 weights
  // here would shrink sigma^2 by n and collapse the stated coverage.
  fit.sigma_sq_hat = ssr * static_cast<double>(n) / static_cast<double>(static_cast<int>(n) - m);
  fit.t_bar_w = t_bar;
  fit.sum_sq_dev = 0.0;
  for (double t : times) fit.sum_sq_dev += (t - t_bar) * (t - t_bar);
  return fit;
}

double predict(const WeightedFit& fit, double t) {
  return horner(fit.coefficients, t - fit.t_ref);
}

double prediction_halfwidth(const WeightedFit& fit, double t, double alpha) {
  const int nu = fit.n_samples - (fit.degree + 1);
  if (nu < 1) throw std::invalid_argument("prediction_halfwidth: nu must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("prediction_halfwidth: alpha must be in (0, 1)");
  }
  if (fit.sigma_sq_hat <= 0.0) return 0.0;
  const double dev = t - fit.t_bar_w;
  const double extrap = fit.sum_sq_dev > 0.0 ? dev * dev / fit.sum_sq_dev : 0.0;
  const double se = std::sqrt(fit.sigma_sq_hat * (1.0 + 1.0 / fit.n_samples + extrap));
  return t_quantile(1.0 - alpha / 2.0, static_cast<double>(nu)) * se;
}

}  // namespace blinktrack

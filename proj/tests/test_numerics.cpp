#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "blinktrack/polyfit.hpp"
#include "blinktrack/student_t.hpp"
#include "blinktrack/weights.hpp"
#include "oracles.hpp"

using namespace blinktrack;

TEST_CASE("compute_weights: zero decay gives uniform weights") {
  const std::vector<double> ages{0.3, 1.7, 5.2};
  const auto w = compute_weights(ages, 0.0);
  REQUIRE(w.size() == 3);
  for (double wk : w) CHECK(wk == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("compute_weights: closed form for ages [0, 1], lambda 1") {
  const std::vector<double> ages{0.0, 1.0};
  const auto w = compute_weights(ages, 1.0);
  CHECK(w[0] == doctest::Approx(0.731059).epsilon(1e-5));
  CHECK(w[1] == doctest::Approx(0.268941).epsilon(1e-5));
}

TEST_CASE("compute_weights: singleton normalizes to 1") {
  const std::vector<double> ages{7.0};
  CHECK(compute_weights(ages, 3.5)[0] == doctest::Approx(1.0));
}

TEST_CASE("compute_weights: rejects bad input") {
  CHECK_THROWS_AS(compute_weights({}, 1.0), std::invalid_argument);
  const std::vector<double> ages{1.0};
  CHECK_THROWS_AS(compute_weights(ages, -0.1), std::invalid_argument);
  const std::vector<double> neg{-1.0};
  CHECK_THROWS_AS(compute_weights(neg, 1.0), std::invalid_argument);
}

TEST_CASE("compute_weights: sums to 1 and never increases with age") {
  std::mt19937 gen(42);
  std::uniform_real_distribution<double> age_dist(0.0, 10.0);
  std::uniform_real_distribution<double> lambda_dist(0.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(gen() % 40);
    std::vector<double> ages(n);
    for (double& a : ages) a = age_dist(gen);
    const double lambda = lambda_dist(gen);
    const auto w = compute_weights(ages, lambda);
    double sum = 0.0;
    for (double wk : w) {
      CHECK(wk > 0.0);
      sum += wk;
    }
    CHECK(std::fabs(sum - 1.0) <= 1e-12);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (ages[i] > ages[j]) CHECK(w[i] <= w[j] + 1e-15);
      }
    }
  }
}

TEST_CASE("weighted_polyfit: exact line has zero residual variance") {
  const std::vector<double> times{0.0, 1.0, 2.0};
  const std::vector<double> values{1.0, 3.0, 5.0};
  const std::vector<double> w{1.0 / 3, 1.0 / 3, 1.0 / 3};
  const WeightedFit fit = weighted_polyfit(times, values, w, 1);
  // x(t) = 1 + 2t; in shifted coordinates the constant is the newest value.
  CHECK(fit.coefficients[0] == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(fit.coefficients[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.sigma_sq_hat == doctest::Approx(0.0).epsilon(1e-18));
  CHECK(predict(fit, 3.0) == doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("weighted_polyfit: rank deficiency raises the degeneracy error") {
  const std::vector<double> times{1.0, 1.0, 1.0};
  const std::vector<double> values{2.0, 2.0, 2.0};
  const std::vector<double> w{1.0 / 3, 1.0 / 3, 1.0 / 3};
  CHECK_THROWS_AS(weighted_polyfit(times, values, w, 1), DegenerateFitError);
}

TEST_CASE("weighted_polyfit: contract violations") {
  const std::vector<double> times{0.0, 1.0, 2.0};
  const std::vector<double> values{1.0, 3.0, 5.0};
  const std::vector<double> uniform{1.0 / 3, 1.0 / 3, 1.0 / 3};
  CHECK_THROWS_AS(weighted_polyfit(times, values, uniform, 2), std::invalid_argument);  // n < d+2
  const std::vector<double> unnormalized{1.0, 1.0, 1.0};
  CHECK_THROWS_AS(weighted_polyfit(times, values, unnormalized, 1), std::invalid_argument);
  const std::vector<double> short_values{1.0, 3.0};
  CHECK_THROWS_AS(weighted_polyfit(times, short_values, uniform, 1), std::invalid_argument);
}

TEST_CASE("weighted_polyfit: matches the extended-precision normal-equation oracle") {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> coef_dist(-5.0, 5.0);
  std::normal_distribution<double> noise(0.0, 1.0);
  int accepted = 0;
  while (accepted < 300) {
    const int d = 1 + static_cast<int>(gen() % 4);
    const int n = d + 2 + static_cast<int>(gen() % 40);
    std::vector<double> times(n), values(n), ages(n);
    for (int k = 0; k < n; ++k) times[k] = static_cast<double>(k) / 60.0;
    const double lambda = (gen() % 2 == 0) ? 0.0 : 0.5;
    for (int k = 0; k < n; ++k) ages[k] = times[n - 1] - times[k];
    const auto w = compute_weights(ages, lambda);
    std::vector<double> coefs(static_cast<std::size_t>(d) + 1);
    for (double& c : coefs) c = coef_dist(gen);
    for (int k = 0; k < n; ++k) {
      double v = 0.0, p = 1.0;
      for (double c : coefs) {
        v += c * p;
        p *= times[k];
      }
      values[k] = v + noise(gen);
    }
    if (oracles::vandermonde_condition(times, w, d) >= 1e6) continue;
    ++accepted;

    const WeightedFit fit = weighted_polyfit(times, values, w, d);
    const auto ref = oracles::normal_equation_polyfit(times, values, w, d);
    double ref_norm = 0.0, diff_norm = 0.0;
    for (std::size_t j = 0; j < ref.size(); ++j) {
      ref_norm = std::max(ref_norm, std::fabs(ref[j]));
      diff_norm = std::max(diff_norm, std::fabs(ref[j] - fit.coefficients[j]));
    }
    CHECK(diff_norm <= 1e-8 * std::max(ref_norm, 1e-12));
  }
}

TEST_CASE("weighted_polyfit: shift invariance of predictions") {
  std::mt19937 gen(11);
  std::normal_distribution<double> noise(0.0, 0.5);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 12;
    std::vector<double> times(n), values(n), ages(n);
    for (int k = 0; k < n; ++k) {
      times[k] = static_cast<double>(k) / 60.0;
      values[k] = 100.0 + 3.0 * times[k] + noise(gen);
    }
    for (int k = 0; k < n; ++k) ages[k] = times[n - 1] - times[k];
    const auto w = compute_weights(ages, 0.3);
    const WeightedFit base = weighted_polyfit(times, values, w, 2);

    const double offset = 1000.0 + static_cast<double>(trial);
    std::vector<double> shifted(times);
    for (double& t : shifted) t += offset;
    const WeightedFit moved = weighted_polyfit(shifted, values, w, 2);

    const double t_query = times[n - 1] + 0.05;
    CHECK(std::fabs(predict(base, t_query) - predict(moved, t_query + offset)) <= 1e-9);
  }
}

TEST_CASE("weighted_polyfit: exact polynomial data gives sigma_sq_hat 0") {
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> coef_dist(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int d_true = static_cast<int>(gen() % 3);  // fit degree >= data degree
    const int d_fit = d_true + static_cast<int>(gen() % 2);
    const int n = d_fit + 2 + static_cast<int>(gen() % 10);
    std::vector<double> times(n), values(n), w(n, 1.0 / n);
    std::vector<double> coefs(static_cast<std::size_t>(d_true) + 1);
    for (double& c : coefs) c = coef_dist(gen);
    for (int k = 0; k < n; ++k) {
      times[k] = static_cast<double>(k) / 60.0;
      double v = 0.0, p = 1.0;
      for (double c : coefs) {
        v += c * p;
        p *= times[k];
      }
      values[k] = v;
    }
    const WeightedFit fit = weighted_polyfit(times, values, w, d_fit);
    CHECK(fit.sigma_sq_hat <= 1e-18);
  }
}

TEST_CASE("predict: constant model returns the constant everywhere") {
  const std::vector<double> times{0.0, 0.1, 0.2};
  const std::vector<double> values{4.5, 4.5, 4.5};
  const std::vector<double> w{1.0 / 3, 1.0 / 3, 1.0 / 3};
  const WeightedFit fit = weighted_polyfit(times, values, w, 0);
  CHECK(predict(fit, -3.0) == doctest::Approx(4.5));
  CHECK(predict(fit, 12.0) == doctest::Approx(4.5));
}

TEST_CASE("predict: interpolates exact fits at the newest sample") {
  const std::vector<double> times{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> values{0.0, 1.0, 4.0, 9.0};  // t^2
  const std::vector<double> w(4, 0.25);
  const WeightedFit fit = weighted_polyfit(times, values, w, 2);
  CHECK(predict(fit, 3.0) == doctest::Approx(9.0).epsilon(1e-10));
}

TEST_CASE("t_quantile: median is zero, errors reject bad arguments") {
  CHECK(t_quantile(0.5, 7.0) == 0.0);
  CHECK_THROWS_AS(t_quantile(0.0, 5.0), std::invalid_argument);
  CHECK_THROWS_AS(t_quantile(1.0, 5.0), std::invalid_argument);
  CHECK_THROWS_AS(t_quantile(0.9, 0.5), std::invalid_argument);
}

TEST_CASE("t_quantile: spot value and quadrature oracle agreement") {
  CHECK(std::fabs(t_quantile(0.975, 10.0) - 2.2281) <= 5e-4);
  for (double nu : {1.0, 2.0, 5.0, 10.0, 30.0, 100.0}) {
    const double ref = oracles::t_quantile_quadrature(0.975, nu);
    CHECK(std::fabs(t_quantile(0.975, nu) - ref) <= 5e-4);
  }
  // Lower-tail symmetry.
  CHECK(t_quantile(0.025, 10.0) == doctest::Approx(-t_quantile(0.975, 10.0)));
}

TEST_CASE("t_quantile: normal limit for huge degrees of freedom") {
  CHECK(std::fabs(t_quantile(0.975, 1e6) - 1.959964) <= 5e-4);
}

TEST_CASE("prediction_halfwidth: zero variance collapses the window") {
  const std::vector<double> times{0.0, 1.0, 2.0};
  const std::vector<double> values{1.0, 3.0, 5.0};
  const std::vector<double> w{1.0 / 3, 1.0 / 3, 1.0 / 3};
  const WeightedFit fit = weighted_polyfit(times, values, w, 1);
  CHECK(prediction_halfwidth(fit, 5.0, 0.05) <= 1e-12);

  WeightedFit exact = fit;
  exact.sigma_sq_hat = 0.0;
  CHECK(prediction_halfwidth(exact, 5.0, 0.05) == 0.0);
}

TEST_CASE("prediction_halfwidth: grows with distance from the weighted mean") {
  WeightedFit fit;
  fit.coefficients = {0.0, 0.0};
  fit.sigma_sq_hat = 2.0;
  fit.t_bar_w = 1.0;
  fit.sum_sq_dev = 0.5;
  fit.n_samples = 12;
  fit.degree = 1;
  fit.t_ref = 2.0;
  const double near = prediction_halfwidth(fit, 2.1, 0.05);
  const double far = prediction_halfwidth(fit, 3.0, 0.05);
  CHECK(far > near);
}

TEST_CASE("prediction_halfwidth: direct substitution example") {
  // n = 12, d = 1 (nu = 10), alpha = 0.05, sigma^2 = 4, queried at t_bar.
  WeightedFit fit;
  fit.coefficients = {0.0, 0.0};
  fit.sigma_sq_hat = 4.0;
  fit.t_bar_w = 0.5;
  fit.sum_sq_dev = 1.0;
  fit.n_samples = 12;
  fit.degree = 1;
  fit.t_ref = 1.0;
  const double hw = prediction_halfwidth(fit, 0.5, 0.05);
  CHECK(hw == doctest::Approx(4.6382).epsilon(1e-3));
  CHECK_THROWS_AS(
      [] {
        WeightedFit bad;
        bad.n_samples = 2;
        bad.degree = 1;
        bad.sigma_sq_hat = 1.0;
        return prediction_halfwidth(bad, 0.0, 0.05);
      }(),
      std::invalid_argument);
}

TEST_CASE("prediction interval: empirical coverage near the nominal level") {
  // Smaller sibling of the acceptance run: 2000 linear-trend trials.
  std::mt19937 gen(123);
  std::normal_distribution<double> noise(0.0, 1.0);
  const int n = 12;
  int covered = 0;
  const int trials = 2000;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<double> times(n), values(n), w(n, 1.0 / n);
    for (int k = 0; k < n; ++k) {
      times[k] = static_cast<double>(k) / 60.0;
      values[k] = 10.0 + 50.0 * times[k] + noise(gen);
    }
    const double t_next = static_cast<double>(n) / 60.0;
    const double y_next = 10.0 + 50.0 * t_next + noise(gen);
    const WeightedFit fit = weighted_polyfit(times, values, w, 1);
    const double hw = prediction_halfwidth(fit, t_next, 0.05);
    if (std::fabs(y_next - predict(fit, t_next)) <= hw) ++covered;
  }
  const double coverage = static_cast<double>(covered) / trials;
  CHECK(coverage >= 0.92);
  CHECK(coverage <= 0.98);
}

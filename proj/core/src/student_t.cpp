#include "blinktrack/student_t.hpp"

#include <cmath>
#include <stdexcept>

namespace blinktrack {
namespace {

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Continued fraction for the incomplete beta function, modified Lentz scheme.
double beta_cf(double x, double a, double b) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-15;
  constexpr int max_iter = 500;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) break;
  }
  return h;
}

// Regularized incomplete beta I_x(a, b).
double reg_inc_beta(double x, double a, double b) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cf(x, a, b) / a;
  }
  return 1.0 - std::exp(b * std::log1p(-x) + a * std::log(x) - log_beta(b, a)) *
                   beta_cf(1.0 - x, b, a) / b;
}

}  // namespace

double student_t_pdf(double x, double nu) {
  if (!(nu > 0.0)) throw std::invalid_argument("student_t_pdf: nu must be > 0");
  const double lognorm =
      std::lgamma((nu + 1.0) / 2.0) - std::lgamma(nu / 2.0) - 0.5 * std::log(nu * M_PI);
  return std::exp(lognorm - (nu + 1.0) / 2.0 * std::log1p(x * x / nu));
}

double student_t_cdf(double x, double nu) {
  if (!(nu > 0.0)) throw std::invalid_argument("student_t_cdf: nu must be > 0");
  const double ib = reg_inc_beta(nu / (nu + x * x), nu / 2.0, 0.5);
  return x >= 0.0 ? 1.0 - 0.5 * ib : 0.5 * ib;
}

double t_quantile(double p, double nu) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("t_quantile: p must be in (0, 1)");
  if (!(nu >= 1.0)) throw std::invalid_argument("t_quantile: nu must be >= 1");
  if (p == 0.5) return 0.0;
  if (p < 0.5) return -t_quantile(1.0 - p, nu);

  // Bracket the root of cdf(x) = p on [0, hi], then bisect.
  double lo = 0.0;
  double hi = 1.0;
  while (student_t_cdf(hi, nu) < p && hi < 1e12) hi *= 2.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-12 * std::max(1.0, lo); ++it) {
    const double mid = 0.5 * (lo + hi);
    (student_t_cdf(mid, nu) < p ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);

  // Newton polish against the analytic density.
  for (int it = 0; it < 2; ++it) {
    const double f = student_t_cdf(x, nu) - p;
    const double g = student_t_pdf(x, nu);
    if (g <= 0.0) break;
    const double step = f / g;
    if (!std::isfinite(step)) break;
    x -= step;
  }
  return x;
}

}  // namespace blinktrack

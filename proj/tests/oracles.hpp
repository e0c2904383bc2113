// Test-only reference implementations, kept independent of the library code
// paths they check.
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace oracles {

/// Hamming distance between `window` and rotation r of `seq`, minimized over
/// r by exhaustive scan. Independent of the library's matcher.
inline int brute_force_cyclic_distance(const std::vector<std::uint8_t>& window,
                                       const std::vector<std::uint8_t>& seq) {
  const std::size_t n = window.size();
  int best = static_cast<int>(n) + 1;
  for (std::size_t r = 0; r < n; ++r) {
    int d = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (window[i] != seq[(i + r) % n]) ++d;
    }
    if (d < best) best = d;
  }
  return best;
}

/// Weighted polynomial least squares by explicitly forming the normal
/// equations X^T W X b = X^T W y in extended precision and solving with
/// Gaussian elimination (partial pivoting). Times are shifted so the newest
/// sample sits at 0, matching the problem the library solves.
inline std::vector<double> normal_equation_polyfit(std::span<const double> times,
                                                   std::span<const double> values,
                                                   std::span<const double> weights, int degree) {
  const std::size_t n = times.size();
  const int m = degree + 1;
  long double t_ref = times[0];
  for (double t : times) t_ref = std::max<long double>(t_ref, t);

  std::vector<long double> ata(static_cast<std::size_t>(m) * m, 0.0L);
  std::vector<long double> atb(static_cast<std::size_t>(m), 0.0L);
  std::vector<long double> powers(static_cast<std::size_t>(m));
  for (std::size_t k = 0; k < n; ++k) {
    const long double s = static_cast<long double>(times[k]) - t_ref;
    powers[0] = 1.0L;
    for (int j = 1; j < m; ++j) powers[j] = powers[j - 1] * s;
    const long double w = weights[k];
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) ata[i * m + j] += w * powers[i] * powers[j];
      atb[i] += w * powers[i] * static_cast<long double>(values[k]);
    }
  }

  // Gaussian elimination with partial pivoting.
  std::vector<int> perm(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) perm[i] = i;
  for (int col = 0; col < m; ++col) {
    int pivot = col;
    for (int row = col + 1; row < m; ++row) {
      if (std::fabs(static_cast<double>(ata[row * m + col])) >
          std::fabs(static_cast<double>(ata[pivot * m + col]))) {
        pivot = row;
      }
    }
    if (ata[pivot * m + col] == 0.0L) throw std::runtime_error("oracle: singular system");
    if (pivot != col) {
      for (int j = 0; j < m; ++j) std::swap(ata[col * m + j], ata[pivot * m + j]);
      std::swap(atb[col], atb[pivot]);
    }
    for (int row = col + 1; row < m; ++row) {
      const long double factor = ata[row * m + col] / ata[col * m + col];
      for (int j = col; j < m; ++j) ata[row * m + j] -= factor * ata[col * m + j];
      atb[row] -= factor * atb[col];
    }
  }
  std::vector<double> beta(static_cast<std::size_t>(m));
  for (int row = m - 1; row >= 0; --row) {
    long double acc = atb[row];
    for (int j = row + 1; j < m; ++j) acc -= ata[row * m + j] * beta[static_cast<std::size_t>(j)];
    beta[static_cast<std::size_t>(row)] = static_cast<double>(acc / ata[row * m + row]);
  }
  return beta;
}

/// 2-norm condition number of the scaled Vandermonde W^(1/2) X, from the
/// eigenvalues of X^T W X computed by cyclic Jacobi rotations.
inline double vandermonde_condition(std::span<const double> times,
                                    std::span<const double> weights, int degree) {
  const std::size_t n = times.size();
  const int m = degree + 1;
  long double t_ref = times[0];
  for (double t : times) t_ref = std::max<long double>(t_ref, t);

  std::vector<long double> a(static_cast<std::size_t>(m) * m, 0.0L);
  std::vector<long double> powers(static_cast<std::size_t>(m));
  for (std::size_t k = 0; k < n; ++k) {
    const long double s = static_cast<long double>(times[k]) - t_ref;
    powers[0] = 1.0L;
    for (int j = 1; j < m; ++j) powers[j] = powers[j - 1] * s;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) a[i * m + j] += static_cast<long double>(weights[k]) * powers[i] * powers[j];
    }
  }

  for (int sweep = 0; sweep < 100; ++sweep) {
    long double off = 0.0L;
    for (int p = 0; p < m; ++p) {
      for (int q = p + 1; q < m; ++q) off += a[p * m + q] * a[p * m + q];
    }
    if (off < 1e-40L) break;
    for (int p = 0; p < m; ++p) {
      for (int q = p + 1; q < m; ++q) {
        if (a[p * m + q] == 0.0L) continue;
        const long double theta = (a[q * m + q] - a[p * m + p]) / (2.0L * a[p * m + q]);
        const long double t = (theta >= 0.0L ? 1.0L : -1.0L) /
                              (std::fabs(static_cast<double>(theta)) +
                               std::sqrt(static_cast<double>(theta * theta + 1.0L)));
        const long double c = 1.0L / std::sqrt(static_cast<double>(t * t + 1.0L));
        const long double s = t * c;
        for (int k = 0; k < m; ++k) {
          const long double akp = a[k * m + p];
          const long double akq = a[k * m + q];
          a[k * m + p] = c * akp - s * akq;
          a[k * m + q] = s * akp + c * akq;
        }
        for (int k = 0; k < m; ++k) {
          const long double apk = a[p * m + k];
          const long double aqk = a[q * m + k];
          a[p * m + k] = c * apk - s * aqk;
          a[q * m + k] = s * apk + c * aqk;
        }
      }
    }
  }
  long double lo = a[0];
  long double hi = a[0];
  for (int i = 1; i < m; ++i) {
    lo = std::min(lo, a[i * m + i]);
    hi = std::max(hi, a[i * m + i]);
  }
  if (lo <= 0.0L) return std::numeric_limits<double>::infinity();
  return std::sqrt(static_cast<double>(hi / lo));
}

/// Student-t density, written out directly from the lgamma form.
inline double t_density(double x, double nu) {
  const double lognorm =
      std::lgamma((nu + 1.0) / 2.0) - std::lgamma(nu / 2.0) - 0.5 * std::log(nu * M_PI);
  return std::exp(lognorm - (nu + 1.0) / 2.0 * std::log1p(x * x / nu));
}

/// Adaptive Simpson quadrature of the t density on [a, b].
inline double t_integral(double a, double b, double nu, double tol = 1e-12, int depth = 24) {
  const double m = 0.5 * (a + b);
  const double fa = t_density(a, nu), fm = t_density(m, nu), fb = t_density(b, nu);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  struct Rec {
    static double go(double a, double b, double fa, double fm, double fb, double whole,
                     double nu, double tol, int depth) {
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = t_density(lm, nu), frm = t_density(rm, nu);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
      }
      return go(a, m, fa, flm, fm, left, nu, tol / 2.0, depth - 1) +
             go(m, b, fm, frm, fb, right, nu, tol / 2.0, depth - 1);
    }
  };
  return Rec::go(a, b, fa, fm, fb, whole, nu, tol, depth);
}

/// t CDF for x >= 0 by quadrature from 0 (plus the symmetric half mass).
inline double t_cdf_quadrature(double x, double nu) {
  if (x < 0.0) return 1.0 - t_cdf_quadrature(-x, nu);
  return 0.5 + t_integral(0.0, x, nu);
}

/// p-quantile (p >= 0.5) of Student-t by bisection on the quadrature CDF.
/// Fully independent of the library's incomplete-beta route.
inline double t_quantile_quadrature(double p, double nu) {
  double lo = 0.0, hi = 1.0;
  while (t_cdf_quadrature(hi, nu) < p) hi *= 2.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (t_cdf_quadrature(mid, nu) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracles

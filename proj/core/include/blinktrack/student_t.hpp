#pragma once

namespace blinktrack {

/// Density of Student's t with `nu` degrees of freedom.
double student_t_pdf(double x, double nu);

/// CDF of Student's t via the regularized incomplete beta function.
double student_t_cdf(double x, double nu);

/// p-quantile of Student's t with `nu` degrees of freedom, computed by
/// inverting the regularized incomplete beta (bracketing bisection plus
/// Newton refinement). Absolute error <= 5e-4 over nu >= 1.
/// Throws std::invalid_argument unless 0 < p < 1 and nu >= 1.
double t_quantile(double p, double nu);

}  // namespace blinktrack

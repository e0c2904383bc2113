#include "blinktrack/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace blinktrack {

std::vector<double> compute_weights(std::span<const double> ages, double lambda) {
  if (ages.empty()) throw std::invalid_argument("compute_weights: empty age list");
  if (lambda < 0.0) throw std::invalid_argument("compute_weights: lambda must be >= 0");
  for (double a : ages) {
    if (a < 0.0 || !std::isfinite(a)) {
      throw std::invalid_argument("compute_weights: ages must be finite and >= 0");
    }
  }

  // Shift by the minimum age so the largest raw weight is exactly 1; the
  // shift cancels in the normalization and avoids underflow for large
  // lambda * age products.
  const double age_min = *std::min_element(ages.begin(), ages.end());
  std::vector<double> w(ages.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < ages.size(); ++k) {
    w[k] = std::max(std::exp(-lambda * (ages[k] - age_min)), 1e-300);
    sum += w[k];
  }
  for (double& wk : w) wk /= sum;
  return w;
}

}  // namespace blinktrack

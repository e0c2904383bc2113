#include "blinktrack/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace blinktrack {

double Rng::gaussian() {
  double u1 = uniform();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

int Rng::poisson(double mean) {
  if (mean < 0.0) throw std::invalid_argument("poisson: mean must be >= 0");
  if (mean == 0.0) return 0;
  if (mean > 30.0) {
    const double half = mean / 2.0;
    return poisson(half) + poisson(mean - half);
  }
  const double limit = std::exp(-mean);
  int k = 0;
  double prod = uniform();
  while (prod > limit) {
    ++k;
    prod *= uniform();
  }
  return k;
}

}  // namespace blinktrack

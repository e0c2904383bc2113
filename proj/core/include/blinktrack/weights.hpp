#pragma once

#include <span>
#include <vector>

namespace blinktrack {

/// Exponential-decay sample weights: w_k = exp(-lambda * age_k), normalized
/// to sum 1. Ages are seconds since each sample, so the newest sample gets
/// the largest weight. lambda = 0 yields uniform weights.
/// Throws std::invalid_argument on empty input, negative ages, or
/// lambda < 0.
std::vector<double> compute_weights(std::span<const double> ages, double lambda);

}  // namespace blinktrack

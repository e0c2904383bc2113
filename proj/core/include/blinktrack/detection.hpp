#pragma once

#include <cstdint>
#include <vector>

#include "blinktrack/types.hpp"

namespace blinktrack {

/// Marks a detection without a ground-truth marker (clutter, or unlabeled
/// streams from outside the simulator).
inline constexpr LedId kNoTruth = -1;

/// One anonymous image-point entering the tracker.
struct DetectionPoint {
  double x = 0.0;
  double y = 0.0;
  LedId truth_id = kNoTruth;  // simulator output only
};

/// Timestamped set of image-points extracted from one camera frame.
struct DetectionFrame {
  std::int64_t frame_index = 0;
  double timestamp = 0.0;
  std::vector<DetectionPoint> points;
};

}  // namespace blinktrack

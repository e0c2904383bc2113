#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blinktrack/camera.hpp"
#include "blinktrack/trajectory.hpp"

namespace blinktrack {

/// Deterministic synthetic scene: camera, marker trajectories, and the
/// noise model for the emitted detection stream.
struct Scenario {
  std::string name = "scenario";
  double duration = 60.0;  // seconds
  double f = 60.0;         // frames/s
  CameraModel camera;
  std::vector<MarkerSpec> markers;
  double clutter_rate = 0.0;           // Poisson mean clutter points per frame
  double detection_noise_sigma = 0.0;  // pixels
  double drop_probability = 0.0;       // per-detection miss probability
  double merge_radius = 3.0;           // pixels; closer detections merge
  std::uint64_t seed = 1;
};

/// Throws std::invalid_argument on any violated constraint (including a
/// non-integer duration * f frame count).
void validate(const Scenario& scenario);

Scenario load_scenario(const std::string& path);

}  // namespace blinktrack

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blinktrack/detection.hpp"
#include "blinktrack/dictionary.hpp"
#include "blinktrack/scenario.hpp"

namespace blinktrack {

/// True per-frame state of one marker, recorded whether or not a detection
/// was emitted. Pixel coordinates are the unclamped projection; in_view
/// tells whether they fall inside the image.
struct TruthState {
  LedId marker_id = 0;
  double x = 0.0;
  double y = 0.0;
  std::uint8_t bit = 0;
  bool in_view = false;
};

struct TruthLog {
  std::string scenario_name;
  std::uint64_t seed = 0;
  double f = 60.0;
  int width = 752;
  int height = 480;
  double merge_radius = 3.0;
  std::vector<std::vector<TruthState>> frames;
};

struct SimulationOutput {
  std::vector<DetectionFrame> frames;
  TruthLog truth;
};

/// Bit emitted by `led_id` on `frame_index` with the given phase offset:
/// sequence[(frame_index + phase) mod L_D]. Throws on unknown IDs.
std::uint8_t blink_state(const BlinkDictionary& dict, LedId led_id, int phase,
                         std::int64_t frame_index);

/// Renders the scenario into per-frame detections plus a ground-truth log.
/// Per frame: each marker projects through the pinhole camera; a '1' bit
/// that survives the drop draw emits a detection with Gaussian pixel noise;
/// detections closer than merge_radius collapse onto the smaller depth;
/// Poisson clutter is added uniformly over the image. Bit-identical for
/// identical scenarios and seeds.
SimulationOutput simulate(const Scenario& scenario, const BlinkDictionary& dict);

}  // namespace blinktrack

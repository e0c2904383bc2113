#include "blinktrack/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "blinktrack/rng.hpp"

namespace blinktrack {

std::uint8_t blink_state(const BlinkDictionary& dict, LedId led_id, int phase,
                         std::int64_t frame_index) {
  const auto it = dict.entries.find(led_id);
  if (it == dict.entries.end()) {
    throw std::invalid_argument("blink_state: unknown LED-ID " + std::to_string(led_id));
  }
  const auto len = static_cast<std::int64_t>(it->second.size());
  const std::int64_t idx = ((frame_index + phase) % len + len) % len;
  return it->second[static_cast<std::size_t>(idx)];
}

SimulationOutput simulate(const Scenario& scenario, const BlinkDictionary& dict) {
  validate(scenario);
  for (const MarkerSpec& m : scenario.markers) {
    if (dict.entries.find(m.led_id) == dict.entries.end()) {
      throw std::invalid_argument("simulate: scenario marker uses LED-ID " +
                                  std::to_string(m.led_id) + " missing from the dictionary");
    }
  }

  const auto n_frames = static_cast<std::int64_t>(std::llround(scenario.duration * scenario.f));
  const CameraModel& cam = scenario.camera;
  const double x_max = std::nextafter(static_cast<double>(cam.width), 0.0);
  const double y_max = std::nextafter(static_cast<double>(cam.height), 0.0);

  SimulationOutput out;
  out.frames.reserve(static_cast<std::size_t>(n_frames));
  out.truth.scenario_name = scenario.name;
  out.truth.seed = scenario.seed;
  out.truth.f = scenario.f;
  out.truth.width = cam.width;
  out.truth.height = cam.height;
  out.truth.merge_radius = scenario.merge_radius;
  out.truth.frames.reserve(static_cast<std::size_t>(n_frames));

  Rng rng(scenario.seed);

  struct Emitted {
    double x;
    double y;
    double depth;
    LedId id;
  };

  for (std::int64_t k = 0; k < n_frames; ++k) {
    const double t = static_cast<double>(k) / scenario.f;
    DetectionFrame frame;
    frame.frame_index = k;
    frame.timestamp = t;
    std::vector<TruthState> truth_states;
    std::vector<Emitted> emitted;

    for (const MarkerSpec& m : scenario.markers) {
      const Vec3 world = trajectory_position(m, t);
      const Vec3 in_cam = camera_coords(cam, world);
      const std::uint8_t bit = blink_state(dict, m.led_id, m.sequence_phase, k);
      if (in_cam.z <= 0.0) continue;  // behind the camera: no pixel truth

      const double px = cam.cx + cam.focal_px * in_cam.x / in_cam.z;
      const double py = cam.cy + cam.focal_px * in_cam.y / in_cam.z;
      const bool in_view =
          px >= 0.0 && px < cam.width && py >= 0.0 && py < cam.height;
      truth_states.push_back({m.led_id, px, py, bit, in_view});

      if (bit != 1 || !in_view) continue;
      if (scenario.drop_probability > 0.0 && rng.uniform() < scenario.drop_probability) {
        continue;
      }
      double dx = px, dy = py;
      if (scenario.detection_noise_sigma > 0.0) {
        dx += scenario.detection_noise_sigma * rng.gaussian();
        dy += scenario.detection_noise_sigma * rng.gaussian();
        dx = std::clamp(dx, 0.0, x_max);
        dy = std::clamp(dy, 0.0, y_max);
      }
      emitted.push_back({dx, dy, in_cam.z, m.led_id});
    }

    // Occlusion merge: walk by ascending depth and keep a detection only if
    // nothing already kept lies within merge_radius.
    std::vector<std::size_t> order(emitted.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return emitted[a].depth < emitted[b].depth;
    });
    std::vector<char> kept(emitted.size(), 0);
    for (std::size_t oi : order) {
      bool blocked = false;
      for (std::size_t oj = 0; oj < emitted.size(); ++oj) {
        if (!kept[oj]) continue;
        if (std::hypot(emitted[oi].x - emitted[oj].x, emitted[oi].y - emitted[oj].y) <=
            scenario.merge_radius) {
          blocked = true;
          break;
        }
      }
      if (!blocked) kept[oi] = 1;
    }
    for (std::size_t i = 0; i < emitted.size(); ++i) {
      if (kept[i]) frame.points.push_back({emitted[i].x, emitted[i].y, emitted[i].id});
    }

    if (scenario.clutter_rate > 0.0) {
      const int n_clutter = rng.poisson(scenario.clutter_rate);
      for (int c = 0; c < n_clutter; ++c) {
        const double cx = rng.uniform(0.0, static_cast<double>(cam.width));
        const double cy = rng.uniform(0.0, static_cast<double>(cam.height));
        frame.points.push_back({cx, cy, kNoTruth});
      }
    }

    out.frames.push_back(std::move(frame));
    out.truth.frames.push_back(std::move(truth_states));
  }
  return out;
}

}  // namespace blinktrack

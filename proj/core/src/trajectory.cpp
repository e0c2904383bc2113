#include "blinktrack/trajectory.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace blinktrack {
namespace {

/// Distance covered along a rest-to-rest leg of length `dist` at elapsed
/// time tau, accelerating at `accel` up to `vmax`.
struct LegTiming {
  double duration;
  double t_ramp;    // time spent accelerating (== decelerating)
  double peak;      // speed actually reached
};

LegTiming leg_timing(double dist, double vmax, double accel) {
  if (dist <= 0.0) return {0.0, 0.0, 0.0};
  const double ramp_dist = vmax * vmax / accel;  // accel + decel together
  if (dist >= ramp_dist) {
    const double t_ramp = vmax / accel;
    return {2.0 * t_ramp + (dist - ramp_dist) / vmax, t_ramp, vmax};
  }
  const double t_ramp = std::sqrt(dist / accel);
  return {2.0 * t_ramp, t_ramp, accel * t_ramp};
}

double leg_progress(double dist, double vmax, double accel, double tau) {
  const LegTiming lt = leg_timing(dist, vmax, accel);
  if (lt.duration <= 0.0) return 0.0;
  if (tau <= 0.0) return 0.0;
  if (tau >= lt.duration) return dist;
  if (tau < lt.t_ramp) return 0.5 * accel * tau * tau;
  if (tau > lt.duration - lt.t_ramp) {
    const double rem = lt.duration - tau;
    return dist - 0.5 * accel * rem * rem;
  }
  const double ramp_d = 0.5 * accel * lt.t_ramp * lt.t_ramp;
  return ramp_d + lt.peak * (tau - lt.t_ramp);
}

Vec3 waypoint_position(const std::vector<Vec3>& pts, double vmax, double accel, double t) {
  if (pts.empty()) throw std::invalid_argument("trajectory: empty waypoint list");
  if (pts.size() == 1) return pts[0];
  if (!(vmax > 0.0) || !(accel > 0.0)) {
    throw std::invalid_argument("trajectory: max_speed and accel must be > 0");
  }
  const std::size_t n = pts.size();
  std::vector<double> durations(n);
  double period = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 seg = pts[(i + 1) % n] - pts[i];
    durations[i] = leg_timing(norm(seg), vmax, accel).duration;
    period += durations[i];
  }
  if (period <= 0.0) return pts[0];

  double tau = std::fmod(t, period);
  if (tau < 0.0) tau += period;
  for (std::size_t i = 0; i < n; ++i) {
    if (tau <= durations[i] || i == n - 1) {
      const Vec3 a = pts[i];
      const Vec3 b = pts[(i + 1) % n];
      const double dist = norm(b - a);
      if (dist <= 0.0) return a;
      const double s = leg_progress(dist, vmax, accel, tau);
      return a + (b - a) * (s / dist);
    }
    tau -= durations[i];
  }
  return pts[0];
}

}  // namespace

Vec3 trajectory_position(const MarkerSpec& spec, double t) {
  return std::visit(
      [&](const auto& path) -> Vec3 {
        using T = std::decay_t<decltype(path)>;
        if constexpr (std::is_same_v<T, HoverPath>) {
          return path.point;
        } else if constexpr (std::is_same_v<T, LinearPath>) {
          return waypoint_position({path.from, path.to}, path.max_speed, path.accel, t);
        } else if constexpr (std::is_same_v<T, CirclePath>) {
          if (!(path.radius > 0.0)) return path.center;
          const double omega = path.speed / path.radius;
          const double a = path.phase_rad + omega * t;
          return path.center + Vec3{path.radius * std::cos(a), path.radius * std::sin(a), 0.0};
        } else if constexpr (std::is_same_v<T, WaypointPath>) {
          return waypoint_position(path.waypoints, path.max_speed, path.accel, t);
        } else {
          const double a = path.azimuth0 + path.omega_rad_s * t;
          return path.pivot +
                 Vec3{path.radius * std::sin(a), path.height, path.radius * std::cos(a)};
        }
      },
      spec.trajectory);
}

double trajectory_max_speed(const MarkerSpec& spec) {
  return std::visit(
      [](const auto& path) -> double {
        using T = std::decay_t<decltype(path)>;
        if constexpr (std::is_same_v<T, HoverPath>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, CirclePath>) {
          return path.speed;
        } else if constexpr (std::is_same_v<T, YawOrbitPath>) {
          return std::abs(path.omega_rad_s) * path.radius;
        } else {
          return path.max_speed;
        }
      },
      spec.trajectory);
}

std::vector<Vec3> make_star_waypoints(const Vec3& center, double scale) {
  // Pentagram: five points on a circle, visited skipping one vertex each hop.
  std::vector<Vec3> out;
  out.reserve(5);
  for (int k = 0; k < 5; ++k) {
    const double a = std::numbers::pi / 2.0 + 2.0 * std::numbers::pi * (2 * k % 5) / 5.0;
    out.push_back(center + Vec3{scale * std::cos(a), -scale * std::sin(a), 0.0});
  }
  return out;
}

}  // namespace blinktrack

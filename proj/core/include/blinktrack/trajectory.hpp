#pragma once

#include <variant>
#include <vector>

#include "blinktrack/camera.hpp"
#include "blinktrack/types.hpp"

namespace blinktrack {

struct HoverPath {
  Vec3 point;
};

/// Back-and-forth line between two endpoints; each leg is a rest-to-rest
/// trapezoidal speed profile (triangular when the leg is too short to reach
/// max_speed).
struct LinearPath {
  Vec3 from;
  Vec3 to;
  double max_speed = 1.0;  // m/s
  double accel = 2.0;      // m/s^2
};

/// Constant-speed circle in the plane perpendicular to the world z axis
/// (the image plane for the default camera pose).
struct CirclePath {
  Vec3 center;
  double radius = 1.0;
  double speed = 0.6;      // m/s along the circle
  double phase_rad = 0.0;  // start angle
};

/// Closed waypoint loop, each segment flown rest-to-rest like LinearPath.
struct WaypointPath {
  std::vector<Vec3> waypoints;
  double max_speed = 1.0;
  double accel = 2.0;
};

/// Horizontal orbit around a pivot (typically the camera position): the
/// marker sweeps through the field of view at constant angular rate, the
/// image-space analogue of an observer yawing in place.
struct YawOrbitPath {
  Vec3 pivot;
  double radius = 4.0;
  double omega_rad_s = 0.5;
  double azimuth0 = 0.0;
  double height = 0.0;  // world y offset
};

using TrajectorySpec =
    std::variant<HoverPath, LinearPath, CirclePath, WaypointPath, YawOrbitPath>;

/// One simulated marker: which dictionary entry it emits, at which phase
/// offset, and how it moves.
struct MarkerSpec {
  LedId led_id = 0;
  int sequence_phase = 0;
  TrajectorySpec trajectory;
};

/// World position at time t. All paths loop; t may exceed one period.
Vec3 trajectory_position(const MarkerSpec& spec, double t);

/// Largest speed the path can reach, for gate sizing and validation.
double trajectory_max_speed(const MarkerSpec& spec);

/// Five-point star (pentagram visiting order) in the x-y plane at the given
/// center and circumradius.
std::vector<Vec3> make_star_waypoints(const Vec3& center, double scale);

}  // namespace blinktrack

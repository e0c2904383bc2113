#include "blinktrack/camera.hpp"

#include <cmath>
#include <numbers>

namespace blinktrack {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

}  // namespace

double norm(const Vec3& v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }

Vec3 camera_coords(const CameraModel& camera, const Vec3& world) {
  const double roll = camera.rpy_deg[0] * kDegToRad;
  const double pitch = camera.rpy_deg[1] * kDegToRad;
  const double yaw = camera.rpy_deg[2] * kDegToRad;
  const double cr = std::cos(roll), sr = std::sin(roll);
  const double cp = std::cos(pitch), sp = std::sin(pitch);
  const double cy = std::cos(yaw), sy = std::sin(yaw);

  // R = Rz(yaw) Ry(pitch) Rx(roll) maps camera axes into the world frame;
  // camera coordinates use the transpose.
  const double r00 = cy * cp;
  const double r01 = cy * sp * sr - sy * cr;
  const double r02 = cy * sp * cr + sy * sr;
  const double r10 = sy * cp;
  const double r11 = sy * sp * sr + cy * cr;
  const double r12 = sy * sp * cr - cy * sr;
  const double r20 = -sp;
  const double r21 = cp * sr;
  const double r22 = cp * cr;

  const Vec3 d = world - camera.position;
  return {r00 * d.x + r10 * d.y + r20 * d.z,
          r01 * d.x + r11 * d.y + r21 * d.z,
          r02 * d.x + r12 * d.y + r22 * d.z};
}

std::optional<std::array<double, 2>> project_unbounded(const CameraModel& camera,
                                                       const Vec3& world) {
  const Vec3 c = camera_coords(camera, world);
  if (c.z <= 0.0) return std::nullopt;
  return std::array<double, 2>{camera.cx + camera.focal_px * c.x / c.z,
                               camera.cy + camera.focal_px * c.y / c.z};
}

std::optional<std::array<double, 2>> project(const CameraModel& camera, const Vec3& world) {
  const auto px = project_unbounded(camera, world);
  if (!px) return std::nullopt;
  if ((*px)[0] < 0.0 || (*px)[0] >= camera.width || (*px)[1] < 0.0 ||
      (*px)[1] >= camera.height) {
    return std::nullopt;
  }
  return px;
}

}  // namespace blinktrack

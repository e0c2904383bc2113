#pragma once

#include <array>
#include <optional>

namespace blinktrack {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
};

double norm(const Vec3& v);

/// Ideal pinhole camera. The optical axis is the camera-frame +z axis;
/// image x grows with camera x, image y with camera y. Orientation is
/// yaw-pitch-roll (degrees, applied z-y-x) relative to the world frame, so
/// the default pose looks down world +z from the origin.
struct CameraModel {
  int width = 752;
  int height = 480;
  double focal_px = 500.0;
  double cx = 376.0;
  double cy = 240.0;
  Vec3 position{0.0, 0.0, 0.0};
  std::array<double, 3> rpy_deg{0.0, 0.0, 0.0};  // roll, pitch, yaw
};

/// World point in camera coordinates (z = depth along the optical axis).
Vec3 camera_coords(const CameraModel& camera, const Vec3& world);

/// Pixel coordinates of a world point, or nothing when the point lies
/// behind the camera or outside the image bounds.
std::optional<std::array<double, 2>> project(const CameraModel& camera, const Vec3& world);

/// Projection without the bounds check; nothing only for non-positive depth.
std::optional<std::array<double, 2>> project_unbounded(const CameraModel& camera,
                                                       const Vec3& world);

}  // namespace blinktrack

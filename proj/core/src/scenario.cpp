#include "blinktrack/scenario.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

#include "blinktrack/errors.hpp"

namespace blinktrack {
namespace {

Vec3 vec3_from(const nlohmann::json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

TrajectorySpec trajectory_from(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "hover") {
    return HoverPath{vec3_from(j.at("point"))};
  }
  if (kind == "linear") {
    LinearPath p;
    p.from = vec3_from(j.at("from"));
    p.to = vec3_from(j.at("to"));
    p.max_speed = j.at("max_speed").get<double>();
    p.accel = j.value("accel", 2.0);
    return p;
  }
  if (kind == "circle") {
    CirclePath p;
    p.center = vec3_from(j.at("center"));
    p.radius = j.at("radius").get<double>();
    p.speed = j.at("speed").get<double>();
    p.phase_rad = j.value("phase_rad", 0.0);
    return p;
  }
  if (kind == "star") {
    WaypointPath p;
    p.waypoints = make_star_waypoints(vec3_from(j.at("center")), j.at("scale").get<double>());
    p.max_speed = j.at("max_speed").get<double>();
    p.accel = j.value("accel", 2.0);
    return p;
  }
  if (kind == "waypoints") {
    WaypointPath p;
    for (const auto& w : j.at("points")) p.waypoints.push_back(vec3_from(w));
    p.max_speed = j.at("max_speed").get<double>();
    p.accel = j.value("accel", 2.0);
    return p;
  }
  if (kind == "yaw_orbit") {
    YawOrbitPath p;
    if (j.contains("pivot")) p.pivot = vec3_from(j.at("pivot"));
    p.radius = j.at("radius").get<double>();
    p.omega_rad_s = j.at("omega_rad_s").get<double>();
    p.azimuth0 = j.value("azimuth0", 0.0);
    p.height = j.value("height", 0.0);
    return p;
  }
  throw std::invalid_argument("unknown trajectory kind: " + kind);
}

}  // namespace

void validate(const Scenario& s) {
  if (!(s.duration > 0.0)) throw std::invalid_argument("scenario: duration must be > 0");
  if (!(s.f > 0.0)) throw std::invalid_argument("scenario: f must be > 0");
  const double frames = s.duration * s.f;
  if (std::fabs(frames - std::llround(frames)) > 1e-6 * std::max(1.0, frames)) {
    throw std::invalid_argument("scenario: duration * f must be an integer frame count");
  }
  if (s.camera.width < 1 || s.camera.height < 1 || !(s.camera.focal_px > 0.0)) {
    throw std::invalid_argument("scenario: invalid camera model");
  }
  if (s.clutter_rate < 0.0) throw std::invalid_argument("scenario: clutter_rate must be >= 0");
  if (s.detection_noise_sigma < 0.0) {
    throw std::invalid_argument("scenario: detection_noise_sigma must be >= 0");
  }
  if (!(s.drop_probability >= 0.0 && s.drop_probability < 1.0)) {
    throw std::invalid_argument("scenario: drop_probability must be in [0, 1)");
  }
  if (s.merge_radius < 0.0) throw std::invalid_argument("scenario: merge_radius must be >= 0");
  for (const MarkerSpec& m : s.markers) {
    if (m.led_id < 0) throw std::invalid_argument("scenario: negative LED-ID");
    if (trajectory_max_speed(m) < 0.0) {
      throw std::invalid_argument("scenario: negative trajectory speed");
    }
  }
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file: " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in, nullptr, true, true);
  } catch (const nlohmann::json::exception& err) {
    throw InputError(path + ": " + err.what());
  }

  Scenario s;
  try {
    s.name = j.value("name", std::string{"scenario"});
    s.duration = j.at("duration_s").get<double>();
    s.f = j.at("f").get<double>();
    s.seed = j.value("seed", std::uint64_t{1});
    s.clutter_rate = j.value("clutter_rate", 0.0);
    s.detection_noise_sigma = j.value("detection_noise_sigma", 0.0);
    s.drop_probability = j.value("drop_probability", 0.0);
    s.merge_radius = j.value("merge_radius", 3.0);
    if (j.contains("camera")) {
      const auto& c = j.at("camera");
      s.camera.width = c.value("width", 752);
      s.camera.height = c.value("height", 480);
      s.camera.focal_px = c.value("focal_px", 500.0);
      s.camera.cx = c.value("cx", s.camera.width / 2.0);
      s.camera.cy = c.value("cy", s.camera.height / 2.0);
      if (c.contains("position")) s.camera.position = vec3_from(c.at("position"));
      if (c.contains("rpy_deg")) {
        s.camera.rpy_deg = {c.at("rpy_deg").at(0).get<double>(),
                            c.at("rpy_deg").at(1).get<double>(),
                            c.at("rpy_deg").at(2).get<double>()};
      }
    }
    for (const auto& m : j.at("markers")) {
      MarkerSpec spec;
      spec.led_id = m.at("led_id").get<LedId>();
      spec.sequence_phase = m.value("phase", 0);
      spec.trajectory = trajectory_from(m.at("trajectory"));
      s.markers.push_back(std::move(spec));
    }
  } catch (const nlohmann::json::exception& err) {
    throw InputError(path + ": " + err.what());
  } catch (const std::invalid_argument& err) {
    throw InputError(path + ": " + err.what());
  }
  try {
    validate(s);
  } catch (const std::invalid_argument& err) {
    throw InputError(path + ": " + err.what());
  }
  return s;
}

}  // namespace blinktrack

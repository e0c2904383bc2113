#include "blinktrack/config.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

#include "blinktrack/errors.hpp"

namespace blinktrack {
namespace {

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file: " + path);
  try {
    return nlohmann::json::parse(in, nullptr, true, true);  // allow comments
  } catch (const nlohmann::json::exception& err) {
    throw InputError(path + ": " + err.what());
  }
}

}  // namespace

void validate(const TrackerConfig& c) {
  if (!(c.f > 0.0)) throw std::invalid_argument("config: f must be > 0");
  if (c.dpx_max[0] < 0.0 || c.dpx_max[1] < 0.0) {
    throw std::invalid_argument("config: dpx_max components must be >= 0");
  }
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) {
    throw std::invalid_argument("config: alpha must be in (0, 1)");
  }
  if (c.d < 1) throw std::invalid_argument("config: d must be >= 1");
  if (c.eta < 1) throw std::invalid_argument("config: eta must be >= 1");
  if (c.L_S != c.eta * c.d) throw std::invalid_argument("config: L_S must equal eta * d");
  if (c.L_D < 2) throw std::invalid_argument("config: L_D must be >= 2");
  if (c.L_S < c.L_D) throw std::invalid_argument("config: L_S must be >= L_D");
  if (c.lambda < 0.0) throw std::invalid_argument("config: lambda must be >= 0");
  if (c.b_m0 < 0) throw std::invalid_argument("config: b_m0 must be >= 0");
  if (c.e < 0) throw std::invalid_argument("config: e must be >= 0");
  if (c.m_r < 1) throw std::invalid_argument("config: m_r must be >= 1");
  if (c.min_halfwidth < 0.0) throw std::invalid_argument("config: min_halfwidth must be >= 0");
}

TrackerConfig load_tracker_config(const std::string& path) {
  const nlohmann::json j = read_json_file(path);
  TrackerConfig c;
  try {
    c.f = j.at("f").get<double>();
    c.dpx_max = {j.at("dpx_max").at(0).get<double>(), j.at("dpx_max").at(1).get<double>()};
    c.alpha = j.at("alpha").get<double>();
    c.d = j.at("d").get<int>();
    c.eta = j.at("eta").get<int>();
    c.L_S = j.contains("L_S") ? j.at("L_S").get<int>() : c.eta * c.d;
    c.lambda = j.at("lambda").get<double>();
    c.b_m0 = j.at("b_m0").get<int>();
    c.e = j.at("e").get<int>();
    c.m_r = j.at("m_r").get<int>();
    c.L_D = j.at("L_D").get<int>();
    c.min_halfwidth = j.value("min_halfwidth", 2.0);
  } catch (const nlohmann::json::exception& err) {
    throw InputError(path + ": " + err.what());
  }
  try {
    validate(c);
  } catch (const std::invalid_argument& err) {
    throw InputError(path + ": " + err.what());
  }
  return c;
}

void save_tracker_config(const TrackerConfig& c, const std::string& path) {
  validate(c);
  nlohmann::json j{{"f", c.f},
                   {"dpx_max", {c.dpx_max[0], c.dpx_max[1]}},
                   {"alpha", c.alpha},
                   {"d", c.d},
                   {"eta", c.eta},
                   {"L_S", c.L_S},
                   {"lambda", c.lambda},
                   {"b_m0", c.b_m0},
                   {"e", c.e},
                   {"m_r", c.m_r},
                   {"L_D", c.L_D},
                   {"min_halfwidth", c.min_halfwidth}};
  std::ofstream out(path);
  if (!out) throw InputError("cannot write config file: " + path);
  out << j.dump(2) << "\n";
}

void validate(const NNConfig& c) {
  if (!(c.gate_radius > 0.0)) throw std::invalid_argument("nn config: gate_radius must be > 0");
  if (c.max_zero_run < 0) throw std::invalid_argument("nn config: max_zero_run must be >= 0");
  if (c.L_D < 2) throw std::invalid_argument("nn config: L_D must be >= 2");
}

NNConfig load_nn_config(const std::string& path) {
  const nlohmann::json j = read_json_file(path);
  NNConfig c;
  try {
    c.gate_radius = j.at("gate_radius").get<double>();
    c.max_zero_run = j.at("max_zero_run").get<int>();
    c.L_D = j.at("L_D").get<int>();
  } catch (const nlohmann::json::exception& err) {
    throw InputError(path + ": " + err.what());
  }
  try {
    validate(c);
  } catch (const std::invalid_argument& err) {
    throw InputError(path + ": " + err.what());
  }
  return c;
}

void save_nn_config(const NNConfig& c, const std::string& path) {
  validate(c);
  nlohmann::json j{
      {"gate_radius", c.gate_radius}, {"max_zero_run", c.max_zero_run}, {"L_D", c.L_D}};
  std::ofstream out(path);
  if (!out) throw InputError("cannot write config file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace blinktrack

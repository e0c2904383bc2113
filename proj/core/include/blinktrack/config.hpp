#pragma once

#include <array>
#include <string>

namespace blinktrack {

/// Tracker parameters, keyed in the config file by the same names used here.
/// L_S is tied to eta * d; a full dictionary sequence must fit in a series
/// (L_S >= L_D).
struct TrackerConfig {
  double f = 60.0;                        // camera frame rate, frames/s
  std::array<double, 2> dpx_max{3.0, 3.0};  // (dx, dy) local-search gate, pixels
  double alpha = 0.05;                    // significance level of the prediction interval
  int d = 4;                              // regression polynomial degree
  int eta = 90;                           // series-length multiplier, L_S = eta * d
  int L_S = 360;                          // max p-states per series
  double lambda = 0.1;                    // weight decay rate, 1/s
  int b_m0 = 10;                          // allowed consecutive zero bits
  int e = 0;                              // allowed bit errors per sequence
  int m_r = 500;                          // max series rows in the buffer
  int L_D = 18;                           // dictionary sequence length, bits
  double min_halfwidth = 2.0;             // lower clamp on extended-search windows, pixels
};

/// Throws std::invalid_argument on any violated constraint.
void validate(const TrackerConfig& config);

TrackerConfig load_tracker_config(const std::string& path);
void save_tracker_config(const TrackerConfig& config, const std::string& path);

/// Nearest-neighbor baseline parameters.
struct NNConfig {
  double gate_radius = 3.0;  // pixels
  int max_zero_run = 10;     // frames a track survives without a detection
  int L_D = 18;              // dictionary sequence length, bits
};

void validate(const NNConfig& config);

NNConfig load_nn_config(const std::string& path);
void save_nn_config(const NNConfig& config, const std::string& path);

}  // namespace blinktrack

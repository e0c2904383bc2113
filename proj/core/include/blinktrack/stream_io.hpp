#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blinktrack/detection.hpp"
#include "blinktrack/metrics.hpp"
#include "blinktrack/simulator.hpp"
#include "blinktrack/tracker.hpp"

namespace blinktrack {

/// Header metadata shared by the delimited-text stream files.
struct StreamMeta {
  std::string scenario_name;
  std::uint64_t seed = 0;
  double f = 60.0;
  int width = 752;
  int height = 480;
  double merge_radius = 3.0;
  std::int64_t start_frame = 0;
  std::int64_t frame_count = 0;
  std::string algo;
};

StreamMeta meta_from_truth(const TruthLog& truth);

/// Detection stream: `frame_index,timestamp_s,x_px,y_px,truth_marker_id`
/// (-1 marks unlabeled points). Frames with no detections occupy no rows;
/// the header's frame count restores them on load.
void write_detections(const std::string& path, const std::vector<DetectionFrame>& frames,
                      const StreamMeta& meta);
std::pair<std::vector<DetectionFrame>, StreamMeta> read_detections(const std::string& path);

/// Truth log: `frame_index,marker_id,true_x,true_y,bit`, unclamped pixels.
void write_truth(const std::string& path, const TruthLog& truth);
TruthLog read_truth(const std::string& path);

/// Identification stream: `frame_index,timestamp_s,led_id,x_px,y_px,track_id`.
void write_identifications(const std::string& path, const std::vector<FrameResult>& results,
                           const StreamMeta& meta);

/// Deterministic metrics only; wall-clock latency lives in the timing file.
void write_metrics(const std::string& path, const MetricsReport& report);
MetricsReport read_metrics(const std::string& path);

/// Per-frame processing seconds plus `mean` / `p95` summary rows.
void write_timing(const std::string& path, const std::vector<FrameResult>& results,
                  const StreamMeta& meta);
/// Returns (mean, p95) from a timing file's summary rows.
std::pair<double, double> read_timing_summary(const std::string& path);

}  // namespace blinktrack

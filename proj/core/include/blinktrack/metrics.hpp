#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "blinktrack/simulator.hpp"
#include "blinktrack/tracker.hpp"

namespace blinktrack {

/// Evaluation summary of one tracking run against ground truth. Latency
/// fields are wall-clock and therefore volatile; everything else is a pure
/// function of (results, truth) and is what the report file serializes.
struct MetricsReport {
  std::string scenario_name;
  std::uint64_t seed = 0;
  std::string algo;
  double f = 0.0;
  std::int64_t frame_count = 0;
  double duration = 0.0;      // seconds
  double tolerance_px = 3.0;

  std::map<LedId, double> success_rate_hz;       // correct identifications per second
  std::map<LedId, std::int64_t> correct_count;
  double purity = 1.0;
  bool zero_tracks = true;                        // no track ever overlapped truth
  std::int64_t id_switch_count = 0;
  double recovery_mean_frames = std::numeric_limits<double>::quiet_NaN();
  std::int64_t recovery_max_frames = 0;
  std::int64_t merge_event_count = 0;
  std::int64_t unrecovered_count = 0;
  std::int64_t peak_rows = 0;
  std::size_t peak_pstates = 0;
  double rmse_px = std::numeric_limits<double>::quiet_NaN();

  double mean_latency_s = std::numeric_limits<double>::quiet_NaN();
  double p95_latency_s = std::numeric_limits<double>::quiet_NaN();
};

/// Scores a tracking run. An identification is correct when the reported ID
/// matches a truth marker in view within tolerance_px of its true position.
/// Throws std::invalid_argument when results and truth cover different
/// frame ranges.
MetricsReport compute_metrics(const std::vector<FrameResult>& results, const TruthLog& truth,
                              double tolerance_px);

/// Occupancy, counters, and latency only; for streams without ground truth.
MetricsReport compute_tracking_stats(const std::vector<FrameResult>& results);

/// Side-by-side comparison table (delimited text) of two reports from the
/// same scenario and seed; ratio column is a/b, exactly 1 when equal.
/// Throws std::invalid_argument on a scenario mismatch.
std::string compare_reports(const MetricsReport& a, const MetricsReport& b);

}  // namespace blinktrack

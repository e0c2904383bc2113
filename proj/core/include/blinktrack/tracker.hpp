#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "blinktrack/config.hpp"
#include "blinktrack/detection.hpp"
#include "blinktrack/dictionary.hpp"
#include "blinktrack/types.hpp"

namespace blinktrack {

/// Bounded collection of t-series; the tracker's entire mutable state.
struct Buffer {
  std::vector<TSeries> series;
  std::optional<std::int64_t> last_frame;
  TrackerConfig config;
};

/// Axis-aligned gate box, inclusive on the boundary.
struct SearchWindow {
  double cx = 0.0;
  double cy = 0.0;
  double wx = 0.0;  // halfwidth along x
  double wy = 0.0;  // halfwidth along y

  bool contains(double x, double y) const {
    return std::abs(x - cx) <= wx && std::abs(y - cy) <= wy;
  }
};

struct Identification {
  LedId led_id = 0;
  double x = 0.0;
  double y = 0.0;
  TrackId track_id = 0;
};

/// The p-state a surviving series gained this frame; consumed by metrics.
struct TrackState {
  TrackId track_id = 0;
  double x = 0.0;
  double y = 0.0;
  std::uint8_t state = 0;
};

struct FrameResult {
  std::int64_t frame_index = 0;
  double timestamp = 0.0;
  std::vector<Identification> identifications;  // at most one per LED-ID
  int local_matches = 0;
  int extended_matches = 0;
  int extended_invocations = 0;  // series windows evaluated by the extended stage
  int new_series_count = 0;
  int removed_series_count = 0;
  int discarded_points_count = 0;  // points dropped at the row limit
  int rows_after = 0;
  std::size_t pstates_after = 0;
  std::vector<TrackState> track_states;
  double processing_time = 0.0;  // seconds
};

/// One-to-one greedy matching outcome of a search stage. Assignments pair a
/// buffer row with a point index; the rest are the unmatched leftovers that
/// feed the next stage.
struct Association {
  std::vector<std::pair<std::size_t, std::size_t>> assignments;  // (series row, point index)
  std::vector<std::size_t> unmatched_series;
  std::vector<std::size_t> unmatched_points;
};

/// Per-frame displacement gate from a maximum image-plane velocity:
/// component-wise ceil(v / f). Throws std::invalid_argument on f <= 0 or
/// negative velocities.
std::array<double, 2> max_displacement(const std::array<double, 2>& v_max_px_s, double f);

/// Tracks multiple blinking markers across consecutive frames and decodes
/// their blink sequences against a dictionary. Frames must arrive gap-free
/// in increasing frame_index order; one owner mutates a tracker at a time.
class Tracker {
 public:
  explicit Tracker(TrackerConfig config);

  /// Local Search -> Extended Search -> Verification, then dictionary
  /// matching. Rejects out-of-order frames without touching the buffer.
  FrameResult process_frame(const DetectionFrame& frame, const BlinkDictionary& dict);

  const Buffer& buffer() const { return buffer_; }

  // Stage functions are exposed for direct testing; process_frame composes
  // them in order.

  /// Fixed box gate of dpx_max around each series' newest p-state, resolved
  /// to a one-to-one assignment by ascending center distance (ties: lower
  /// point index, then lower buffer row).
  Association local_search(const DetectionFrame& frame) const;

  /// Prediction window for one series at time t. Fits a weighted polynomial
  /// per axis over the series' '1'-states and gates on the prediction
  /// interval; with too little data (or a degenerate fit) falls back to a
  /// box growing from the newest '1'-state. Series with no '1'-states get
  /// no window.
  std::optional<SearchWindow> extended_window(const TSeries& series, double t) const;

  /// Same assignment discipline as local_search, against the extended
  /// windows of the local leftovers. Distances are measured to window
  /// centers. `invocations` counts windows evaluated.
  Association extended_search(const DetectionFrame& frame,
                              const std::vector<std::size_t>& unmatched_series,
                              const std::vector<std::size_t>& unmatched_points, double t,
                              int* invocations) const;

 private:
  FrameResult verification(const DetectionFrame& frame, const Association& local,
                           const Association& extended, const BlinkDictionary& dict);

  Buffer buffer_;
  TrackId next_track_id_ = 1;
};

/// Recomputes matched_id for every series and emits one identification per
/// LED-ID (collisions resolved toward the series with more states, then the
/// older row). Shared by the main tracker and the baseline.
std::vector<Identification> decode_identifications(std::vector<TSeries>& series,
                                                   const BlinkDictionary& dict);

}  // namespace blinktrack

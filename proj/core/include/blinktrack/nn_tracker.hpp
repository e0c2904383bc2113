#pragma once

#include <optional>
#include <vector>

#include "blinktrack/config.hpp"
#include "blinktrack/detection.hpp"
#include "blinktrack/dictionary.hpp"
#include "blinktrack/tracker.hpp"

namespace blinktrack {

/// Gated nearest-neighbor tracker with zero-filling: the comparison
/// baseline. No motion prediction and no uncertainty windows; points join
/// the nearest track within a fixed circular gate, unmatched tracks
/// zero-fill and die once the trailing zero run exceeds max_zero_run.
/// Dictionary decoding is shared with the main tracker.
class NnTracker {
 public:
  explicit NnTracker(NNConfig config);

  FrameResult process_frame(const DetectionFrame& frame, const BlinkDictionary& dict);

  const std::vector<TSeries>& tracks() const { return tracks_; }

 private:
  NNConfig config_;
  std::vector<TSeries> tracks_;
  std::optional<std::int64_t> last_frame_;
  TrackId next_track_id_ = 1;
};

}  // namespace blinktrack

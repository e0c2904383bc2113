#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace blinktrack {

using TrackId = std::uint64_t;
using LedId = int;

/// One per-frame sample of a track: pixel position plus the observed/inferred
/// on-off bit of the marker.
struct PState {
  double timestamp = 0.0;        // seconds, frame_index / f
  std::int64_t frame_index = 0;
  double x = 0.0;                // pixels
  double y = 0.0;                // pixels
  std::uint8_t state = 0;        // 1 = marker observed on, 0 = inferred off
};

/// A sample from the on-only subsequence of a track, used for regression.
struct OnSample {
  double timestamp = 0.0;
  double x = 0.0;
  double y = 0.0;
};

/// Ordered, gap-free sequence of p-states hypothesized to belong to one
/// marker. States are stored oldest first.
struct TSeries {
  TrackId id = 0;
  std::vector<PState> states;
  std::optional<LedId> matched_id;

  bool empty() const { return states.empty(); }
  std::size_t size() const { return states.size(); }
  const PState& newest() const { return states.back(); }
  const PState& oldest() const { return states.front(); }
};

/// Appends `p` to the series. The series must stay gap-free: `p.frame_index`
/// has to be exactly one past the newest stored frame. Throws
/// std::invalid_argument on duplicate or out-of-order frames.
void append_pstate(TSeries& series, const PState& p);

/// All '1'-states of the series, order preserved.
std::vector<OnSample> on_states(const TSeries& series);

/// Number of consecutive '0'-states at the newest end of the series.
std::size_t trailing_zero_run(const TSeries& series);

}  // namespace blinktrack

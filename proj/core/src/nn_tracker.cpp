#include "blinktrack/nn_tracker.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace blinktrack {

NnTracker::NnTracker(NNConfig config) : config_(config) { validate(config); }

FrameResult NnTracker::process_frame(const DetectionFrame& frame, const BlinkDictionary& dict) {
  const auto t0 = std::chrono::steady_clock::now();
  if (last_frame_ && frame.frame_index != *last_frame_ + 1) {
    throw std::invalid_argument("nn_process_frame: expected frame " +
                                std::to_string(*last_frame_ + 1) + ", got " +
                                std::to_string(frame.frame_index));
  }

  FrameResult result;
  result.frame_index = frame.frame_index;
  result.timestamp = frame.timestamp;

  // Greedy nearest-neighbor within the circular gate, one-to-one, same
  // tie-breaks as the main tracker.
  struct Candidate {
    double dist;
    std::size_t point_idx;
    std::size_t track_pos;
  };
  std::vector<Candidate> candidates;
  for (std::size_t pos = 0; pos < tracks_.size(); ++pos) {
    const PState& last = tracks_[pos].newest();
    for (std::size_t idx = 0; idx < frame.points.size(); ++idx) {
      const double d = std::hypot(frame.points[idx].x - last.x, frame.points[idx].y - last.y);
      if (d <= config_.gate_radius) candidates.push_back({d, idx, pos});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    if (a.point_idx != b.point_idx) return a.point_idx < b.point_idx;
    return a.track_pos < b.track_pos;
  });

  std::vector<char> track_taken(tracks_.size(), 0);
  std::vector<char> point_taken(frame.points.size(), 0);
  for (const Candidate& c : candidates) {
    if (track_taken[c.track_pos] || point_taken[c.point_idx]) continue;
    track_taken[c.track_pos] = 1;
    point_taken[c.point_idx] = 1;
    const DetectionPoint& p = frame.points[c.point_idx];
    append_pstate(tracks_[c.track_pos], {frame.timestamp, frame.frame_index, p.x, p.y, 1});
    ++result.local_matches;
  }

  // Zero-fill the unmatched tracks, then drop the ones out of budget.
  for (std::size_t pos = 0; pos < tracks_.size(); ++pos) {
    if (track_taken[pos]) continue;
    const PState prev = tracks_[pos].newest();
    append_pstate(tracks_[pos], {frame.timestamp, frame.frame_index, prev.x, prev.y, 0});
  }
  const std::size_t before = tracks_.size();
  std::erase_if(tracks_, [&](const TSeries& s) {
    return trailing_zero_run(s) > static_cast<std::size_t>(config_.max_zero_run);
  });
  result.removed_series_count = static_cast<int>(before - tracks_.size());

  const std::size_t keep = static_cast<std::size_t>(
      std::max(config_.L_D, config_.max_zero_run + 1));
  for (TSeries& s : tracks_) {
    if (s.states.size() > keep) {
      s.states.erase(s.states.begin(),
                     s.states.begin() + static_cast<std::ptrdiff_t>(s.states.size() - keep));
    }
  }

  for (std::size_t idx = 0; idx < frame.points.size(); ++idx) {
    if (point_taken[idx]) continue;
    const DetectionPoint& p = frame.points[idx];
    TSeries s;
    s.id = next_track_id_++;
    s.states.push_back({frame.timestamp, frame.frame_index, p.x, p.y, 1});
    tracks_.push_back(std::move(s));
    ++result.new_series_count;
  }

  result.identifications = decode_identifications(tracks_, dict);

  result.rows_after = static_cast<int>(tracks_.size());
  result.track_states.reserve(tracks_.size());
  for (const TSeries& s : tracks_) {
    result.pstates_after += s.states.size();
    const PState& p = s.newest();
    result.track_states.push_back({s.id, p.x, p.y, p.state});
  }

  last_frame_ = frame.frame_index;
  result.processing_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace blinktrack

#include "blinktrack/tracker.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>

#include "blinktrack/polyfit.hpp"
#include "blinktrack/weights.hpp"

namespace blinktrack {
namespace {

struct Candidate {
  double dist;
  std::size_t point_idx;
  std::size_t series_pos;
};

/// Greedy global minimum-distance one-to-one matching. Candidates are
/// resolved in ascending distance, ties by lower point index then lower
/// buffer row, so the outcome is independent of candidate construction
/// order. The pools list the series rows / point indices taking part; the
/// unmatched remainders keep the pools' order.
Association greedy_assign(std::vector<Candidate> candidates,
                          const std::vector<std::size_t>& series_pool,
                          const std::vector<std::size_t>& point_pool,
                          std::size_t n_series_total, std::size_t n_points_total) {
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    if (a.point_idx != b.point_idx) return a.point_idx < b.point_idx;
    return a.series_pos < b.series_pos;
  });

  std::vector<char> series_taken(n_series_total, 0);
  std::vector<char> point_taken(n_points_total, 0);

  Association out;
  for (const Candidate& c : candidates) {
    if (series_taken[c.series_pos] || point_taken[c.point_idx]) continue;
    series_taken[c.series_pos] = 1;
    point_taken[c.point_idx] = 1;
    out.assignments.emplace_back(c.series_pos, c.point_idx);
  }
  for (std::size_t pos : series_pool) {
    if (!series_taken[pos]) out.unmatched_series.push_back(pos);
  }
  for (std::size_t idx : point_pool) {
    if (!point_taken[idx]) out.unmatched_points.push_back(idx);
  }
  return out;
}

std::vector<std::size_t> iota_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

std::array<double, 2> max_displacement(const std::array<double, 2>& v_max_px_s, double f) {
  if (!(f > 0.0)) throw std::invalid_argument("max_displacement: f must be > 0");
  if (v_max_px_s[0] < 0.0 || v_max_px_s[1] < 0.0) {
    throw std::invalid_argument("max_displacement: velocities must be >= 0");
  }
  return {std::ceil(v_max_px_s[0] / f), std::ceil(v_max_px_s[1] / f)};
}

Tracker::Tracker(TrackerConfig config) {
  validate(config);
  buffer_.config = config;
}

Association Tracker::local_search(const DetectionFrame& frame) const {
  if (buffer_.last_frame && frame.frame_index != *buffer_.last_frame + 1) {
    throw std::invalid_argument("local_search: frame index mismatch");
  }
  const auto& dpx = buffer_.config.dpx_max;

  std::vector<Candidate> candidates;
  for (std::size_t pos = 0; pos < buffer_.series.size(); ++pos) {
    const PState& last = buffer_.series[pos].newest();
    for (std::size_t idx = 0; idx < frame.points.size(); ++idx) {
      const DetectionPoint& p = frame.points[idx];
      if (std::abs(p.x - last.x) <= dpx[0] && std::abs(p.y - last.y) <= dpx[1]) {
        candidates.push_back({std::hypot(p.x - last.x, p.y - last.y), idx, pos});
      }
    }
  }
  return greedy_assign(std::move(candidates), iota_indices(buffer_.series.size()),
                       iota_indices(frame.points.size()), buffer_.series.size(),
                       frame.points.size());
}

std::optional<SearchWindow> Tracker::extended_window(const TSeries& series, double t) const {
  const TrackerConfig& cfg = buffer_.config;
  const std::vector<OnSample> on = on_states(series);
  if (on.empty()) return std::nullopt;

  if (static_cast<int>(on.size()) >= cfg.d + 2) {
    std::vector<double> times, xs, ys, ages;
    times.reserve(on.size());
    for (const OnSample& s : on) {
      times.push_back(s.timestamp);
      xs.push_back(s.x);
      ys.push_back(s.y);
      ages.push_back(t - s.timestamp);
    }
    try {
      const std::vector<double> w = compute_weights(ages, cfg.lambda);
      const WeightedFit fx = weighted_polyfit(times, xs, w, cfg.d);
      const WeightedFit fy = weighted_polyfit(times, ys, w, cfg.d);
      SearchWindow win;
      win.cx = predict(fx, t);
      win.cy = predict(fy, t);
      win.wx = std::max(prediction_halfwidth(fx, t, cfg.alpha), cfg.min_halfwidth);
      win.wy = std::max(prediction_halfwidth(fy, t, cfg.alpha), cfg.min_halfwidth);
      return win;
    } catch (const DegenerateFitError&) {
      // fall through to the growing box
    }
  }

  // Not enough '1'-states for a regression: gate around the newest one with
  // a box that grows by dpx_max per elapsed frame, capped at 4x.
  const PState* newest_on = nullptr;
  for (auto it = series.states.rbegin(); it != series.states.rend(); ++it) {
    if (it->state == 1) {
      newest_on = &*it;
      break;
    }
  }
  if (newest_on == nullptr) return std::nullopt;

  const double frames_since =
      static_cast<double>(series.newest().frame_index + 1 - newest_on->frame_index);
  SearchWindow win;
  win.cx = newest_on->x;
  win.cy = newest_on->y;
  win.wx = std::max(std::min(buffer_.config.dpx_max[0] * frames_since,
                             4.0 * buffer_.config.dpx_max[0]),
                    buffer_.config.min_halfwidth);
  win.wy = std::max(std::min(buffer_.config.dpx_max[1] * frames_since,
                             4.0 * buffer_.config.dpx_max[1]),
                    buffer_.config.min_halfwidth);
  return win;
}

Association Tracker::extended_search(const DetectionFrame& frame,
                                     const std::vector<std::size_t>& unmatched_series,
                                     const std::vector<std::size_t>& unmatched_points, double t,
                                     int* invocations) const {
  // With no leftover points there is nothing to associate; skip the window
  // computations entirely.
  if (unmatched_points.empty() || unmatched_series.empty()) {
    Association out;
    out.unmatched_series = unmatched_series;
    out.unmatched_points = unmatched_points;
    return out;
  }

  std::vector<Candidate> candidates;
  for (std::size_t pos : unmatched_series) {
    const std::optional<SearchWindow> win = extended_window(buffer_.series[pos], t);
    if (invocations != nullptr) ++*invocations;
    if (!win) continue;
    for (std::size_t idx : unmatched_points) {
      const DetectionPoint& p = frame.points[idx];
      if (win->contains(p.x, p.y)) {
        candidates.push_back({std::hypot(p.x - win->cx, p.y - win->cy), idx, pos});
      }
    }
  }
  return greedy_assign(std::move(candidates), unmatched_series, unmatched_points,
                       buffer_.series.size(), frame.points.size());
}

FrameResult Tracker::verification(const DetectionFrame& frame, const Association& local,
                                  const Association& extended, const BlinkDictionary& dict) {
  const TrackerConfig& cfg = buffer_.config;
  FrameResult result;
  result.frame_index = frame.frame_index;
  result.timestamp = frame.timestamp;
  result.local_matches = static_cast<int>(local.assignments.size());
  result.extended_matches = static_cast<int>(extended.assignments.size());

  // Commit the matches as '1'-states and zero-fill everything that both
  // searches missed, duplicating the previous coordinates.
  auto commit = [&](const std::vector<std::pair<std::size_t, std::size_t>>& assignments) {
    for (const auto& [pos, idx] : assignments) {
      const DetectionPoint& p = frame.points[idx];
      append_pstate(buffer_.series[pos],
                    {frame.timestamp, frame.frame_index, p.x, p.y, 1});
    }
  };
  commit(local.assignments);
  commit(extended.assignments);
  for (std::size_t pos : extended.unmatched_series) {
    TSeries& s = buffer_.series[pos];
    const PState prev = s.newest();
    append_pstate(s, {frame.timestamp, frame.frame_index, prev.x, prev.y, 0});
  }

  // Remove series whose trailing zero run exhausted the budget, then trim to
  // the newest L_S states.
  const std::size_t zero_budget = static_cast<std::size_t>(cfg.b_m0 + cfg.e);
  const std::size_t before = buffer_.series.size();
  std::erase_if(buffer_.series,
                [&](const TSeries& s) { return trailing_zero_run(s) > zero_budget; });
  result.removed_series_count = static_cast<int>(before - buffer_.series.size());

  for (TSeries& s : buffer_.series) {
    if (s.states.size() > static_cast<std::size_t>(cfg.L_S)) {
      s.states.erase(s.states.begin(),
                     s.states.begin() + static_cast<std::ptrdiff_t>(s.states.size() -
                                                                    static_cast<std::size_t>(cfg.L_S)));
    }
  }

  // Leftover points spawn new single-state series until the row limit.
  for (std::size_t idx : extended.unmatched_points) {
    if (buffer_.series.size() >= static_cast<std::size_t>(cfg.m_r)) {
      ++result.discarded_points_count;
      continue;
    }
    const DetectionPoint& p = frame.points[idx];
    TSeries s;
    s.id = next_track_id_++;
    s.states.push_back({frame.timestamp, frame.frame_index, p.x, p.y, 1});
    buffer_.series.push_back(std::move(s));
    ++result.new_series_count;
  }

  result.identifications = decode_identifications(buffer_.series, dict);

  result.rows_after = static_cast<int>(buffer_.series.size());
  result.track_states.reserve(buffer_.series.size());
  for (const TSeries& s : buffer_.series) {
    result.pstates_after += s.states.size();
    const PState& p = s.newest();
    result.track_states.push_back({s.id, p.x, p.y, p.state});
  }
  return result;
}

FrameResult Tracker::process_frame(const DetectionFrame& frame, const BlinkDictionary& dict) {
  const auto t0 = std::chrono::steady_clock::now();
  if (buffer_.last_frame && frame.frame_index != *buffer_.last_frame + 1) {
    throw std::invalid_argument("process_frame: expected frame " +
                                std::to_string(*buffer_.last_frame + 1) + ", got " +
                                std::to_string(frame.frame_index));
  }

  const Association local = local_search(frame);
  int invocations = 0;
  const Association extended = extended_search(frame, local.unmatched_series,
                                               local.unmatched_points, frame.timestamp,
                                               &invocations);
  FrameResult result = verification(frame, local, extended, dict);
  result.extended_invocations = invocations;

  buffer_.last_frame = frame.frame_index;
  result.processing_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

std::vector<Identification> decode_identifications(std::vector<TSeries>& series,
                                                   const BlinkDictionary& dict) {
  // (row, series size) of the current best claimant per LED-ID.
  std::map<LedId, std::size_t> winner;
  for (std::size_t row = 0; row < series.size(); ++row) {
    TSeries& s = series[row];
    s.matched_id = match_sequence(s, dict);
    if (!s.matched_id) continue;
    const auto it = winner.find(*s.matched_id);
    if (it == winner.end()) {
      winner[*s.matched_id] = row;
    } else if (series[it->second].size() < s.size()) {
      it->second = row;  // more states wins; ties keep the older row
    }
  }

  std::vector<Identification> out;
  out.reserve(winner.size());
  for (const auto& [id, row] : winner) {
    const PState& p = series[row].newest();
    out.push_back({id, p.x, p.y, series[row].id});
  }
  return out;
}

}  // namespace blinktrack

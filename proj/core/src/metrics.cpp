#include "blinktrack/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace blinktrack {
namespace {

void fill_latency(MetricsReport& report, const std::vector<FrameResult>& results) {
  if (results.empty()) return;
  std::vector<double> lat;
  lat.reserve(results.size());
  double sum = 0.0;
  for (const FrameResult& r : results) {
    lat.push_back(r.processing_time);
    sum += r.processing_time;
    report.peak_rows = std::max<std::int64_t>(report.peak_rows, r.rows_after);
    report.peak_pstates = std::max(report.peak_pstates, r.pstates_after);
  }
  report.mean_latency_s = sum / static_cast<double>(lat.size());
  std::sort(lat.begin(), lat.end());
  const std::size_t rank =
      static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(lat.size())));
  report.p95_latency_s = lat[std::min(lat.size() - 1, rank == 0 ? 0 : rank - 1)];
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << std::fixed << v;
  return os.str();
}

std::string ratio_str(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) return "nan";
  if (a == b) return fmt(1.0);
  if (b == 0.0) return "inf";
  return fmt(a / b);
}

}  // namespace

MetricsReport compute_tracking_stats(const std::vector<FrameResult>& results) {
  MetricsReport report;
  report.frame_count = static_cast<std::int64_t>(results.size());
  fill_latency(report, results);
  return report;
}

MetricsReport compute_metrics(const std::vector<FrameResult>& results, const TruthLog& truth,
                              double tolerance_px) {
  const std::size_t n = results.size();
  if (n != truth.frames.size()) {
    throw std::invalid_argument("compute_metrics: results cover " + std::to_string(n) +
                                " frames, truth covers " + std::to_string(truth.frames.size()));
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (results[i].frame_index != results[i - 1].frame_index + 1) {
      throw std::invalid_argument("compute_metrics: results are not gap-free");
    }
  }

  MetricsReport report;
  report.scenario_name = truth.scenario_name;
  report.seed = truth.seed;
  report.f = truth.f;
  report.frame_count = static_cast<std::int64_t>(n);
  report.duration = truth.f > 0.0 ? static_cast<double>(n) / truth.f : 0.0;
  report.tolerance_px = tolerance_px;
  fill_latency(report, results);

  // Per-frame correctness of reported IDs, plus the squared error of the
  // correct reports.
  std::vector<std::set<LedId>> correct_at(n);
  double sq_err_sum = 0.0;
  std::int64_t sq_err_n = 0;
  std::set<LedId> all_ids;
  for (const auto& frame_truth : truth.frames) {
    for (const TruthState& ts : frame_truth) all_ids.insert(ts.marker_id);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (const Identification& ident : results[i].identifications) {
      all_ids.insert(ident.led_id);
      for (const TruthState& ts : truth.frames[i]) {
        if (ts.marker_id != ident.led_id || !ts.in_view) continue;
        const double err = std::hypot(ident.x - ts.x, ident.y - ts.y);
        if (err <= tolerance_px) {
          correct_at[i].insert(ident.led_id);
          sq_err_sum += err * err;
          ++sq_err_n;
        }
        break;
      }
    }
  }
  for (LedId id : all_ids) {
    report.correct_count[id] = 0;
    report.success_rate_hz[id] = 0.0;
  }
  for (const auto& ids : correct_at) {
    for (LedId id : ids) ++report.correct_count[id];
  }
  if (report.duration > 0.0) {
    for (const auto& [id, count] : report.correct_count) {
      report.success_rate_hz[id] = static_cast<double>(count) / report.duration;
    }
  }
  if (sq_err_n > 0) report.rmse_px = std::sqrt(sq_err_sum / static_cast<double>(sq_err_n));

  // Track purity and identity switches over the labeled '1'-states of each
  // track. The label of a state is the nearest in-view truth marker within
  // tolerance; the majority is maintained as a running count so a brief
  // mislabel during a crossing does not flip a long track.
  struct TrackTally {
    std::map<LedId, std::int64_t> counts;
    LedId majority = kNoTruth;
    std::int64_t labeled = 0;
    std::int64_t switches = 0;
  };
  std::map<TrackId, TrackTally> tallies;
  for (std::size_t i = 0; i < n; ++i) {
    for (const TrackState& st : results[i].track_states) {
      if (st.state != 1) continue;
      LedId label = kNoTruth;
      double best = tolerance_px;
      for (const TruthState& ts : truth.frames[i]) {
        if (!ts.in_view) continue;
        const double d = std::hypot(st.x - ts.x, st.y - ts.y);
        if (d <= best) {
          best = d;
          label = ts.marker_id;
        }
      }
      if (label == kNoTruth) continue;
      TrackTally& tally = tallies[st.track_id];
      ++tally.labeled;
      const std::int64_t c = ++tally.counts[label];
      if (tally.majority == kNoTruth) {
        tally.majority = label;
      } else if (label != tally.majority && c > tally.counts[tally.majority]) {
        tally.majority = label;
        ++tally.switches;
      }
    }
  }
  std::int64_t labeled_total = 0;
  std::int64_t majority_total = 0;
  for (const auto& [track_id, tally] : tallies) {
    labeled_total += tally.labeled;
    majority_total += tally.counts.at(tally.majority);
    report.id_switch_count += tally.switches;
  }
  report.zero_tracks = labeled_total == 0;
  report.purity =
      labeled_total > 0 ? static_cast<double>(majority_total) / static_cast<double>(labeled_total)
                        : 1.0;

  // Merge events: maximal frame runs where a marker pair sits within
  // merge_radius. Recovery is the frame count from the end of the run until
  // both IDs have been reported correctly again.
  std::vector<LedId> ids(all_ids.begin(), all_ids.end());
  double recovery_sum = 0.0;
  std::int64_t recovered = 0;
  for (std::size_t ai = 0; ai < ids.size(); ++ai) {
    for (std::size_t bi = ai + 1; bi < ids.size(); ++bi) {
      const LedId a = ids[ai];
      const LedId b = ids[bi];
      std::vector<char> merged(n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        const TruthState* sa = nullptr;
        const TruthState* sb = nullptr;
        for (const TruthState& ts : truth.frames[i]) {
          if (ts.marker_id == a) sa = &ts;
          if (ts.marker_id == b) sb = &ts;
        }
        merged[i] = sa != nullptr && sb != nullptr && sa->in_view && sb->in_view &&
                    std::hypot(sa->x - sb->x, sa->y - sb->y) <= truth.merge_radius;
      }
      std::size_t i = 0;
      while (i < n) {
        if (!merged[i]) {
          ++i;
          continue;
        }
        std::size_t end = i;
        while (end + 1 < n && merged[end + 1]) ++end;
        if (end < n - 1) {  // runs still merged on the final frame have no aftermath
          ++report.merge_event_count;
          std::int64_t fa = -1, fb = -1;
          for (std::size_t j = end + 1; j < n && (fa < 0 || fb < 0); ++j) {
            if (fa < 0 && correct_at[j].count(a) != 0) fa = static_cast<std::int64_t>(j);
            if (fb < 0 && correct_at[j].count(b) != 0) fb = static_cast<std::int64_t>(j);
          }
          if (fa >= 0 && fb >= 0) {
            const std::int64_t rec = std::max(fa, fb) - static_cast<std::int64_t>(end);
            recovery_sum += static_cast<double>(rec);
            report.recovery_max_frames = std::max(report.recovery_max_frames, rec);
            ++recovered;
          } else {
            ++report.unrecovered_count;
          }
        }
        i = end + 1;
      }
    }
  }
  if (recovered > 0) report.recovery_mean_frames = recovery_sum / static_cast<double>(recovered);

  return report;
}

std::string compare_reports(const MetricsReport& a, const MetricsReport& b) {
  if (a.scenario_name != b.scenario_name || a.seed != b.seed || a.f != b.f ||
      a.frame_count != b.frame_count) {
    throw std::invalid_argument("compare_reports: reports come from different scenarios");
  }

  std::ostringstream os;
  os << "# blinktrack comparison\n";
  os << "# scenario: " << a.scenario_name << "\n";
  os << "# seed: " << a.seed << "\n";
  os << "# algo_a: " << a.algo << "\n";
  os << "# algo_b: " << b.algo << "\n";
  os << "metric,id,a,b,ratio\n";

  std::set<LedId> ids;
  for (const auto& [id, rate] : a.success_rate_hz) ids.insert(id);
  for (const auto& [id, rate] : b.success_rate_hz) ids.insert(id);
  auto rate_of = [](const MetricsReport& r, LedId id) {
    const auto it = r.success_rate_hz.find(id);
    return it == r.success_rate_hz.end() ? 0.0 : it->second;
  };
  for (LedId id : ids) {
    const double ra = rate_of(a, id);
    const double rb = rate_of(b, id);
    os << "success_rate_hz," << id << "," << fmt(ra) << "," << fmt(rb) << ","
       << ratio_str(ra, rb) << "\n";
  }

  auto row = [&](const std::string& name, double va, double vb) {
    os << name << ",," << fmt(va) << "," << fmt(vb) << "," << ratio_str(va, vb) << "\n";
  };
  row("purity", a.purity, b.purity);
  row("id_switch_count", static_cast<double>(a.id_switch_count),
      static_cast<double>(b.id_switch_count));
  if (!std::isnan(a.recovery_mean_frames) || !std::isnan(b.recovery_mean_frames)) {
    row("recovery_mean_frames", a.recovery_mean_frames, b.recovery_mean_frames);
    row("recovery_max_frames", static_cast<double>(a.recovery_max_frames),
        static_cast<double>(b.recovery_max_frames));
  }
  row("merge_event_count", static_cast<double>(a.merge_event_count),
      static_cast<double>(b.merge_event_count));
  row("unrecovered_count", static_cast<double>(a.unrecovered_count),
      static_cast<double>(b.unrecovered_count));
  row("peak_rows", static_cast<double>(a.peak_rows), static_cast<double>(b.peak_rows));
  row("peak_pstates", static_cast<double>(a.peak_pstates), static_cast<double>(b.peak_pstates));
  if (!std::isnan(a.rmse_px) || !std::isnan(b.rmse_px)) {
    row("rmse_px", a.rmse_px, b.rmse_px);
  }
  if (!std::isnan(a.mean_latency_s) && !std::isnan(b.mean_latency_s)) {
    row("mean_latency_s", a.mean_latency_s, b.mean_latency_s);
    row("p95_latency_s", a.p95_latency_s, b.p95_latency_s);
  }
  return os.str();
}

}  // namespace blinktrack

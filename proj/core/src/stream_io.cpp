#include "blinktrack/stream_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "blinktrack/errors.hpp"

namespace blinktrack {
namespace {

constexpr int kFloatDigits = 6;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write file: " + path);
  out << std::fixed << std::setprecision(kFloatDigits);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  return in;
}

void write_meta(std::ofstream& out, const StreamMeta& meta) {
  out << "# scenario: " << meta.scenario_name << "\n";
  out << "# seed: " << meta.seed << "\n";
  out << "# f: " << meta.f << "\n";
  out << "# resolution: " << meta.width << "x" << meta.height << "\n";
  out << "# merge_radius: " << meta.merge_radius << "\n";
  out << "# start_frame: " << meta.start_frame << "\n";
  out << "# frames: " << meta.frame_count << "\n";
  if (!meta.algo.empty()) out << "# algo: " << meta.algo << "\n";
}

/// Parses `# key: value` lines into meta; returns false for data lines.
bool parse_meta_line(const std::string& line, StreamMeta& meta) {
  if (line.empty() || line[0] != '#') return false;
  std::istringstream is(line.substr(1));
  std::string key;
  if (!(is >> key)) return true;
  if (key == "scenario:") {
    std::string rest;
    std::getline(is, rest);
    const auto begin = rest.find_first_not_of(' ');
    meta.scenario_name = begin == std::string::npos ? "" : rest.substr(begin);
  } else if (key == "seed:") {
    is >> meta.seed;
  } else if (key == "f:") {
    is >> meta.f;
  } else if (key == "resolution:") {
    char x = 0;
    is >> meta.width >> x >> meta.height;
  } else if (key == "merge_radius:") {
    is >> meta.merge_radius;
  } else if (key == "start_frame:") {
    is >> meta.start_frame;
  } else if (key == "frames:") {
    is >> meta.frame_count;
  } else if (key == "algo:") {
    is >> meta.algo;
  }
  return true;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) out.push_back(field);
  return out;
}

}  // namespace

StreamMeta meta_from_truth(const TruthLog& truth) {
  StreamMeta meta;
  meta.scenario_name = truth.scenario_name;
  meta.seed = truth.seed;
  meta.f = truth.f;
  meta.width = truth.width;
  meta.height = truth.height;
  meta.merge_radius = truth.merge_radius;
  meta.start_frame = 0;
  meta.frame_count = static_cast<std::int64_t>(truth.frames.size());
  return meta;
}

void write_detections(const std::string& path, const std::vector<DetectionFrame>& frames,
                      const StreamMeta& meta) {
  auto out = open_out(path);
  out << "# blinktrack detections\n";
  write_meta(out, meta);
  out << "frame_index,timestamp_s,x_px,y_px,truth_marker_id\n";
  for (const DetectionFrame& f : frames) {
    for (const DetectionPoint& p : f.points) {
      out << f.frame_index << "," << f.timestamp << "," << p.x << "," << p.y << ","
          << p.truth_id << "\n";
    }
  }
}

std::pair<std::vector<DetectionFrame>, StreamMeta> read_detections(const std::string& path) {
  auto in = open_in(path);
  StreamMeta meta;
  meta.frame_count = -1;
  std::vector<DetectionFrame> frames;
  std::string line;
  bool header_row_seen = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (parse_meta_line(line, meta)) continue;
    if (!header_row_seen) {
      header_row_seen = true;  // column-name row
      continue;
    }
    const auto fields = split_csv(line);
    if (fields.size() != 5) {
      throw InputError(path + ":" + std::to_string(line_no) + ": expected 5 fields");
    }
    try {
      const std::int64_t idx = std::stoll(fields[0]);
      const double ts = std::stod(fields[1]);
      DetectionPoint p{std::stod(fields[2]), std::stod(fields[3]), std::stoi(fields[4])};
      if (frames.empty() && meta.frame_count < 0) meta.start_frame = idx;
      const std::int64_t pos = idx - meta.start_frame;
      if (pos < 0) throw InputError(path + ": frame index below start_frame");
      while (static_cast<std::int64_t>(frames.size()) <= pos) {
        DetectionFrame f;
        f.frame_index = meta.start_frame + static_cast<std::int64_t>(frames.size());
        f.timestamp = meta.f > 0.0 ? static_cast<double>(f.frame_index) / meta.f : 0.0;
        frames.push_back(std::move(f));
      }
      frames[static_cast<std::size_t>(pos)].timestamp = ts;
      frames[static_cast<std::size_t>(pos)].points.push_back(p);
    } catch (const std::invalid_argument&) {
      throw InputError(path + ":" + std::to_string(line_no) + ": malformed number");
    } catch (const std::out_of_range&) {
      throw InputError(path + ":" + std::to_string(line_no) + ": number out of range");
    }
  }
  // Materialize trailing empty frames up to the declared count.
  if (meta.frame_count >= 0) {
    while (static_cast<std::int64_t>(frames.size()) < meta.frame_count) {
      DetectionFrame f;
      f.frame_index = meta.start_frame + static_cast<std::int64_t>(frames.size());
      f.timestamp = meta.f > 0.0 ? static_cast<double>(f.frame_index) / meta.f : 0.0;
      frames.push_back(std::move(f));
    }
    if (static_cast<std::int64_t>(frames.size()) > meta.frame_count) {
      throw InputError(path + ": more frames than the header declares");
    }
  } else {
    meta.frame_count = static_cast<std::int64_t>(frames.size());
  }
  return {std::move(frames), std::move(meta)};
}

void write_truth(const std::string& path, const TruthLog& truth) {
  auto out = open_out(path);
  out << "# blinktrack truth\n";
  write_meta(out, meta_from_truth(truth));
  out << "frame_index,marker_id,true_x,true_y,bit\n";
  for (std::size_t i = 0; i < truth.frames.size(); ++i) {
    for (const TruthState& ts : truth.frames[i]) {
      out << i << "," << ts.marker_id << "," << ts.x << "," << ts.y << ","
          << static_cast<int>(ts.bit) << "\n";
    }
  }
}

TruthLog read_truth(const std::string& path) {
  auto in = open_in(path);
  StreamMeta meta;
  meta.frame_count = -1;
  TruthLog truth;
  std::string line;
  bool header_row_seen = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (parse_meta_line(line, meta)) continue;
    if (!header_row_seen) {
      header_row_seen = true;
      continue;
    }
    const auto fields = split_csv(line);
    if (fields.size() != 5) {
      throw InputError(path + ":" + std::to_string(line_no) + ": expected 5 fields");
    }
    try {
      const auto idx = static_cast<std::size_t>(std::stoll(fields[0]));
      TruthState ts;
      ts.marker_id = std::stoi(fields[1]);
      ts.x = std::stod(fields[2]);
      ts.y = std::stod(fields[3]);
      ts.bit = static_cast<std::uint8_t>(std::stoi(fields[4]));
      while (truth.frames.size() <= idx) truth.frames.emplace_back();
      truth.frames[idx].push_back(ts);
    } catch (const std::invalid_argument&) {
      throw InputError(path + ":" + std::to_string(line_no) + ": malformed number");
    } catch (const std::out_of_range&) {
      throw InputError(path + ":" + std::to_string(line_no) + ": number out of range");
    }
  }
  truth.scenario_name = meta.scenario_name;
  truth.seed = meta.seed;
  truth.f = meta.f;
  truth.width = meta.width;
  truth.height = meta.height;
  truth.merge_radius = meta.merge_radius;
  if (meta.frame_count >= 0) {
    while (static_cast<std::int64_t>(truth.frames.size()) < meta.frame_count) {
      truth.frames.emplace_back();
    }
  }
  // The file stores unclamped projected pixels; recover in_view from the
  // recorded resolution.
  for (auto& frame : truth.frames) {
    for (TruthState& ts : frame) {
      ts.in_view = ts.x >= 0.0 && ts.x < truth.width && ts.y >= 0.0 && ts.y < truth.height;
    }
  }
  return truth;
}

void write_identifications(const std::string& path, const std::vector<FrameResult>& results,
                           const StreamMeta& meta) {
  auto out = open_out(path);
  out << "# blinktrack identifications\n";
  write_meta(out, meta);
  out << "frame_index,timestamp_s,led_id,x_px,y_px,track_id\n";
  for (const FrameResult& r : results) {
    for (const Identification& ident : r.identifications) {
      out << r.frame_index << "," << r.timestamp << "," << ident.led_id << "," << ident.x
          << "," << ident.y << "," << ident.track_id << "\n";
    }
  }
}

void write_metrics(const std::string& path, const MetricsReport& report) {
  auto out = open_out(path);
  out << "# blinktrack metrics\n";
  out << "# scenario: " << report.scenario_name << "\n";
  out << "# seed: " << report.seed << "\n";
  out << "# algo: " << report.algo << "\n";
  out << "# f: " << report.f << "\n";
  out << "# frames: " << report.frame_count << "\n";
  out << "# duration_s: " << report.duration << "\n";
  out << "# tolerance_px: " << report.tolerance_px << "\n";
  out << "# zero_tracks: " << (report.zero_tracks ? 1 : 0) << "\n";
  out << "metric,id,value\n";
  for (const auto& [id, rate] : report.success_rate_hz) {
    out << "success_rate_hz," << id << "," << rate << "\n";
  }
  for (const auto& [id, count] : report.correct_count) {
    out << "correct_count," << id << "," << count << "\n";
  }
  out << "purity,," << report.purity << "\n";
  out << "id_switch_count,," << report.id_switch_count << "\n";
  out << "merge_event_count,," << report.merge_event_count << "\n";
  if (!std::isnan(report.recovery_mean_frames)) {
    out << "recovery_mean_frames,," << report.recovery_mean_frames << "\n";
    out << "recovery_max_frames,," << report.recovery_max_frames << "\n";
  }
  out << "unrecovered_count,," << report.unrecovered_count << "\n";
  out << "peak_rows,," << report.peak_rows << "\n";
  out << "peak_pstates,," << report.peak_pstates << "\n";
  if (!std::isnan(report.rmse_px)) out << "rmse_px,," << report.rmse_px << "\n";
}

MetricsReport read_metrics(const std::string& path) {
  auto in = open_in(path);
  MetricsReport report;
  std::string line;
  bool header_row_seen = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream is(line.substr(1));
      std::string key;
      if (!(is >> key)) continue;
      if (key == "scenario:") {
        std::string rest;
        std::getline(is, rest);
        const auto begin = rest.find_first_not_of(' ');
        report.scenario_name = begin == std::string::npos ? "" : rest.substr(begin);
      } else if (key == "seed:") {
        is >> report.seed;
      } else if (key == "algo:") {
        is >> report.algo;
      } else if (key == "f:") {
        is >> report.f;
      } else if (key == "frames:") {
        is >> report.frame_count;
      } else if (key == "duration_s:") {
        is >> report.duration;
      } else if (key == "tolerance_px:") {
        is >> report.tolerance_px;
      } else if (key == "zero_tracks:") {
        int v = 0;
        is >> v;
        report.zero_tracks = v != 0;
      }
      continue;
    }
    if (!header_row_seen) {
      header_row_seen = true;
      continue;
    }
    const auto fields = split_csv(line);
    if (fields.size() != 3) {
      throw InputError(path + ":" + std::to_string(line_no) + ": expected 3 fields");
    }
    const std::string& metric = fields[0];
    try {
      if (metric == "success_rate_hz") {
        report.success_rate_hz[std::stoi(fields[1])] = std::stod(fields[2]);
      } else if (metric == "correct_count") {
        report.correct_count[std::stoi(fields[1])] = std::stoll(fields[2]);
      } else if (metric == "purity") {
        report.purity = std::stod(fields[2]);
      } else if (metric == "id_switch_count") {
        report.id_switch_count = std::stoll(fields[2]);
      } else if (metric == "merge_event_count") {
        report.merge_event_count = std::stoll(fields[2]);
      } else if (metric == "recovery_mean_frames") {
        report.recovery_mean_frames = std::stod(fields[2]);
      } else if (metric == "recovery_max_frames") {
        report.recovery_max_frames = std::stoll(fields[2]);
      } else if (metric == "unrecovered_count") {
        report.unrecovered_count = std::stoll(fields[2]);
      } else if (metric == "peak_rows") {
        report.peak_rows = std::stoll(fields[2]);
      } else if (metric == "peak_pstates") {
        report.peak_pstates = static_cast<std::size_t>(std::stoll(fields[2]));
      } else if (metric == "rmse_px") {
        report.rmse_px = std::stod(fields[2]);
      }
    } catch (const std::exception&) {
      throw InputError(path + ":" + std::to_string(line_no) + ": malformed value");
    }
  }
  return report;
}

void write_timing(const std::string& path, const std::vector<FrameResult>& results,
                  const StreamMeta& meta) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write file: " + path);
  out << std::scientific << std::setprecision(6);
  out << "# blinktrack timing\n";
  write_meta(out, meta);
  out << "frame_index,seconds\n";
  double sum = 0.0;
  std::vector<double> lat;
  lat.reserve(results.size());
  for (const FrameResult& r : results) {
    out << r.frame_index << "," << r.processing_time << "\n";
    sum += r.processing_time;
    lat.push_back(r.processing_time);
  }
  if (!lat.empty()) {
    std::sort(lat.begin(), lat.end());
    const std::size_t rank =
        static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(lat.size())));
    out << "mean," << sum / static_cast<double>(lat.size()) << "\n";
    out << "p95," << lat[std::min(lat.size() - 1, rank == 0 ? 0 : rank - 1)] << "\n";
  }
}

std::pair<double, double> read_timing_summary(const std::string& path) {
  auto in = open_in(path);
  double mean = std::numeric_limits<double>::quiet_NaN();
  double p95 = std::numeric_limits<double>::quiet_NaN();
  std::string line;
  while (std::getline(in, line)) {
    const auto fields = split_csv(line);
    if (fields.size() != 2) continue;
    try {
      if (fields[0] == "mean") mean = std::stod(fields[1]);
      if (fields[0] == "p95") p95 = std::stod(fields[1]);
    } catch (const std::exception&) {
    }
  }
  return {mean, p95};
}

}  // namespace blinktrack

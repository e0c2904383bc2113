#include "blinktrack/types.hpp"

#include <stdexcept>
#include <string>

namespace blinktrack {

void append_pstate(TSeries& series, const PState& p) {
  if (!series.states.empty()) {
    const std::int64_t expected = series.states.back().frame_index + 1;
    if (p.frame_index != expected) {
      throw std::invalid_argument(
          "append_pstate: frame_index " + std::to_string(p.frame_index) +
          " breaks the gap-free ordering (expected " + std::to_string(expected) + ")");
    }
  }
  series.states.push_back(p);
}

std::vector<OnSample> on_states(const TSeries& series) {
  std::vector<OnSample> out;
  for (const PState& s : series.states) {
    if (s.state == 1) {
      out.push_back({s.timestamp, s.x, s.y});
    }
  }
  return out;
}

std::size_t trailing_zero_run(const TSeries& series) {
  std::size_t run = 0;
  for (auto it = series.states.rbegin(); it != series.states.rend() && it->state == 0; ++it) {
    ++run;
  }
  return run;
}

}  // namespace blinktrack

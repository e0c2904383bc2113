#include "blinktrack/dictionary.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "blinktrack/errors.hpp"

namespace blinktrack {

int cyclic_hamming_distance(const std::vector<std::uint8_t>& a,
                            const std::vector<std::uint8_t>& b) {
  const std::size_t n = a.size();
  if (n == 0 || b.size() != n) {
    throw std::invalid_argument("cyclic_hamming_distance: sequences must have equal nonzero length");
  }
  int best = std::numeric_limits<int>::max();
  for (std::size_t r = 0; r < n; ++r) {
    int d = 0;
    for (std::size_t i = 0; i < n; ++i) {
      d += (a[i] != b[(i + r) % n]);
    }
    best = std::min(best, d);
  }
  return best;
}

int max_zero_run_cyclic(const std::vector<std::uint8_t>& seq) {
  const std::size_t n = seq.size();
  if (n == 0) return 0;
  if (std::all_of(seq.begin(), seq.end(), [](std::uint8_t b) { return b == 0; })) {
    return static_cast<int>(n);
  }
  int best = 0;
  int run = 0;
  // Two passes cover the wraparound run; the cap at n is unreachable here
  // because at least one bit is set.
  for (std::size_t i = 0; i < 2 * n; ++i) {
    if (seq[i % n] == 0) {
      ++run;
      best = std::max(best, run);
    } else {
      run = 0;
    }
  }
  return std::min(best, static_cast<int>(n));
}

std::optional<LedId> match_sequence(const TSeries& series, const BlinkDictionary& dict) {
  const std::size_t len = dict.sequence_length();
  if (len == 0 || series.states.size() < len) return std::nullopt;

  std::vector<std::uint8_t> window(len);
  const std::size_t offset = series.states.size() - len;
  for (std::size_t i = 0; i < len; ++i) {
    window[i] = series.states[offset + i].state;
  }

  int best = std::numeric_limits<int>::max();
  int best_count = 0;
  LedId best_id = 0;
  for (const auto& [id, seq] : dict.entries) {
    const int d = cyclic_hamming_distance(window, seq);
    if (d > dict.e) continue;
    if (d < best) {
      best = d;
      best_id = id;
      best_count = 1;
    } else if (d == best) {
      ++best_count;
    }
  }
  if (best_count != 1) return std::nullopt;
  return best_id;
}

void validate_dictionary(const BlinkDictionary& dict, int max_zero_run) {
  if (dict.entries.empty()) throw std::runtime_error("dictionary: no entries");
  if (dict.e < 0) throw std::runtime_error("dictionary: e must be >= 0");
  const std::size_t len = dict.sequence_length();
  if (len < 2) throw std::runtime_error("dictionary: sequence length must be >= 2");
  for (const auto& [id, seq] : dict.entries) {
    if (id < 0) throw std::runtime_error("dictionary: negative LED-ID");
    if (seq.size() != len) {
      throw std::runtime_error("dictionary: entry " + std::to_string(id) +
                               " has length " + std::to_string(seq.size()) +
                               ", expected " + std::to_string(len));
    }
    const int run = max_zero_run_cyclic(seq);
    if (run > max_zero_run) {
      throw std::runtime_error("dictionary: entry " + std::to_string(id) +
                               " has zero run " + std::to_string(run) +
                               " > allowed " + std::to_string(max_zero_run));
    }
  }
  const int min_dist = 2 * dict.e + 1;
  for (auto it = dict.entries.begin(); it != dict.entries.end(); ++it) {
    for (auto jt = std::next(it); jt != dict.entries.end(); ++jt) {
      const int d = cyclic_hamming_distance(it->second, jt->second);
      if (d < min_dist) {
        throw std::runtime_error("dictionary: entries " + std::to_string(it->first) +
                                 " and " + std::to_string(jt->first) +
                                 " have cyclic distance " + std::to_string(d) +
                                 " < required " + std::to_string(min_dist));
      }
    }
  }
}

BlinkDictionary generate_dictionary(int n_ids, int length, int max_zero_run, int e,
                                    std::uint64_t seed) {
  if (n_ids < 1) throw std::invalid_argument("generate_dictionary: n_ids must be >= 1");
  if (length < 2) throw std::invalid_argument("generate_dictionary: length must be >= 2");
  if (max_zero_run < 0 || e < 0) {
    throw std::invalid_argument("generate_dictionary: max_zero_run and e must be >= 0");
  }
  if (n_ids >= 2 && 2 * e + 1 > length) {
    throw std::runtime_error(
        "generate_dictionary: required cyclic distance " + std::to_string(2 * e + 1) +
        " exceeds sequence length " + std::to_string(length));
  }

  std::mt19937_64 rng(seed);
  const int min_dist = 2 * e + 1;
  const long budget = 200000;

  std::vector<std::vector<std::uint8_t>> accepted;
  std::vector<std::uint8_t> cand(static_cast<std::size_t>(length));
  for (long attempt = 0; attempt < budget && static_cast<int>(accepted.size()) < n_ids;
       ++attempt) {
    for (auto& bit : cand) bit = static_cast<std::uint8_t>(rng() & 1u);
    if (max_zero_run_cyclic(cand) > max_zero_run) continue;
    bool ok = true;
    for (const auto& prev : accepted) {
      if (cyclic_hamming_distance(cand, prev) < min_dist) {
        ok = false;
        break;
      }
    }
    if (ok) accepted.push_back(cand);
  }
  if (static_cast<int>(accepted.size()) < n_ids) {
    throw std::runtime_error(
        "generate_dictionary: found only " + std::to_string(accepted.size()) + " of " +
        std::to_string(n_ids) + " sequences (length " + std::to_string(length) +
        ", zero run <= " + std::to_string(max_zero_run) + ", distance >= " +
        std::to_string(min_dist) + ") within the search budget");
  }

  BlinkDictionary dict;
  dict.e = e;
  for (int id = 0; id < n_ids; ++id) {
    dict.entries[id] = std::move(accepted[static_cast<std::size_t>(id)]);
  }
  validate_dictionary(dict, max_zero_run);
  return dict;
}

BlinkDictionary load_dictionary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open dictionary file: " + path);

  BlinkDictionary dict;
  int b_m0 = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string key;
      if (hs >> key) {
        if (key == "e:") hs >> dict.e;
        if (key == "b_m0:") hs >> b_m0;
      }
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw InputError(path + ":" + std::to_string(line_no) + ": expected `id, bitstring`");
    }
    LedId id = 0;
    try {
      id = std::stoi(line.substr(0, comma));
    } catch (const std::exception&) {
      throw InputError(path + ":" + std::to_string(line_no) + ": bad LED-ID");
    }
    std::vector<std::uint8_t> seq;
    for (char c : line.substr(comma + 1)) {
      if (c == ' ' || c == '\t' || c == '\r') continue;
      if (c != '0' && c != '1') {
        throw InputError(path + ":" + std::to_string(line_no) + ": bitstring must be 0/1");
      }
      seq.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    if (dict.entries.count(id) != 0) {
      throw InputError(path + ":" + std::to_string(line_no) + ": duplicate LED-ID " +
                       std::to_string(id));
    }
    dict.entries[id] = std::move(seq);
  }
  if (dict.entries.empty()) throw InputError(path + ": no dictionary entries");

  const int run_limit = b_m0 >= 0 ? b_m0 : static_cast<int>(dict.sequence_length());
  try {
    validate_dictionary(dict, run_limit);
  } catch (const std::runtime_error& err) {
    throw InputError(path + ": " + err.what());
  }
  return dict;
}

void save_dictionary(const BlinkDictionary& dict, int max_zero_run, const std::string& path) {
  validate_dictionary(dict, max_zero_run);
  std::ofstream out(path);
  if (!out) throw InputError("cannot write dictionary file: " + path);
  out << "# blinktrack dictionary\n";
  out << "# e: " << dict.e << "\n";
  out << "# b_m0: " << max_zero_run << "\n";
  for (const auto& [id, seq] : dict.entries) {
    out << id << ", ";
    for (std::uint8_t b : seq) out << static_cast<int>(b);
    out << "\n";
  }
}

}  // namespace blinktrack

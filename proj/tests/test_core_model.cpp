#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <random>

#include "blinktrack/dictionary.hpp"
#include "blinktrack/errors.hpp"
#include "blinktrack/types.hpp"
#include "oracles.hpp"

using namespace blinktrack;

namespace {

TSeries make_series(std::initializer_list<int> bits, std::int64_t first_frame = 0) {
  TSeries s;
  s.id = 1;
  std::int64_t frame = first_frame;
  for (int b : bits) {
    s.states.push_back({static_cast<double>(frame) / 60.0, frame, 100.0, 100.0,
                        static_cast<std::uint8_t>(b)});
    ++frame;
  }
  return s;
}

std::vector<std::uint8_t> rotate(const std::vector<std::uint8_t>& seq, std::size_t r) {
  std::vector<std::uint8_t> out(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) out[i] = seq[(i + r) % seq.size()];
  return out;
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) {
    path = (std::filesystem::temp_directory_path() / name).string();
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("append_pstate: direct append and initialization") {
  TSeries s = make_series({1, 0, 1}, 7);
  append_pstate(s, {10.0 / 60.0, 10, 5.0, 6.0, 1});
  CHECK(s.size() == 4);
  CHECK(s.newest().frame_index == 10);

  TSeries fresh;
  append_pstate(fresh, {0.0, 0, 1.0, 2.0, 1});
  CHECK(fresh.size() == 1);
}

TEST_CASE("append_pstate: rejects duplicate and out-of-order frames") {
  TSeries s = make_series({1}, 9);
  CHECK_THROWS_AS(append_pstate(s, {9.0 / 60.0, 9, 0.0, 0.0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(append_pstate(s, {11.0 / 60.0, 11, 0.0, 0.0, 1}), std::invalid_argument);
  CHECK(s.size() == 1);
}

TEST_CASE("on_states: filters the '1'-states in order") {
  CHECK(on_states(make_series({1, 0, 0, 1, 1})).size() == 3);
  CHECK(on_states(make_series({0, 0, 0})).empty());
  CHECK(on_states(make_series({1, 1, 1, 1})).size() == 4);
}

TEST_CASE("trailing_zero_run counts from the newest end") {
  CHECK(trailing_zero_run(make_series({1, 1, 0, 0, 0})) == 3);
  CHECK(trailing_zero_run(make_series({1, 0, 1})) == 0);
  CHECK(trailing_zero_run(make_series({0, 0})) == 2);
}

TEST_CASE("match_sequence: exact rotation match") {
  BlinkDictionary dict = generate_dictionary(4, 18, 10, 0, 99);
  const auto& seq = dict.entries.at(3);
  TSeries s;
  const auto rotated = rotate(seq, 5);
  for (std::size_t i = 0; i < rotated.size(); ++i) {
    s.states.push_back({static_cast<double>(i) / 60.0, static_cast<std::int64_t>(i), 0.0, 0.0,
                        rotated[i]});
  }
  CHECK(match_sequence(s, dict) == 3);
}

TEST_CASE("match_sequence: series shorter than L_D never matches") {
  BlinkDictionary dict = generate_dictionary(2, 18, 10, 0, 99);
  TSeries s = make_series({1, 0, 1, 1, 0, 1, 1, 0, 1, 1});
  CHECK(!match_sequence(s, dict).has_value());
}

TEST_CASE("match_sequence: error budget controls near matches") {
  BlinkDictionary dict = generate_dictionary(4, 18, 10, 1, 7);
  const auto& seq = dict.entries.at(2);
  auto corrupted = rotate(seq, 4);
  corrupted[9] ^= 1;  // Hamming distance 1 from the best rotation
  CHECK(oracles::brute_force_cyclic_distance(corrupted, seq) == 1);

  TSeries s;
  for (std::size_t i = 0; i < corrupted.size(); ++i) {
    s.states.push_back({static_cast<double>(i) / 60.0, static_cast<std::int64_t>(i), 0.0, 0.0,
                        corrupted[i]});
  }
  BlinkDictionary strict = dict;
  strict.e = 0;
  CHECK(!match_sequence(s, strict).has_value());
  CHECK(match_sequence(s, dict) == 2);
}

TEST_CASE("match_sequence: rotation invariance") {
  BlinkDictionary dict = generate_dictionary(6, 18, 10, 0, 3);
  std::mt19937 gen(15);
  for (int trial = 0; trial < 40; ++trial) {
    const LedId id = static_cast<LedId>(gen() % 6);
    const std::size_t r = gen() % 18;
    const auto window = rotate(dict.entries.at(id), r);
    TSeries s;
    for (std::size_t i = 0; i < window.size(); ++i) {
      s.states.push_back({static_cast<double>(i) / 60.0, static_cast<std::int64_t>(i), 0.0, 0.0,
                          window[i]});
    }
    CHECK(match_sequence(s, dict) == id);
  }
}

TEST_CASE("generate_dictionary: invariants re-checked by brute force") {
  const BlinkDictionary dict = generate_dictionary(8, 18, 10, 0, 1);
  REQUIRE(dict.entries.size() == 8);
  for (const auto& [id, seq] : dict.entries) {
    CHECK(seq.size() == 18);
    CHECK(max_zero_run_cyclic(seq) <= 10);
  }
  for (auto it = dict.entries.begin(); it != dict.entries.end(); ++it) {
    for (auto jt = std::next(it); jt != dict.entries.end(); ++jt) {
      CHECK(oracles::brute_force_cyclic_distance(it->second, jt->second) >= 1);
    }
  }
}

TEST_CASE("generate_dictionary: deterministic in the seed") {
  const BlinkDictionary a = generate_dictionary(8, 18, 10, 0, 21);
  const BlinkDictionary b = generate_dictionary(8, 18, 10, 0, 21);
  CHECK(a.entries == b.entries);
  const BlinkDictionary c = generate_dictionary(8, 18, 10, 0, 22);
  CHECK(a.entries != c.entries);
}

TEST_CASE("generate_dictionary: single entry with tight constraints") {
  const BlinkDictionary dict = generate_dictionary(1, 2, 1, 0, 1);
  REQUIRE(dict.entries.size() == 1);
  CHECK(max_zero_run_cyclic(dict.entries.at(0)) <= 1);
}

TEST_CASE("generate_dictionary: infeasible combinations fail with a diagnostic") {
  CHECK_THROWS_AS(generate_dictionary(2, 2, 0, 1, 1), std::runtime_error);
  CHECK_THROWS_AS(generate_dictionary(0, 18, 10, 0, 1), std::invalid_argument);
}

TEST_CASE("dictionary file round trip preserves entries and validates") {
  const BlinkDictionary dict = generate_dictionary(8, 18, 10, 0, 1);
  TempFile tmp("blinktrack_dict_test.txt");
  save_dictionary(dict, 10, tmp.path);
  const BlinkDictionary loaded = load_dictionary(tmp.path);
  CHECK(loaded.entries == dict.entries);
  CHECK(loaded.e == dict.e);
}

TEST_CASE("dictionary loader rejects invariant violations") {
  TempFile tmp("blinktrack_dict_bad.txt");
  {
    FILE* f = std::fopen(tmp.path.c_str(), "w");
    // Entries 0 and 1 are cyclic rotations of each other: distance 0.
    std::fputs("# e: 0\n# b_m0: 10\n0, 110100\n1, 101001\n", f);
    std::fclose(f);
  }
  CHECK_THROWS_AS(load_dictionary(tmp.path), InputError);
  CHECK_THROWS_AS(load_dictionary("/nonexistent/dict.txt"), InputError);
}

TEST_CASE("max_zero_run_cyclic counts wraparound runs") {
  CHECK(max_zero_run_cyclic({0, 0, 1, 0}) == 3);
  CHECK(max_zero_run_cyclic({1, 1, 1}) == 0);
  CHECK(max_zero_run_cyclic({0, 0, 0}) == 3);
}

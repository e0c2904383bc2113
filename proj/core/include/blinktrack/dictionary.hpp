#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "blinktrack/types.hpp"

namespace blinktrack {

/// Codebook mapping LED-IDs to periodic on/off bit sequences. All sequences
/// share one length; any two entries keep a cyclic Hamming distance of at
/// least 2e+1 so that matching with up to `e` bit errors stays unambiguous.
struct BlinkDictionary {
  std::map<LedId, std::vector<std::uint8_t>> entries;
  int e = 0;  // allowed Hamming errors per matched window

  std::size_t sequence_length() const {
    return entries.empty() ? 0 : entries.begin()->second.size();
  }
};

/// Minimum Hamming distance between `a` and all cyclic rotations of `b`.
/// Sequences must have equal, nonzero length.
int cyclic_hamming_distance(const std::vector<std::uint8_t>& a,
                            const std::vector<std::uint8_t>& b);

/// Longest run of consecutive zeros in `seq`, counting wraparound.
int max_zero_run_cyclic(const std::vector<std::uint8_t>& seq);

/// Matches the newest L_D states of `series` against every cyclic rotation
/// of every dictionary entry. Returns the ID of the unique entry whose best
/// rotation is within `dict.e` bit errors; no entry in range, a tie at the
/// best distance, or a series shorter than L_D yield no match.
std::optional<LedId> match_sequence(const TSeries& series, const BlinkDictionary& dict);

/// Checks every dictionary invariant: nonempty, equal lengths, pairwise
/// cyclic distance >= 2e+1, zero runs <= max_zero_run. Throws
/// std::runtime_error describing the first violation.
void validate_dictionary(const BlinkDictionary& dict, int max_zero_run);

/// Randomized search for a codebook of `n_ids` sequences of length `length`
/// with zero runs <= max_zero_run and pairwise cyclic distance >= 2e+1.
/// Deterministic for a given seed; throws std::runtime_error when no
/// codebook is found within the search budget.
BlinkDictionary generate_dictionary(int n_ids, int length, int max_zero_run, int e,
                                    std::uint64_t seed);

/// Text format: `# key: value` header lines (e, b_m0), then one record per
/// entry: `id, bitstring`. The loader re-validates every invariant.
BlinkDictionary load_dictionary(const std::string& path);
void save_dictionary(const BlinkDictionary& dict, int max_zero_run, const std::string& path);

}  // namespace blinktrack

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gesture {

/// The label universe: m phonemes (ids 0..m-1) plus three signaling
/// classes appended after them.
struct AlphabetConfig {
    int num_phonemes;

    explicit AlphabetConfig(int m = 10);

    int preparation() const { return num_phonemes; }
    int retraction() const { return num_phonemes + 1; }
    int no_gesture() const { return num_phonemes + 2; }
    int num_classes() const { return num_phonemes + 3; }
};

/// A gesture formed by performing phonemes sequentially. Consecutive
/// entries are never equal.
struct GestureTuple {
    std::vector<int> phonemes;

    bool operator==(const GestureTuple&) const = default;
    auto operator<=>(const GestureTuple&) const = default;
};

/// Throws std::invalid_argument if t has consecutive repeats or ids
/// outside [0, m).
void validate_tuple(const GestureTuple& t, int num_phonemes);

/// Hyphen-joined ids, e.g. "5-1-3".
std::string to_string(const GestureTuple& t);
GestureTuple parse_tuple(const std::string& text);

/// Number of distinct tuples of length s over m phonemes with the
/// no-consecutive-repeat rule: m * (m-1)^(s-1).
std::uint64_t tuple_count(int num_phonemes, int tuple_length);

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// All valid tuples in lexicographic order of phoneme ids. Throws
/// std::length_error when the space exceeds the cap.
std::vector<GestureTuple> enumerate_tuples(int num_phonemes, int tuple_length,
                                           std::uint64_t cap = kDefaultEnumerationCap);

/// Rank of t in the lexicographic enumeration; bijective onto
/// [0, tuple_count(m, |t|)).
std::uint64_t tuple_index(const GestureTuple& t, int num_phonemes);

/// Inverse of tuple_index.
GestureTuple tuple_from_index(std::uint64_t index, int num_phonemes, int tuple_length);

}  // namespace gesture

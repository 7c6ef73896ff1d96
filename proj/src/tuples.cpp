#include "gesture/tuples.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace gesture {

AlphabetConfig::AlphabetConfig(int m) : num_phonemes(m) {
    if (m < 2) {
        throw std::domain_error("alphabet needs at least 2 phonemes, got " + std::to_string(m));
    }
}

void validate_tuple(const GestureTuple& t, int num_phonemes) {
    if (t.phonemes.empty()) {
        throw std::invalid_argument("tuple must contain at least one phoneme");
    }
    for (std::size_t i = 0; i < t.phonemes.size(); ++i) {
        int p = t.phonemes[i];
        if (p < 0 || p >= num_phonemes) {
            throw std::invalid_argument("phoneme id " + std::to_string(p) +
                                        " out of range [0, " + std::to_string(num_phonemes) + ")");
        }
        if (i > 0 && p == t.phonemes[i - 1]) {
            throw std::invalid_argument("consecutive repeat of phoneme " + std::to_string(p) +
                                        " at position " + std::to_string(i));
        }
    }
}

std::string to_string(const GestureTuple& t) {
    std::ostringstream out;
    for (std::size_t i = 0; i < t.phonemes.size(); ++i) {
        if (i > 0) out << '-';
        out << t.phonemes[i];
    }
    return out.str();
}

GestureTuple parse_tuple(const std::string& text) {
    GestureTuple t;
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, '-')) {
        std::size_t pos = 0;
        int id = std::stoi(part, &pos);
        if (pos != part.size()) {
            throw std::invalid_argument("bad phoneme id '" + part + "' in tuple '" + text + "'");
        }
        t.phonemes.push_back(id);
    }
    if (t.phonemes.empty()) {
        throw std::invalid_argument("empty tuple string");
    }
    return t;
}

std::uint64_t tuple_count(int num_phonemes, int tuple_length) {
    if (num_phonemes < 2) {
        throw std::domain_error("tuple_count requires m >= 2");
    }
    if (tuple_length < 1) {
        throw std::domain_error("tuple_count requires s >= 1");
    }
    std::uint64_t count = static_cast<std::uint64_t>(num_phonemes);
    const std::uint64_t base = static_cast<std::uint64_t>(num_phonemes - 1);
    for (int i = 1; i < tuple_length; ++i) {
        if (count > std::numeric_limits<std::uint64_t>::max() / base) {
            throw std::overflow_error("tuple count overflows 64 bits");
        }
        count *= base;
    }
    return count;
}

std::vector<GestureTuple> enumerate_tuples(int num_phonemes, int tuple_length, std::uint64_t cap) {
    const std::uint64_t total = tuple_count(num_phonemes, tuple_length);
    if (total > cap) {
        throw std::length_error("tuple space of size " + std::to_string(total) +
                                " exceeds enumeration cap " + std::to_string(cap));
    }
    std::vector<GestureTuple> out;
    out.reserve(total);
    std::vector<int> current(tuple_length);
    // Depth-first in id order yields lexicographic output.
    auto emit = [&](auto&& self, int depth) -> void {
        if (depth == tuple_length) {
            out.push_back(GestureTuple{current});
            return;
        }
        for (int p = 0; p < num_phonemes; ++p) {
            if (depth > 0 && p == current[depth - 1]) continue;
            current[depth] = p;
            self(self, depth + 1);
        }
    };
    emit(emit, 0);
    return out;
}

std::uint64_t tuple_index(const GestureTuple& t, int num_phonemes) {
    validate_tuple(t, num_phonemes);
    // Mixed radix: the first position has m choices, every later one m-1
    // (all ids except the previous one, in increasing order).
    std::uint64_t index = static_cast<std::uint64_t>(t.phonemes[0]);
    for (std::size_t i = 1; i < t.phonemes.size(); ++i) {
        int p = t.phonemes[i];
        int rank = p < t.phonemes[i - 1] ? p : p - 1;
        index = index * (num_phonemes - 1) + static_cast<std::uint64_t>(rank);
    }
    return index;
}

GestureTuple tuple_from_index(std::uint64_t index, int num_phonemes, int tuple_length) {
    const std::uint64_t total = tuple_count(num_phonemes, tuple_length);
    if (index >= total) {
        throw std::out_of_range("tuple index " + std::to_string(index) +
                                " out of range [0, " + std::to_string(total) + ")");
    }
    std::vector<int> digits(tuple_length);
    for (int i = tuple_length - 1; i >= 1; --i) {
        digits[i] = static_cast<int>(index % (num_phonemes - 1));
        index /= num_phonemes - 1;
    }
    digits[0] = static_cast<int>(index);
    GestureTuple t;
    t.phonemes.resize(tuple_length);
    t.phonemes[0] = digits[0];
    for (int i = 1; i < tuple_length; ++i) {
        int rank = digits[i];
        t.phonemes[i] = rank < t.phonemes[i - 1] ? rank : rank + 1;
    }
    return t;
}

}  // namespace gesture

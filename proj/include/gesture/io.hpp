#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "gesture/decoder.hpp"
#include "gesture/eval.hpp"
#include "gesture/pipeline.hpp"
#include "gesture/simulator.hpp"
#include "gesture/tuples.hpp"

namespace gesture {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Stream CSV: header "class_0,..,class_{m-1},preparation,retraction,no_gesture",
/// then one comma-separated row of raw scores per frame. Frame index is
/// implicit in row order.
void write_stream_csv(std::ostream& out, const std::vector<RawScoreFrame>& frames,
                      const AlphabetConfig& alphabet);
std::string stream_csv_header(const AlphabetConfig& alphabet);

/// Parses a stream file, inferring m from the header. When
/// expected_phonemes >= 0 a mismatching header is a ParseError.
std::vector<RawScoreFrame> read_stream_csv(std::istream& in, int expected_phonemes = -1);

bool looks_like_stream_header(const std::string& first_line);

/// Matrix file for the decoder: one softmaxed column of P per line,
/// N comma-separated probabilities, T lines.
ScoreMatrix read_score_matrix(std::istream& in);

/// Manifest line: path,tuple(hyphen-joined),speed,seed
struct ManifestEntry {
    std::string path;
    GestureTuple ground_truth;
    Speed speed;
    std::uint64_t seed = 0;

    bool operator==(const ManifestEntry&) const = default;
};

void write_manifest(std::ostream& out, const std::vector<ManifestEntry>& entries);
std::vector<ManifestEntry> read_manifest(std::istream& in);

/// One machine-readable JSON record per report; round-trips exactly.
std::string report_to_json(const EvalReport& report);
EvalReport report_from_json(const std::string& text);

}  // namespace gesture

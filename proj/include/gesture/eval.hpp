#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gesture/pipeline.hpp"
#include "gesture/tuples.hpp"

namespace gesture {

/// One evaluated stream: what was performed, what the pipeline emitted.
struct EvalRecord {
    GestureTuple ground_truth;
    std::vector<RecognitionEvent> events;
    std::optional<GestureTuple> predicted;  // present iff a tuple was recognized
};

/// Builds a record, deriving predicted from the events.
EvalRecord make_record(GestureTuple ground_truth, std::vector<RecognitionEvent> events);

enum class Outcome { Correct, DetectorError, TupleError };

struct Classification {
    Outcome outcome;
    int single_errors = 0;  // wrong positions inside a tuple error

    bool operator==(const Classification&) const = default;
};

/// Detector error when SoG or EoG is missing or decoding failed; tuple
/// error when the recovered sequence differs from the ground truth, with
/// the positionwise mismatch count attached.
Classification classify_record(const EvalRecord& record);

struct EvalReport {
    std::int64_t n_samples = 0;
    std::int64_t detector_errors = 0;
    std::int64_t tuple_errors = 0;
    std::int64_t single_errors = 0;
    double accuracy_percent = 0.0;

    bool operator==(const EvalReport&) const = default;
};

/// accuracy = (1 - (detector + tuple errors) / n) * 100
double total_accuracy_percent(std::int64_t detector_errors, std::int64_t tuple_errors,
                              std::int64_t n_samples);

EvalReport aggregate(const std::vector<EvalRecord>& records);

/// Aligned table with Det / Tup / Sin / Acc columns.
std::string format_report_table(const EvalReport& report);

}  // namespace gesture

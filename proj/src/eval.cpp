#include "gesture/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace gesture {

EvalRecord make_record(GestureTuple ground_truth, std::vector<RecognitionEvent> events) {
    EvalRecord record{std::move(ground_truth), std::move(events), std::nullopt};
    for (const RecognitionEvent& e : record.events) {
        if (e.kind == EventKind::TupleRecognized) {
            record.predicted = e.tuple;
        }
    }
    return record;
}

Classification classify_record(const EvalRecord& record) {
    bool has_sog = false;
    bool has_eog = false;
    bool decode_failed = false;
    for (const RecognitionEvent& e : record.events) {
        if (e.kind == EventKind::SoG) has_sog = true;
        if (e.kind == EventKind::EoG) has_eog = true;
        if (e.kind == EventKind::DecodeFailed) decode_failed = true;
    }
    if (!has_sog || !has_eog || decode_failed || !record.predicted.has_value()) {
        return {Outcome::DetectorError, 0};
    }
    const auto& truth = record.ground_truth.phonemes;
    const auto& predicted = record.predicted->phonemes;
    if (truth.size() != predicted.size()) {
        // Length mismatch has no positionwise alignment; count every position wrong.
        return {Outcome::TupleError, static_cast<int>(std::max(truth.size(), predicted.size()))};
    }
    int mismatches = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] != predicted[i]) ++mismatches;
    }
    if (mismatches == 0) {
        return {Outcome::Correct, 0};
    }
    return {Outcome::TupleError, mismatches};
}

double total_accuracy_percent(std::int64_t detector_errors, std::int64_t tuple_errors,
                              std::int64_t n_samples) {
    if (n_samples < 1) {
        throw std::invalid_argument("n_samples must be >= 1");
    }
    return (1.0 - static_cast<double>(detector_errors + tuple_errors) /
                      static_cast<double>(n_samples)) *
           100.0;
}

EvalReport aggregate(const std::vector<EvalRecord>& records) {
    if (records.empty()) {
        throw std::invalid_argument("cannot aggregate an empty record set");
    }
    EvalReport report;
    report.n_samples = static_cast<std::int64_t>(records.size());
    for (const EvalRecord& record : records) {
        const Classification c = classify_record(record);
        switch (c.outcome) {
            case Outcome::Correct: break;
            case Outcome::DetectorError: report.detector_errors += 1; break;
            case Outcome::TupleError:
                report.tuple_errors += 1;
                report.single_errors += c.single_errors;
                break;
        }
    }
    report.accuracy_percent =
        total_accuracy_percent(report.detector_errors, report.tuple_errors, report.n_samples);
    return report;
}

std::string format_report_table(const EvalReport& report) {
    char buffer[256];
    std::snprintf(buffer, sizeof(buffer),
                  "%8s %6s %6s %6s %8s\n%8lld %6lld %6lld %6lld %8.2f\n", "Samples", "Det",
                  "Tup", "Sin", "Acc(%)", static_cast<long long>(report.n_samples),
                  static_cast<long long>(report.detector_errors),
                  static_cast<long long>(report.tuple_errors),
                  static_cast<long long>(report.single_errors), report.accuracy_percent);
    return buffer;
}

}  // namespace gesture

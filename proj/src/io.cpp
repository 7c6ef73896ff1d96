#include "gesture/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace gesture {

namespace {

std::string format_double(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(line);
    while (std::getline(in, part, sep)) {
        parts.push_back(part);
    }
    if (!line.empty() && line.back() == sep) {
        parts.push_back("");
    }
    return parts;
}

double parse_double(const std::string& text, int line_number) {
    const char* begin = text.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw ParseError("line " + std::to_string(line_number) + ": bad number '" + text + "'");
    }
    return v;
}

}  // namespace

std::string stream_csv_header(const AlphabetConfig& alphabet) {
    std::string header;
    for (int i = 0; i < alphabet.num_phonemes; ++i) {
        header += "class_" + std::to_string(i) + ",";
    }
    header += "preparation,retraction,no_gesture";
    return header;
}

void write_stream_csv(std::ostream& out, const std::vector<RawScoreFrame>& frames,
                      const AlphabetConfig& alphabet) {
    out << stream_csv_header(alphabet) << '\n';
    for (const RawScoreFrame& frame : frames) {
        for (std::size_t i = 0; i < frame.scores.size(); ++i) {
            if (i > 0) out << ',';
            out << format_double(frame.scores[i]);
        }
        out << '\n';
    }
}

bool looks_like_stream_header(const std::string& first_line) {
    return first_line.rfind("class_0,", 0) == 0;
}

std::vector<RawScoreFrame> read_stream_csv(std::istream& in, int expected_phonemes) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("line 1: empty stream file");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!looks_like_stream_header(line)) {
        throw ParseError("line 1: missing stream header");
    }
    const std::vector<std::string> names = split(line, ',');
    const int columns = static_cast<int>(names.size());
    const int phonemes = columns - 3;
    if (phonemes < 2 || names[columns - 3] != "preparation" ||
        names[columns - 2] != "retraction" || names[columns - 1] != "no_gesture") {
        throw ParseError("line 1: malformed stream header");
    }
    if (expected_phonemes >= 0 && phonemes != expected_phonemes) {
        throw ParseError("line 1: stream has " + std::to_string(phonemes) +
                         " phoneme columns, expected " + std::to_string(expected_phonemes));
    }

    std::vector<RawScoreFrame> frames;
    int line_number = 1;
    std::int64_t timestamp = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> parts = split(line, ',');
        if (static_cast<int>(parts.size()) != columns) {
            throw ParseError("line " + std::to_string(line_number) + ": expected " +
                             std::to_string(columns) + " values, got " +
                             std::to_string(parts.size()));
        }
        RawScoreFrame frame;
        frame.timestamp = timestamp++;
        frame.scores.reserve(columns);
        for (const std::string& part : parts) {
            frame.scores.push_back(parse_double(part, line_number));
        }
        frames.push_back(std::move(frame));
    }
    return frames;
}

ScoreMatrix read_score_matrix(std::istream& in) {
    std::vector<std::vector<double>> columns;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> column;
        for (const std::string& part : split(line, ',')) {
            column.push_back(parse_double(part, line_number));
        }
        try {
            validate_probability_column(column);
        } catch (const std::invalid_argument& e) {
            throw ParseError("line " + std::to_string(line_number) + ": " + e.what());
        }
        columns.push_back(std::move(column));
    }
    if (columns.empty()) {
        throw ParseError("matrix file contains no rows");
    }
    try {
        return ScoreMatrix(std::move(columns));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

void write_manifest(std::ostream& out, const std::vector<ManifestEntry>& entries) {
    for (const ManifestEntry& entry : entries) {
        out << entry.path << ',' << to_string(entry.ground_truth) << ','
            << to_string(entry.speed) << ',' << entry.seed << '\n';
    }
}

std::vector<ManifestEntry> read_manifest(std::istream& in) {
    std::vector<ManifestEntry> entries;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> parts = split(line, ',');
        if (parts.size() != 4) {
            throw ParseError("line " + std::to_string(line_number) +
                             ": manifest entry needs 4 fields, got " +
                             std::to_string(parts.size()));
        }
        ManifestEntry entry;
        entry.path = parts[0];
        try {
            entry.ground_truth = parse_tuple(parts[1]);
            entry.speed = parse_speed(parts[2]);
        } catch (const std::invalid_argument& e) {
            throw ParseError("line " + std::to_string(line_number) + ": " + e.what());
        }
        entry.seed = std::strtoull(parts[3].c_str(), nullptr, 10);
        entries.push_back(std::move(entry));
    }
    return entries;
}

std::string report_to_json(const EvalReport& report) {
    nlohmann::json j{{"n_samples", report.n_samples},
                     {"detector_errors", report.detector_errors},
                     {"tuple_errors", report.tuple_errors},
                     {"single_errors", report.single_errors},
                     {"accuracy_percent", report.accuracy_percent}};
    return j.dump();
}

EvalReport report_from_json(const std::string& text) {
    try {
        const nlohmann::json j = nlohmann::json::parse(text);
        EvalReport report;
        report.n_samples = j.at("n_samples").get<std::int64_t>();
        report.detector_errors = j.at("detector_errors").get<std::int64_t>();
        report.tuple_errors = j.at("tuple_errors").get<std::int64_t>();
        report.single_errors = j.at("single_errors").get<std::int64_t>();
        report.accuracy_percent = j.at("accuracy_percent").get<double>();
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad report: ") + e.what());
    }
}

}  // namespace gesture

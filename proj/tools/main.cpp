#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gesture/decoder.hpp"
#include "gesture/eval.hpp"
#include "gesture/io.hpp"
#include "gesture/pipeline.hpp"
#include "gesture/simulator.hpp"
#include "gesture/tuples.hpp"

namespace fs = std::filesystem;
using namespace gesture;

namespace {

// Display names for the default 10-phoneme alphabet; ids are what the
// engine works with.
const char* const kPhonemeNames[10] = {
    "Fist",        "Flat Hand", "Thumb Up",  "Thumb Left", "Thumb Right",
    "Two Fingers", "Five Fingers", "Stop Sign", "Check",   "Zero",
};

std::string class_display_name(const AlphabetConfig& alphabet, int class_id) {
    if (class_id == alphabet.preparation()) return "preparation";
    if (class_id == alphabet.retraction()) return "retraction";
    if (class_id == alphabet.no_gesture()) return "no_gesture";
    if (alphabet.num_phonemes == 10 && class_id >= 0 && class_id < 10) {
        return kPhonemeNames[class_id];
    }
    return "class_" + std::to_string(class_id);
}

std::string event_to_string(const RecognitionEvent& e) {
    switch (e.kind) {
        case EventKind::SoG: return "SoG frame=" + std::to_string(e.frame);
        case EventKind::EoG: return "EoG frame=" + std::to_string(e.frame);
        case EventKind::DecodeFailed: return "DecodeFailed frame=" + std::to_string(e.frame);
        case EventKind::TupleRecognized: {
            char buffer[64];
            std::snprintf(buffer, sizeof(buffer), " score=%.3f", e.score.value_or(0.0));
            return "TupleRecognized tuple=" + to_string(*e.tuple) +
                   " frame=" + std::to_string(e.frame) + buffer;
        }
    }
    return "?";
}

struct RunOptions {
    int m = 10;
    int s = 3;
    int k = -1;  // -1: derive from s
    double delta = -0.2;
    int gamma = 300;
    int post_window = 5;
    int detector_queue = 8;
    double sog_threshold = 5.0;
    double eog_threshold = 5.0;

    PipelineConfig pipeline_config() const {
        PipelineConfig config;
        config.post_window = post_window;
        config.detector_queue_len = detector_queue;
        config.sog_threshold = sog_threshold;
        config.eog_threshold = eog_threshold;
        config.decoder.max_transitions = k >= 0 ? k : s - 1;
        config.decoder.transition_cost = delta;
        config.decoder.beam_limit = gamma;
        return config;
    }
};

void add_pipeline_flags(CLI::App* cmd, RunOptions& opts) {
    cmd->add_option("--m", opts.m, "Number of phonemes")->check(CLI::Range(2, 1000));
    cmd->add_option("--s", opts.s, "Tuple length")->check(CLI::PositiveNumber);
    cmd->add_option("--k", opts.k, "Allowed transitions (default: s-1)");
    cmd->add_option("--delta", opts.delta, "Transition cost (<= 0)");
    cmd->add_option("--gamma", opts.gamma, "Beam limit")->check(CLI::PositiveNumber);
    cmd->add_option("--post-window", opts.post_window, "Averaging window width")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--detector-queue", opts.detector_queue, "Detector queue length")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--sog-threshold", opts.sog_threshold, "Start-of-gesture threshold");
    cmd->add_option("--eog-threshold", opts.eog_threshold, "End-of-gesture threshold");
}

void plot_stream(const AlphabetConfig& alphabet, const std::vector<RawScoreFrame>& frames,
                 int post_window) {
    std::printf("%8s  %-14s %6s  chart\n", "frame", "top class", "prob");
    for (std::size_t start = 0; start + post_window <= frames.size(); start += post_window) {
        std::vector<RawScoreFrame> window(frames.begin() + start,
                                          frames.begin() + start + post_window);
        const std::vector<double> processed = post_process(window);
        int top = 0;
        for (std::size_t i = 1; i < processed.size(); ++i) {
            if (processed[i] > processed[top]) top = static_cast<int>(i);
        }
        const int bar = static_cast<int>(processed[top] * 40.0 + 0.5);
        std::printf("%8zu  %-14s %6.3f  %s\n", start,
                    class_display_name(alphabet, top).c_str(), processed[top],
                    std::string(bar, '#').c_str());
    }
}

int cmd_tuples(int m, int s, bool list, std::uint64_t cap) {
    if (list) {
        const auto tuples = enumerate_tuples(m, s, cap);
        for (std::size_t i = 0; i < tuples.size(); ++i) {
            std::printf("%zu %s\n", i, to_string(tuples[i]).c_str());
        }
    } else {
        std::printf("%llu\n", static_cast<unsigned long long>(tuple_count(m, s)));
    }
    return 0;
}

int cmd_decode(const std::string& path, const DecoderParams& params) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open " << path << "\n";
        return 1;
    }
    const ScoreMatrix matrix = read_score_matrix(in);
    const Path best = decode(matrix, params);
    std::string sequence;
    for (std::size_t i = 0; i < best.sequence.size(); ++i) {
        if (i > 0) sequence += ',';
        sequence += std::to_string(best.sequence[i]);
    }
    std::printf("pi=[%s] score=%.3f k=%d\n", sequence.c_str(), best.score, best.transitions);
    return 0;
}

int cmd_simulate(const RunOptions& opts, int per_class, const std::vector<std::string>& speed_names,
                 double sigma, int blend, std::uint64_t seed, const std::string& out_dir) {
    const AlphabetConfig alphabet(opts.m);
    std::vector<Speed> speeds;
    for (const std::string& name : speed_names) speeds.push_back(parse_speed(name));
    NoiseModel noise{sigma, blend, seed};

    const auto streams = generate_test_set(alphabet, opts.s, per_class, speeds, noise);
    fs::create_directories(out_dir);
    std::vector<ManifestEntry> manifest;
    manifest.reserve(streams.size());
    for (std::size_t i = 0; i < streams.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "stream_%06zu.csv", i);
        std::ofstream out(fs::path(out_dir) / name, std::ios::binary);
        write_stream_csv(out, streams[i].frames, alphabet);
        manifest.push_back({name, streams[i].ground_truth, streams[i].speed, streams[i].seed});
    }
    std::ofstream mout(fs::path(out_dir) / "manifest.csv", std::ios::binary);
    write_manifest(mout, manifest);
    std::printf("wrote %zu streams (seed %llu) to %s\n", streams.size(),
                static_cast<unsigned long long>(seed), out_dir.c_str());
    return 0;
}

int cmd_run(const RunOptions& opts, const std::string& input, const std::string& out_path,
            bool plot) {
    const AlphabetConfig alphabet(opts.m);
    const PipelineConfig config = opts.pipeline_config();

    std::ifstream probe(input);
    if (!probe) {
        std::cerr << "error: cannot open " << input << "\n";
        return 1;
    }
    std::string first_line;
    std::getline(probe, first_line);
    probe.close();
    if (!first_line.empty() && first_line.back() == '\r') first_line.pop_back();

    if (looks_like_stream_header(first_line)) {
        std::ifstream in(input);
        const auto frames = read_stream_csv(in, opts.m);
        Pipeline pipeline(alphabet, config);
        for (const RecognitionEvent& e : pipeline.push_frames(frames)) {
            std::printf("%s\n", event_to_string(e).c_str());
        }
        if (plot) plot_stream(alphabet, frames, config.post_window);
        return 0;
    }

    // Manifest mode: run and score every referenced stream.
    std::ifstream in(input);
    const auto manifest = read_manifest(in);
    const fs::path base = fs::path(input).parent_path();
    std::vector<EvalRecord> records;
    records.reserve(manifest.size());
    for (const ManifestEntry& entry : manifest) {
        std::vector<RecognitionEvent> events;
        try {
            std::ifstream stream_in(base / entry.path);
            if (!stream_in) {
                throw ParseError(entry.path + ": cannot open");
            }
            const auto frames = read_stream_csv(stream_in, opts.m);
            Pipeline pipeline(alphabet, config);
            events = pipeline.push_frames(frames);
        } catch (const std::exception& e) {
            std::cerr << "warning: " << entry.path << ": " << e.what()
                      << " (counted as detector error)\n";
            events.clear();
        }
        records.push_back(make_record(entry.ground_truth, std::move(events)));
    }
    const EvalReport report = aggregate(records);
    std::printf("%s", format_report_table(report).c_str());
    const std::string json = report_to_json(report);
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        out << json << '\n';
    } else {
        std::printf("%s\n", json.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scaled gesture-tuple recognition: beam decoding, online "
                 "detection, simulation and evaluation"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a config file");

    RunOptions opts;

    auto* tuples = app.add_subcommand("tuples", "Count or list the gesture-tuple space");
    int tuples_m = 10;
    int tuples_s = 3;
    bool list = false;
    std::uint64_t cap = kDefaultEnumerationCap;
    tuples->add_option("--m", tuples_m, "Number of phonemes")->check(CLI::Range(2, 1000000));
    tuples->add_option("--s", tuples_s, "Tuple length")->check(CLI::PositiveNumber);
    tuples->add_flag("--list", list, "Print the full enumeration with indices");
    tuples->add_option("--cap", cap, "Enumeration size cap");

    auto* decode_cmd = app.add_subcommand("decode", "Decode a stored score matrix");
    std::string matrix_path;
    DecoderParams decoder_params;
    decode_cmd->add_option("matrix", matrix_path, "Matrix file, one column per line")->required();
    decode_cmd->add_option("--k", decoder_params.max_transitions, "Allowed transitions");
    decode_cmd->add_option("--delta", decoder_params.transition_cost, "Transition cost");
    decode_cmd->add_option("--gamma", decoder_params.beam_limit, "Beam limit");

    auto* simulate = app.add_subcommand("simulate", "Generate a synthetic labeled test set");
    int per_class = 1;
    std::vector<std::string> speed_names{"slow", "medium", "fast"};
    double sigma = 0.0;
    int blend = 0;
    std::uint64_t seed = 0;
    std::string out_dir;
    add_pipeline_flags(simulate, opts);
    simulate->add_option("--per-class", per_class, "Streams per tuple class")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--speeds", speed_names, "Speed cycle (slow/medium/fast)");
    simulate->add_option("--sigma", sigma, "Logit noise standard deviation")
        ->check(CLI::NonNegativeNumber);
    simulate->add_option("--blend", blend, "Boundary cross-fade width in frames")
        ->check(CLI::NonNegativeNumber);
    simulate->add_option("--seed", seed, "Master seed");
    simulate->add_option("--out", out_dir, "Output directory")->required();

    auto* run = app.add_subcommand("run", "Run the pipeline over a stream or manifest");
    std::string input;
    std::string report_path;
    bool plot = false;
    add_pipeline_flags(run, opts);
    run->add_option("input", input, "Stream CSV or manifest file")->required();
    run->add_option("--out", report_path, "Write the machine-readable report here");
    run->add_flag("--plot", plot, "Print a class-probability timeline (single stream)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*tuples) return cmd_tuples(tuples_m, tuples_s, list, cap);
        if (*decode_cmd) return cmd_decode(matrix_path, decoder_params);
        if (*simulate) {
            return cmd_simulate(opts, per_class, speed_names, sigma, blend, seed, out_dir);
        }
        if (*run) return cmd_run(opts, input, report_path, plot);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

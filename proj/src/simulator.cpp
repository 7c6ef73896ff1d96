#include "gesture/simulator.hpp"

#include <numeric>
#include <stdexcept>

#include "gesture/rng.hpp"

namespace gesture {

int speed_frame_budget(Speed speed) {
    switch (speed) {
        case Speed::Slow: return 300;
        case Speed::Medium: return 240;
        case Speed::Fast: return 180;
    }
    throw std::invalid_argument("unknown speed");
}

std::string to_string(Speed speed) {
    switch (speed) {
        case Speed::Slow: return "slow";
        case Speed::Medium: return "medium";
        case Speed::Fast: return "fast";
    }
    throw std::invalid_argument("unknown speed");
}

Speed parse_speed(const std::string& name) {
    if (name == "slow") return Speed::Slow;
    if (name == "medium") return Speed::Medium;
    if (name == "fast") return Speed::Fast;
    throw std::invalid_argument("unknown speed '" + name + "'");
}

int SimulationScript::total_frames() const {
    int total = 0;
    for (const Segment& s : segments) total += s.duration;
    return total;
}

SimulationScript script_performance(const AlphabetConfig& alphabet, const GestureTuple& tuple,
                                    Speed speed, std::uint64_t seed,
                                    const ScriptOptions& options) {
    validate_tuple(tuple, alphabet.num_phonemes);
    const int budget = speed_frame_budget(speed);
    const int phoneme_count = static_cast<int>(tuple.phonemes.size());
    const int mid_segments = phoneme_count + 2;  // preparation + phonemes + retraction

    std::vector<int> durations(mid_segments, options.phoneme_min_frames);
    durations.front() = options.signal_min_frames;
    durations.back() = options.signal_min_frames;
    const int minimum = std::accumulate(durations.begin(), durations.end(), 0);
    if (budget < minimum) {
        throw std::invalid_argument("frame budget " + std::to_string(budget) +
                                    " below minimum allocation " + std::to_string(minimum));
    }

    // Spread the slack proportionally to random weights, leftovers round-robin.
    Rng rng(seed);
    int slack = budget - minimum;
    std::vector<int> weights(mid_segments);
    long weight_sum = 0;
    for (int& w : weights) {
        w = 1 + rng.uniform_int(1000);
        weight_sum += w;
    }
    int assigned = 0;
    for (int i = 0; i < mid_segments; ++i) {
        int extra = static_cast<int>(static_cast<long>(slack) * weights[i] / weight_sum);
        durations[i] += extra;
        assigned += extra;
    }
    for (int i = 0; assigned < slack; i = (i + 1) % mid_segments, ++assigned) {
        durations[i] += 1;
    }

    SimulationScript script;
    script.ground_truth = tuple;
    script.segments.push_back({alphabet.no_gesture(), options.padding_frames});
    script.segments.push_back({alphabet.preparation(), durations.front()});
    for (int i = 0; i < phoneme_count; ++i) {
        script.segments.push_back({tuple.phonemes[i], durations[i + 1]});
    }
    script.segments.push_back({alphabet.retraction(), durations.back()});
    script.segments.push_back({alphabet.no_gesture(), options.padding_frames});
    return script;
}

std::vector<RawScoreFrame> render_scores(const AlphabetConfig& alphabet,
                                         const SimulationScript& script,
                                         const NoiseModel& noise) {
    const int total = script.total_frames();
    const int classes = alphabet.num_classes();

    std::vector<int> active(total);
    std::vector<int> starts;  // first frame of every segment after the first
    {
        int frame = 0;
        for (std::size_t i = 0; i < script.segments.size(); ++i) {
            if (i > 0) starts.push_back(frame);
            for (int d = 0; d < script.segments[i].duration; ++d) {
                active[frame++] = script.segments[i].class_id;
            }
        }
    }

    std::vector<RawScoreFrame> frames(total);
    for (int f = 0; f < total; ++f) {
        frames[f].timestamp = f;
        frames[f].scores.assign(classes, 0.0);
        frames[f].scores[active[f]] = kActiveLogit;
    }

    if (noise.blend_width > 0) {
        const int half = noise.blend_width / 2;
        for (std::size_t b = 0; b < starts.size(); ++b) {
            const int boundary = starts[b];
            const int prev = active[boundary - 1];
            const int next = active[boundary];
            if (prev == next) continue;
            for (int f = boundary - half; f <= boundary - half + noise.blend_width; ++f) {
                if (f < 0 || f >= total) continue;
                const double alpha =
                    static_cast<double>(f - (boundary - half)) / noise.blend_width;
                frames[f].scores.assign(classes, 0.0);
                frames[f].scores[prev] = kActiveLogit * (1.0 - alpha);
                frames[f].scores[next] = kActiveLogit * alpha;
            }
        }
    }

    if (noise.logit_sigma > 0.0) {
        Rng rng(noise.seed);
        for (RawScoreFrame& frame : frames) {
            for (double& v : frame.scores) {
                v += rng.gaussian(noise.logit_sigma);
            }
        }
    }
    return frames;
}

std::vector<GeneratedStream> generate_test_set(const AlphabetConfig& alphabet, int tuple_length,
                                               int samples_per_class,
                                               const std::vector<Speed>& speeds,
                                               const NoiseModel& noise, std::uint64_t cap) {
    if (samples_per_class < 1) {
        throw std::invalid_argument("samples_per_class must be >= 1");
    }
    if (speeds.empty()) {
        throw std::invalid_argument("at least one speed is required");
    }
    const std::vector<GestureTuple> tuples =
        enumerate_tuples(alphabet.num_phonemes, tuple_length, cap);

    std::vector<GeneratedStream> out;
    out.reserve(tuples.size() * samples_per_class);
    std::uint64_t ordinal = 0;
    for (const GestureTuple& tuple : tuples) {
        for (int sample = 0; sample < samples_per_class; ++sample, ++ordinal) {
            const Speed speed = speeds[ordinal % speeds.size()];
            const std::uint64_t stream_seed = splitmix64(noise.seed ^ splitmix64(ordinal + 1));
            NoiseModel stream_noise = noise;
            stream_noise.seed = splitmix64(stream_seed);
            GeneratedStream stream;
            stream.script = script_performance(alphabet, tuple, speed, stream_seed);
            stream.frames = render_scores(alphabet, stream.script, stream_noise);
            stream.ground_truth = tuple;
            stream.speed = speed;
            stream.seed = stream_seed;
            out.push_back(std::move(stream));
        }
    }
    return out;
}

}  // namespace gesture

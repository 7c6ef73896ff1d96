#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gesture/pipeline.hpp"
#include "gesture/tuples.hpp"

namespace gesture {

/// Frame budgets for a whole tuple performance at 45 fps.
enum class Speed { Slow, Medium, Fast };

int speed_frame_budget(Speed speed);  // 300 / 240 / 180
std::string to_string(Speed speed);
Speed parse_speed(const std::string& name);

struct Segment {
    int class_id;
    int duration;  // frames

    bool operator==(const Segment&) const = default;
};

/// A labeled timeline: no-gesture, preparation, one segment per phoneme,
/// retraction, no-gesture.
struct SimulationScript {
    std::vector<Segment> segments;
    GestureTuple ground_truth;

    int total_frames() const;
};

struct NoiseModel {
    double logit_sigma = 0.0;  // per-entry Gaussian noise on logits
    int blend_width = 0;       // frames of linear cross-fade at boundaries
    std::uint64_t seed = 0;
};

struct ScriptOptions {
    int phoneme_min_frames = 25;  // 5 x post_window, so each phoneme survives averaging
    int signal_min_frames = 35;   // long enough for the default detector to fire
    int padding_frames = 60;      // no-gesture lead-in / tail
};

/// Logit placed on the active class; elsewhere zero. A clean softmax over
/// 13 classes then puts about 0.92 on the active class.
inline constexpr double kActiveLogit = 5.0;

/// Splits the speed's frame budget across preparation, the phonemes and
/// retraction with randomized proportions. Deterministic in the seed.
SimulationScript script_performance(const AlphabetConfig& alphabet, const GestureTuple& tuple,
                                    Speed speed, std::uint64_t seed,
                                    const ScriptOptions& options = {});

/// Emits one logit frame per scripted frame, cross-fading adjacent
/// classes near boundaries and adding Gaussian noise per entry.
std::vector<RawScoreFrame> render_scores(const AlphabetConfig& alphabet,
                                         const SimulationScript& script,
                                         const NoiseModel& noise);

struct GeneratedStream {
    SimulationScript script;
    std::vector<RawScoreFrame> frames;
    GestureTuple ground_truth;
    Speed speed;
    std::uint64_t seed;  // the per-stream seed derived from the master seed
};

/// One batch of streams covering every tuple of the given length
/// samples_per_class times, cycling through the speed list. noise.seed is
/// the master seed; per-stream seeds are derived from it.
std::vector<GeneratedStream> generate_test_set(const AlphabetConfig& alphabet, int tuple_length,
                                               int samples_per_class,
                                               const std::vector<Speed>& speeds,
                                               const NoiseModel& noise,
                                               std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace gesture

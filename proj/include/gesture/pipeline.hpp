#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "gesture/decoder.hpp"
#include "gesture/tuples.hpp"

namespace gesture {

/// One classifier inference: raw (pre-softmax) scores for the m+3
/// classes, ordered phonemes first, then preparation, retraction,
/// no-gesture.
struct RawScoreFrame {
    std::vector<double> scores;
    std::int64_t timestamp = 0;
};

struct PipelineConfig {
    int post_window = 5;           // non-overlapping averaging width
    int detector_queue_len = 8;    // post-processed vectors the detector sums over
    double sog_threshold = 5.0;    // summed preparation probability to flag SoG
    double eog_threshold = 5.0;    // summed retraction probability to flag EoG
    DecoderParams decoder;

    void validate() const;
};

enum class Phase { Idle, GestureActive, Done };

enum class EventKind { SoG, EoG, TupleRecognized, DecodeFailed };

struct RecognitionEvent {
    EventKind kind;
    std::int64_t frame = 0;
    std::optional<GestureTuple> tuple;  // present iff kind == TupleRecognized
    std::optional<double> score;

    bool operator==(const RecognitionEvent&) const = default;
};

/// Numerically stable softmax.
std::vector<double> softmax(const std::vector<double>& logits);

/// Elementwise mean of a full averaging window, softmaxed over all
/// classes. Consecutive calls are expected to consume disjoint buffers.
std::vector<double> post_process(const std::vector<RawScoreFrame>& buffer);

/// The online state machine: averages incoming score frames, watches the
/// detector queue for start/end of gesture, buffers phoneme columns in
/// between, and decodes once at end of gesture.
class Pipeline {
public:
    Pipeline(AlphabetConfig alphabet, PipelineConfig config);

    /// Feeds one frame; returns the events it produced (possibly none).
    /// Frames arriving after the Done phase are ignored.
    std::vector<RecognitionEvent> push_frame(const RawScoreFrame& frame);
    std::vector<RecognitionEvent> push_frames(const std::vector<RawScoreFrame>& frames);

    /// Pushes v into the detector queue and checks the thresholds.
    /// Returns the flag raised, if any, advancing the phase.
    std::optional<EventKind> detector_update(const std::vector<double>& processed);

    /// Back to Idle with all buffers cleared, ready for the next recording.
    void reset();

    Phase phase() const { return phase_; }
    const std::vector<RecognitionEvent>& events() const { return events_; }
    const std::vector<std::vector<double>>& classifier_queue() const { return classifier_queue_; }
    const AlphabetConfig& alphabet() const { return alphabet_; }

private:
    std::vector<double> phoneme_column(const std::vector<double>& processed) const;
    RecognitionEvent run_decoder(std::int64_t frame);

    AlphabetConfig alphabet_;
    PipelineConfig config_;
    Phase phase_ = Phase::Idle;
    std::vector<RawScoreFrame> post_buffer_;
    std::deque<std::vector<double>> detector_queue_;
    std::vector<std::vector<double>> classifier_queue_;
    std::vector<RecognitionEvent> events_;
};

}  // namespace gesture

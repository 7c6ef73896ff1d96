#include "gesture/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gesture {

void PipelineConfig::validate() const {
    if (post_window < 1) {
        throw std::invalid_argument("post_window must be >= 1");
    }
    if (detector_queue_len < 1) {
        throw std::invalid_argument("detector_queue_len must be >= 1");
    }
    if (sog_threshold <= 0.0 || sog_threshold > detector_queue_len) {
        throw std::invalid_argument("sog_threshold must be in (0, detector_queue_len]");
    }
    if (eog_threshold <= 0.0 || eog_threshold > detector_queue_len) {
        throw std::invalid_argument("eog_threshold must be in (0, detector_queue_len]");
    }
    decoder.validate();
}

std::vector<double> softmax(const std::vector<double>& logits) {
    const double max = *std::max_element(logits.begin(), logits.end());
    std::vector<double> out(logits.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        out[i] = std::exp(logits[i] - max);
        sum += out[i];
    }
    for (double& v : out) v /= sum;
    return out;
}

std::vector<double> post_process(const std::vector<RawScoreFrame>& buffer) {
    if (buffer.empty()) {
        throw std::invalid_argument("post_process needs a full averaging window");
    }
    const std::size_t n = buffer.front().scores.size();
    std::vector<double> mean(n, 0.0);
    for (const RawScoreFrame& f : buffer) {
        if (f.scores.size() != n) {
            throw std::invalid_argument("inconsistent frame width in averaging window");
        }
        for (std::size_t i = 0; i < n; ++i) mean[i] += f.scores[i];
    }
    for (double& v : mean) v /= static_cast<double>(buffer.size());
    return softmax(mean);
}

Pipeline::Pipeline(AlphabetConfig alphabet, PipelineConfig config)
    : alphabet_(alphabet), config_(std::move(config)) {
    config_.validate();
}

void Pipeline::reset() {
    phase_ = Phase::Idle;
    post_buffer_.clear();
    detector_queue_.clear();
    classifier_queue_.clear();
    events_.clear();
}

std::optional<EventKind> Pipeline::detector_update(const std::vector<double>& processed) {
    if (phase_ == Phase::Done) {
        return std::nullopt;
    }
    detector_queue_.push_back(processed);
    while (static_cast<int>(detector_queue_.size()) > config_.detector_queue_len) {
        detector_queue_.pop_front();
    }
    const int watched = phase_ == Phase::Idle ? alphabet_.preparation() : alphabet_.retraction();
    double sum = 0.0;
    for (const auto& v : detector_queue_) sum += v[watched];
    if (phase_ == Phase::Idle && sum > config_.sog_threshold) {
        phase_ = Phase::GestureActive;
        detector_queue_.clear();  // stale preparation mass must not feed EoG
        return EventKind::SoG;
    }
    if (phase_ == Phase::GestureActive && sum > config_.eog_threshold) {
        phase_ = Phase::Done;
        return EventKind::EoG;
    }
    return std::nullopt;
}

std::vector<double> Pipeline::phoneme_column(const std::vector<double>& processed) const {
    std::vector<double> phonemes(processed.begin(),
                                 processed.begin() + alphabet_.num_phonemes);
    return softmax(phonemes);
}

RecognitionEvent Pipeline::run_decoder(std::int64_t frame) {
    if (static_cast<int>(classifier_queue_.size()) < config_.decoder.max_transitions + 1) {
        return RecognitionEvent{EventKind::DecodeFailed, frame, std::nullopt, std::nullopt};
    }
    try {
        ScoreMatrix matrix(classifier_queue_);
        Path path = decode(matrix, config_.decoder);
        return RecognitionEvent{EventKind::TupleRecognized, frame,
                                GestureTuple{path.sequence}, path.score};
    } catch (const DecodeError&) {
        return RecognitionEvent{EventKind::DecodeFailed, frame, std::nullopt, std::nullopt};
    }
}

std::vector<RecognitionEvent> Pipeline::push_frame(const RawScoreFrame& frame) {
    if (phase_ == Phase::Done) {
        return {};
    }
    if (static_cast<int>(frame.scores.size()) != alphabet_.num_classes()) {
        throw std::invalid_argument("frame has " + std::to_string(frame.scores.size()) +
                                    " scores, expected " +
                                    std::to_string(alphabet_.num_classes()));
    }
    for (double v : frame.scores) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("frame contains non-finite score");
        }
    }

    post_buffer_.push_back(frame);
    if (static_cast<int>(post_buffer_.size()) < config_.post_window) {
        return {};
    }
    const std::vector<double> processed = post_process(post_buffer_);
    post_buffer_.clear();

    std::vector<RecognitionEvent> out;
    const std::optional<EventKind> flag = detector_update(processed);
    if (flag == EventKind::SoG) {
        // The triggering output carries preparation mass, not phonemes;
        // the classifier queue starts with the next output.
        out.push_back(RecognitionEvent{EventKind::SoG, frame.timestamp, std::nullopt, std::nullopt});
    } else if (flag == EventKind::EoG) {
        out.push_back(RecognitionEvent{EventKind::EoG, frame.timestamp, std::nullopt, std::nullopt});
        out.push_back(run_decoder(frame.timestamp));
    } else if (phase_ == Phase::GestureActive) {
        classifier_queue_.push_back(phoneme_column(processed));
    }
    events_.insert(events_.end(), out.begin(), out.end());
    return out;
}

std::vector<RecognitionEvent> Pipeline::push_frames(const std::vector<RawScoreFrame>& frames) {
    std::vector<RecognitionEvent> out;
    for (const RawScoreFrame& f : frames) {
        auto events = push_frame(f);
        out.insert(out.end(), events.begin(), events.end());
    }
    return out;
}

}  // namespace gesture

#pragma once

#include <stdexcept>
#include <vector>

namespace gesture {

/// Raised when no surviving path satisfies the transition budget.
struct DecodeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DecoderParams {
    int max_transitions = 2;        // K; exactly this many transitions in the result
    double transition_cost = -0.2;  // delta, added once per appended state
    int beam_limit = 300;           // gamma

    void validate() const;
};

/// Throws std::invalid_argument unless v has >= 2 entries, all in [0, 1],
/// summing to 1 within 1e-6.
void validate_probability_column(const std::vector<double>& v);

/// T columns of softmaxed phoneme probabilities, one vector of length N
/// per inference step.
class ScoreMatrix {
public:
    explicit ScoreMatrix(std::vector<std::vector<double>> columns);

    int num_columns() const { return static_cast<int>(columns_.size()); }
    int num_classes() const { return static_cast<int>(columns_.front().size()); }
    const std::vector<double>& column(int t) const { return columns_[t]; }

private:
    std::vector<std::vector<double>> columns_;
};

/// One decoder hypothesis: the states visited so far (no consecutive
/// repeats), the accumulated score, and the number of transitions taken.
/// transitions == sequence.size() - 1 always holds.
struct Path {
    std::vector<int> sequence;
    double score = 0.0;
    int transitions = 0;

    bool operator==(const Path&) const = default;
};

/// One path per class of the first column, sorted by score descending
/// (ties: lexicographically smaller sequence), truncated to the beam limit.
std::vector<Path> init_beam(const std::vector<double>& first_column, const DecoderParams& params);

/// Expands every path with every candidate state, merges duplicates
/// keeping the best score, sorts and truncates to the beam limit.
/// Staying in the current state is free; switching costs transition_cost
/// and is only allowed while the transition budget lasts.
std::vector<Path> step_beam(const std::vector<Path>& beam, const std::vector<double>& column,
                            const DecoderParams& params);

/// Runs the beam over all columns and returns the best surviving path
/// with exactly max_transitions transitions. Throws DecodeError when no
/// such path survives, std::invalid_argument when T < K+1.
Path decode(const ScoreMatrix& scores, const DecoderParams& params);

/// Exhaustive reference decoder: scores every assignment of states to
/// columns with exactly max_transitions change points. Guarded to small
/// instances. When best_states is non-null it receives the per-column
/// state assignment of the winner.
Path brute_force_decode(const ScoreMatrix& scores, const DecoderParams& params,
                        std::vector<int>* best_states = nullptr);

}  // namespace gesture

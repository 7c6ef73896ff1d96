#include "gesture/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

namespace gesture {

namespace {

constexpr double kColumnSumTolerance = 1e-6;

// Descending score; ties resolve to the lexicographically smaller sequence.
bool better(const Path& a, const Path& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.sequence < b.sequence;
}

void sort_and_truncate(std::vector<Path>& beam, int beam_limit) {
    std::sort(beam.begin(), beam.end(), better);
    if (static_cast<int>(beam.size()) > beam_limit) {
        beam.resize(beam_limit);
    }
}

}  // namespace

void DecoderParams::validate() const {
    if (max_transitions < 0) {
        throw std::invalid_argument("max_transitions must be >= 0");
    }
    if (transition_cost > 0.0) {
        throw std::invalid_argument("transition_cost must be <= 0");
    }
    if (beam_limit < 1) {
        throw std::invalid_argument("beam_limit must be >= 1");
    }
}

void validate_probability_column(const std::vector<double>& v) {
    if (v.size() < 2) {
        throw std::invalid_argument("probability column needs at least 2 classes");
    }
    double sum = 0.0;
    for (double p : v) {
        if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
            throw std::invalid_argument("probability entry " + std::to_string(p) +
                                        " outside [0, 1]");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kColumnSumTolerance) {
        throw std::invalid_argument("column sums to " + std::to_string(sum) + ", expected 1");
    }
}

ScoreMatrix::ScoreMatrix(std::vector<std::vector<double>> columns) : columns_(std::move(columns)) {
    if (columns_.empty()) {
        throw std::invalid_argument("score matrix needs at least one column");
    }
    const std::size_t n = columns_.front().size();
    for (std::size_t t = 0; t < columns_.size(); ++t) {
        if (columns_[t].size() != n) {
            throw std::invalid_argument("column " + std::to_string(t) +
                                        " has inconsistent length");
        }
        try {
            validate_probability_column(columns_[t]);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("column " + std::to_string(t) + ": " + e.what());
        }
    }
}

std::vector<Path> init_beam(const std::vector<double>& first_column, const DecoderParams& params) {
    params.validate();
    validate_probability_column(first_column);
    std::vector<Path> beam;
    beam.reserve(first_column.size());
    for (int state = 0; state < static_cast<int>(first_column.size()); ++state) {
        beam.push_back(Path{{state}, first_column[state], 0});
    }
    sort_and_truncate(beam, params.beam_limit);
    return beam;
}

std::vector<Path> step_beam(const std::vector<Path>& beam, const std::vector<double>& column,
                            const DecoderParams& params) {
    params.validate();
    validate_probability_column(column);
    if (beam.empty()) {
        throw std::invalid_argument("step_beam requires a non-empty beam");
    }
    const int n = static_cast<int>(column.size());
    for (const Path& p : beam) {
        if (p.sequence.back() >= n) {
            throw std::invalid_argument("column has " + std::to_string(n) +
                                        " classes but beam contains state " +
                                        std::to_string(p.sequence.back()));
        }
    }

    std::vector<Path> next;
    next.reserve(beam.size() * n);
    for (const Path& parent : beam) {
        const int last = parent.sequence.back();
        for (int state = 0; state < n; ++state) {
            if (state == last) {
                Path child = parent;
                child.score += column[state];
                next.push_back(std::move(child));
            } else if (parent.transitions < params.max_transitions) {
                Path child = parent;
                child.sequence.push_back(state);
                child.transitions += 1;
                child.score += column[state] + params.transition_cost;
                next.push_back(std::move(child));
            }
            // Budget exhausted and the state differs: branch discarded.
        }
    }

    // Children sharing a sequence record are interchangeable; keep the best.
    std::sort(next.begin(), next.end(), [](const Path& a, const Path& b) {
        if (a.sequence != b.sequence) return a.sequence < b.sequence;
        return a.score > b.score;
    });
    next.erase(std::unique(next.begin(), next.end(),
                           [](const Path& a, const Path& b) { return a.sequence == b.sequence; }),
               next.end());
    sort_and_truncate(next, params.beam_limit);
    return next;
}

Path decode(const ScoreMatrix& scores, const DecoderParams& params) {
    params.validate();
    if (scores.num_columns() < params.max_transitions + 1) {
        throw std::invalid_argument("need at least " + std::to_string(params.max_transitions + 1) +
                                    " columns for " + std::to_string(params.max_transitions) +
                                    " transitions, got " + std::to_string(scores.num_columns()));
    }
    std::vector<Path> beam = init_beam(scores.column(0), params);
    for (int t = 1; t < scores.num_columns(); ++t) {
        beam = step_beam(beam, scores.column(t), params);
    }
    for (const Path& p : beam) {
        if (p.transitions == params.max_transitions) {
            return p;
        }
    }
    throw DecodeError("no surviving path with exactly " +
                      std::to_string(params.max_transitions) + " transitions");
}

Path brute_force_decode(const ScoreMatrix& scores, const DecoderParams& params,
                        std::vector<int>* best_states) {
    params.validate();
    const int t_total = scores.num_columns();
    const int n = scores.num_classes();
    const int k = params.max_transitions;
    if (t_total < k + 1) {
        throw std::invalid_argument("need at least K+1 columns");
    }

    // Enumeration size: N * (N-1)^K sequences times C(T-1, K) change placements.
    double bound = n;
    for (int i = 0; i < k; ++i) bound *= n - 1;
    double combos = 1.0;
    for (int i = 0; i < k; ++i) combos = combos * (t_total - 1 - i) / (i + 1);
    if (bound * combos > 1e7) {
        throw std::length_error("brute-force enumeration too large");
    }

    bool found = false;
    Path best;
    std::vector<int> best_assignment;

    std::vector<int> seq(k + 1);
    std::vector<int> changes(k);  // column indices where a new state begins

    auto score_assignment = [&]() {
        // Change point j starts segment j+1 at column changes[j].
        double score = 0.0;
        int segment = 0;
        for (int t = 0; t < t_total; ++t) {
            while (segment < k && t == changes[segment]) ++segment;
            score += scores.column(t)[seq[segment]];
        }
        score += k * params.transition_cost;
        Path candidate{seq, score, k};
        if (!found || better(candidate, best)) {
            found = true;
            best = candidate;
            if (best_states != nullptr) {
                best_assignment.assign(t_total, 0);
                int s = 0;
                for (int t = 0; t < t_total; ++t) {
                    while (s < k && t == changes[s]) ++s;
                    best_assignment[t] = seq[s];
                }
            }
        }
    };

    auto place_changes = [&](auto&& self, int depth, int start) -> void {
        if (depth == k) {
            score_assignment();
            return;
        }
        for (int c = start; c <= t_total - (k - depth); ++c) {
            changes[depth] = c;
            self(self, depth + 1, c + 1);
        }
    };

    auto build_seq = [&](auto&& self, int depth) -> void {
        if (depth == k + 1) {
            place_changes(place_changes, 0, 1);
            return;
        }
        for (int state = 0; state < n; ++state) {
            if (depth > 0 && state == seq[depth - 1]) continue;
            seq[depth] = state;
            self(self, depth + 1);
        }
    };
    build_seq(build_seq, 0);

    if (!found) {
        throw DecodeError("no valid assignment exists");
    }
    if (best_states != nullptr) {
        *best_states = std::move(best_assignment);
    }
    return best;
}

}  // namespace gesture

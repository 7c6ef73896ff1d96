#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gesture/decoder.hpp"
#include "gesture/rng.hpp"

using namespace gesture;

namespace {

std::vector<double> one_hot(int n, int index) {
    std::vector<double> v(n, 0.0);
    v[index] = 1.0;
    return v;
}

ScoreMatrix one_hot_matrix(int n, const std::vector<int>& states) {
    std::vector<std::vector<double>> columns;
    for (int s : states) columns.push_back(one_hot(n, s));
    return ScoreMatrix(columns);
}

std::vector<double> random_column(Rng& rng, int n) {
    std::vector<double> logits(n);
    for (double& v : logits) v = rng.uniform() * 6.0 - 3.0;
    double max = logits[0];
    for (double v : logits) max = std::max(max, v);
    double sum = 0.0;
    for (double& v : logits) {
        v = std::exp(v - max);
        sum += v;
    }
    for (double& v : logits) v /= sum;
    return logits;
}

}  // namespace

TEST_CASE("init_beam seeds one path per class") {
    DecoderParams params;

    SUBCASE("symmetric column") {
        const auto beam = init_beam({0.5, 0.5}, params);
        REQUIRE(beam.size() == 2);
        CHECK(beam[0] == Path{{0}, 0.5, 0});
        CHECK(beam[1] == Path{{1}, 0.5, 0});
    }
    SUBCASE("argmax leads") {
        const auto beam = init_beam({0.7, 0.2, 0.1}, params);
        CHECK(beam[0] == Path{{0}, 0.7, 0});
    }
    SUBCASE("truncation to the beam limit") {
        params.beam_limit = 2;
        const auto beam = init_beam({0.25, 0.25, 0.25, 0.25}, params);
        CHECK(beam.size() == 2);
    }
    SUBCASE("invalid column rejected") {
        CHECK_THROWS_AS(init_beam({0.5, 0.3}, params), std::invalid_argument);
        CHECK_THROWS_AS(init_beam({1.0}, params), std::invalid_argument);
    }
}

TEST_CASE("step_beam applies stay and switch rules") {
    DecoderParams params;  // K=2, delta=-0.2

    SUBCASE("stay outranks a penalized switch") {
        const auto next = step_beam({Path{{0}, 1.0, 0}}, {1.0, 0.0}, params);
        REQUIRE(next.size() == 2);
        CHECK(next[0] == Path{{0}, 2.0, 0});
        CHECK(next[1].sequence == std::vector<int>{0, 1});
        CHECK(next[1].score == doctest::Approx(0.8));
        CHECK(next[1].transitions == 1);
    }
    SUBCASE("exhausted budget discards the switch branch") {
        params.max_transitions = 1;
        const auto next = step_beam({Path{{0, 1}, 1.5, 1}}, {0.6, 0.4}, params);
        REQUIRE(next.size() == 1);
        CHECK(next[0].sequence == std::vector<int>{0, 1});
        CHECK(next[0].score == doctest::Approx(1.9));
    }
    SUBCASE("duplicate sequences merge keeping the best score") {
        // Both parents extend to [0,1]; only the stronger survives.
        const std::vector<Path> beam = {Path{{0}, 1.3, 0}, Path{{0, 1}, 1.1, 1}};
        const auto next = step_beam(beam, {0.0, 1.0}, params);
        int count = 0;
        for (const Path& p : next) {
            if (p.sequence == std::vector<int>{0, 1}) {
                ++count;
                CHECK(p.score == doctest::Approx(1.3 + 1.0 - 0.2));
            }
        }
        CHECK(count == 1);
    }
    SUBCASE("dimension mismatch is rejected") {
        CHECK_THROWS_AS(step_beam({Path{{3}, 1.0, 0}}, {0.5, 0.5}, params),
                        std::invalid_argument);
    }
}

TEST_CASE("decode recovers the one-hot sequence") {
    const auto matrix = one_hot_matrix(10, {5, 5, 1, 1, 3, 3});
    const Path best = decode(matrix, DecoderParams{});
    CHECK(best.sequence == std::vector<int>{5, 1, 3});
    CHECK(best.score == doctest::Approx(5.6));
    CHECK(best.transitions == 2);
}

TEST_CASE("decode breaks full ties lexicographically") {
    const ScoreMatrix matrix({{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}});
    const Path best = decode(matrix, DecoderParams{});
    CHECK(best.sequence == std::vector<int>{0, 1, 0});
    CHECK(best.score == doctest::Approx(1.1));
}

TEST_CASE("decode preconditions and failure modes") {
    CHECK_THROWS_AS(decode(ScoreMatrix({{0.5, 0.5}, {0.5, 0.5}}), DecoderParams{}),
                    std::invalid_argument);
    // A one-path beam can never accumulate transitions.
    DecoderParams greedy;
    greedy.beam_limit = 1;
    const auto matrix = one_hot_matrix(4, {0, 0, 0, 0, 0, 0});
    CHECK_THROWS_AS(decode(matrix, greedy), DecodeError);
}

TEST_CASE("brute force agrees with the worked examples") {
    const Path a = brute_force_decode(one_hot_matrix(10, {5, 5, 1, 1, 3, 3}), DecoderParams{});
    CHECK(a.sequence == std::vector<int>{5, 1, 3});
    CHECK(a.score == doctest::Approx(5.6));

    const Path b = brute_force_decode(ScoreMatrix({{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}}),
                                      DecoderParams{});
    CHECK(b.sequence == std::vector<int>{0, 1, 0});
    CHECK(b.score == doctest::Approx(1.1));
}

TEST_CASE("brute force refuses oversized instances") {
    std::vector<std::vector<double>> columns(100, std::vector<double>(20, 0.05));
    DecoderParams params;
    params.max_transitions = 5;
    CHECK_THROWS_AS(brute_force_decode(ScoreMatrix(columns), params), std::length_error);
}

TEST_CASE("decode matches the exhaustive oracle on random instances") {
    Rng rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const int k = rng.uniform_int(3);
        const int t = k + 1 + rng.uniform_int(8 - k);
        const int n = 2 + rng.uniform_int(3);
        std::vector<std::vector<double>> columns;
        for (int i = 0; i < t; ++i) columns.push_back(random_column(rng, n));
        const ScoreMatrix matrix(columns);
        DecoderParams params;
        params.max_transitions = k;
        params.beam_limit = 1 << 16;  // no pruning at this size

        std::vector<int> states;
        const Path expected = brute_force_decode(matrix, params, &states);
        const Path actual = decode(matrix, params);
        CHECK(actual.sequence == expected.sequence);
        CHECK(actual.score == doctest::Approx(expected.score).epsilon(1e-9));

        // Score decomposition replay over the oracle's assignment.
        double replay = k * params.transition_cost;
        for (int i = 0; i < t; ++i) replay += matrix.column(i)[states[i]];
        CHECK(actual.score == doctest::Approx(replay).epsilon(1e-9));
    }
}

TEST_CASE("beam invariants hold after every step") {
    Rng rng(7);
    DecoderParams params;
    params.beam_limit = 8;
    auto beam = init_beam(random_column(rng, 5), params);
    for (int t = 0; t < 12; ++t) {
        beam = step_beam(beam, random_column(rng, 5), params);
        CHECK(beam.size() <= 8);
        for (std::size_t i = 0; i < beam.size(); ++i) {
            CHECK(beam[i].transitions == static_cast<int>(beam[i].sequence.size()) - 1);
            CHECK(beam[i].transitions <= params.max_transitions);
            if (i > 0) CHECK(beam[i - 1].score >= beam[i].score);
            for (std::size_t j = 1; j < beam[i].sequence.size(); ++j) {
                CHECK(beam[i].sequence[j] != beam[i].sequence[j - 1]);
            }
        }
    }
}

TEST_CASE("prefix decoding equals whole decoding") {
    // Pure left-to-right DP: stepping a prefix then resuming gives the
    // same beam as stepping straight through.
    Rng rng(99);
    DecoderParams params;
    std::vector<std::vector<double>> columns;
    for (int i = 0; i < 10; ++i) columns.push_back(random_column(rng, 4));

    auto whole = init_beam(columns[0], params);
    for (int t = 1; t < 10; ++t) whole = step_beam(whole, columns[t], params);

    auto prefix = init_beam(columns[0], params);
    for (int t = 1; t < 5; ++t) prefix = step_beam(prefix, columns[t], params);
    auto resumed = prefix;
    for (int t = 5; t < 10; ++t) resumed = step_beam(resumed, columns[t], params);

    CHECK(whole == resumed);
}

TEST_CASE("decode is equivariant under class relabeling") {
    Rng rng(5);
    DecoderParams params;
    params.beam_limit = 1 << 16;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::vector<double>> columns;
        for (int i = 0; i < 6; ++i) columns.push_back(random_column(rng, 4));
        const std::vector<int> perm = {2, 0, 3, 1};
        std::vector<std::vector<double>> permuted = columns;
        for (std::size_t t = 0; t < columns.size(); ++t) {
            for (int c = 0; c < 4; ++c) permuted[t][perm[c]] = columns[t][c];
        }
        const Path base = decode(ScoreMatrix(columns), params);
        const Path mapped = decode(ScoreMatrix(permuted), params);
        std::vector<int> expected;
        for (int s : base.sequence) expected.push_back(perm[s]);
        CHECK(mapped.sequence == expected);
        CHECK(mapped.score == doctest::Approx(base.score).epsilon(1e-9));
    }
}

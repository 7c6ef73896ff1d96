#include <doctest.h>

#include <sstream>

#include "gesture/io.hpp"
#include "gesture/rng.hpp"

using namespace gesture;

TEST_CASE("stream CSV round-trips bit-exactly") {
    const AlphabetConfig alphabet(10);
    Rng rng(8);
    std::vector<RawScoreFrame> frames(40);
    for (std::size_t f = 0; f < frames.size(); ++f) {
        frames[f].timestamp = static_cast<std::int64_t>(f);
        frames[f].scores.resize(alphabet.num_classes());
        for (double& v : frames[f].scores) v = rng.gaussian(3.0);
    }

    std::ostringstream out;
    write_stream_csv(out, frames, alphabet);
    std::istringstream in(out.str());
    const auto parsed = read_stream_csv(in, 10);
    REQUIRE(parsed.size() == frames.size());
    for (std::size_t f = 0; f < frames.size(); ++f) {
        CHECK(parsed[f].scores == frames[f].scores);
        CHECK(parsed[f].timestamp == frames[f].timestamp);
    }

    // Writing the parse again reproduces the bytes.
    std::ostringstream again;
    write_stream_csv(again, parsed, alphabet);
    CHECK(again.str() == out.str());
}

TEST_CASE("stream CSV parse errors name the line") {
    SUBCASE("missing header") {
        std::istringstream in("1,2,3\n");
        CHECK_THROWS_WITH_AS(read_stream_csv(in), doctest::Contains("line 1"), ParseError);
    }
    SUBCASE("wrong phoneme count") {
        std::istringstream in("class_0,class_1,preparation,retraction,no_gesture\n");
        CHECK_THROWS_AS(read_stream_csv(in, 10), ParseError);
    }
    SUBCASE("short row") {
        const AlphabetConfig alphabet(2);
        std::istringstream in(stream_csv_header(alphabet) + "\n0,0,0,0,0\n1,2\n");
        CHECK_THROWS_WITH_AS(read_stream_csv(in, 2), doctest::Contains("line 3"), ParseError);
    }
    SUBCASE("bad number") {
        const AlphabetConfig alphabet(2);
        std::istringstream in(stream_csv_header(alphabet) + "\n0,0,oops,0,0\n");
        CHECK_THROWS_WITH_AS(read_stream_csv(in, 2), doctest::Contains("oops"), ParseError);
    }
}

TEST_CASE("score matrix files validate their columns") {
    SUBCASE("valid matrix") {
        std::istringstream in("0.5,0.5\n0.25,0.75\n");
        const ScoreMatrix matrix = read_score_matrix(in);
        CHECK(matrix.num_columns() == 2);
        CHECK(matrix.num_classes() == 2);
        CHECK(matrix.column(1)[1] == doctest::Approx(0.75));
    }
    SUBCASE("column sum violation names the line") {
        std::istringstream in("0.5,0.5\n0.5,0.3\n");
        CHECK_THROWS_WITH_AS(read_score_matrix(in), doctest::Contains("line 2"), ParseError);
    }
    SUBCASE("empty file") {
        std::istringstream in("");
        CHECK_THROWS_AS(read_score_matrix(in), ParseError);
    }
}

TEST_CASE("manifests round-trip") {
    const std::vector<ManifestEntry> entries = {
        {"stream_000000.csv", GestureTuple{{5, 1, 3}}, Speed::Slow, 12345},
        {"stream_000001.csv", GestureTuple{{0, 9}}, Speed::Fast, 99},
    };
    std::ostringstream out;
    write_manifest(out, entries);
    CHECK(out.str() == "stream_000000.csv,5-1-3,slow,12345\nstream_000001.csv,0-9,fast,99\n");

    std::istringstream in(out.str());
    CHECK(read_manifest(in) == entries);
}

TEST_CASE("malformed manifests are rejected") {
    std::istringstream in("only,three,fields\n");
    CHECK_THROWS_AS(read_manifest(in), ParseError);
    std::istringstream bad_speed("a.csv,1-2,warp,0\n");
    CHECK_THROWS_AS(read_manifest(bad_speed), ParseError);
}

TEST_CASE("reports round-trip through JSON") {
    const EvalReport report{1620, 3, 83, 171, 94.69135802469135};
    CHECK(report_from_json(report_to_json(report)) == report);
    CHECK_THROWS_AS(report_from_json("{"), ParseError);
    CHECK_THROWS_AS(report_from_json("{\"n_samples\":1}"), ParseError);
}

#include <doctest.h>

#include <algorithm>
#include "tracx/melody.hpp"

using namespace tracx;

TEST_CASE("figure-3 style melody parses to signed steps") {
    const Melody m = parse_melody("A4 E4 B4");
    REQUIRE(m.intervals.size() == 2);
    CHECK(m.intervals[0].semitones == -5);
    CHECK(m.intervals[1].semitones == 7);
}

TEST_CASE("repeated note gives the flat interval") {
    const Melody m = parse_melody("C4 C4");
    REQUIRE(m.intervals.size() == 1);
    CHECK(m.intervals[0].semitones == 0);
    CHECK(m.intervals[0].label() == 'm');
}

TEST_CASE("range boundary: +19 accepted, +20 rejected") {
    CHECK(parse_melody("C4 G5").intervals[0].semitones == 19);
    CHECK_THROWS_AS(parse_melody("C4 G#5"), DataError);
}

TEST_CASE("accidentals, octaves, integer pitches") {
    const Melody m = parse_melody("F#3 Bb4 60 61");
    CHECK(m.pitches == std::vector<int>{54, 70, 60, 61});
    CHECK(m.intervals[0].semitones == 16);
    CHECK(m.intervals[1].semitones == -10);
    CHECK(m.intervals[2].semitones == 1);
}

TEST_CASE("song header and comments") {
    const Melody m = parse_melody("# song: Test Tune\n# a comment\nC4 D4\n");
    CHECK(m.name == "Test Tune");
    CHECK(m.intervals.size() == 1);
    // '#' only starts comments at line start; mid-line it is a malformed token
    CHECK_THROWS_AS(parse_melody("C4 D4 #x"), DataError);
}

TEST_CASE("malformed tokens carry file:line:col context") {
    try {
        parse_melody("C4 D4\nX9 C4", "tune.mel");
        FAIL("expected DataError");
    } catch (const DataError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("tune.mel:2:1") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_melody("C"), DataError);  // missing octave
    CHECK_THROWS_AS(parse_melody("12x"), DataError);
}

TEST_CASE("render/label round trip") {
    const Melody m = parse_melody("C4 E4 C4 C4 G3");
    CHECK(render_labels(m.intervals) == "q i m h");
    std::string labels = render_labels(m.intervals);
    labels.erase(std::remove(labels.begin(), labels.end(), ' '), labels.end());
    const IntervalWord back = IntervalWord::from_labels(labels);
    CHECK(back.intervals == m.intervals);
}

#include <doctest.h>

#include "tracx/experiments.hpp"

using namespace tracx;

namespace {
Song song_from_labels(const std::string& name, const std::string& labels) {
    Song s;
    s.name = name;
    for (char c : labels) s.intervals.push_back(Interval::from_label(c));
    return s;
}

Corpus toy_corpus() {
    Corpus c;
    c.songs.push_back(song_from_labels("a", "mmoqkmiktmmokm"));
    c.songs.push_back(song_from_labels("b", "okmlnprmmokqk"));
    c.songs.push_back(song_from_labels("c", "mmommommokmik"));
    return c;
}
} // namespace

// The OpenMP kernels write into per-index slots, so their output must be
// bit-identical to the serial reference implementation.

TEST_CASE("score_words: serial reference == OpenMP kernel") {
    const Corpus c = toy_corpus();
    Hyperparams hp;
    const AnyNet net = AnyNet::train(ModelKind::Tracx2, c, Encoding::Ordinal, hp, 10, 42);
    const auto words = word_inventory(c, 2).words();
    const auto serial = score_words(net, words, Exec::Serial);
    const auto openmp = score_words(net, words, Exec::OpenMP);
    REQUIRE(serial.size() == openmp.size());
    for (std::size_t i = 0; i < serial.size(); ++i) CHECK(serial[i] == openmp[i]);
}

TEST_CASE("rep_matrix: serial reference == OpenMP kernel") {
    const Corpus c = toy_corpus();
    Hyperparams hp;
    const AnyNet net = AnyNet::train(ModelKind::Rae, c, Encoding::Ordinal, hp, 10, 43);
    const auto words = word_inventory(c, 3).words();
    const Matrix serial = rep_matrix(net, words, Exec::Serial);
    const Matrix openmp = rep_matrix(net, words, Exec::OpenMP);
    CHECK(serial.data == openmp.data);
}

TEST_CASE("replicate_word_errors: serial reference == OpenMP kernel") {
    const Corpus c = toy_corpus();
    Hyperparams hp;
    const auto words = word_inventory(c, 2).words();
    const auto serial = replicate_word_errors(ModelKind::Tracx2, c, Encoding::Ordinal, hp, 5, words, 6, 77, Exec::Serial);
    const auto openmp = replicate_word_errors(ModelKind::Tracx2, c, Encoding::Ordinal, hp, 5, words, 6, 77, Exec::OpenMP);
    CHECK(serial == openmp);
}

TEST_CASE("study pipelines give identical results under both executors") {
    const Corpus c = toy_corpus();
    const auto s = study1_primacy(c, IntervalWord::from_labels("mo"), 4, 11, Exec::Serial);
    const auto p = study1_primacy(c, IntervalWord::from_labels("mo"), 4, 11, Exec::OpenMP);
    CHECK(s.baseline_errors == p.baseline_errors);
    CHECK(s.relocated_errors == p.relocated_errors);
}

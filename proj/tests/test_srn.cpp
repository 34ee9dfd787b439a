#include <doctest.h>

#include <cstdio>

#include "tracx/net.hpp"

using namespace tracx;

namespace {
Song song_from_labels(const std::string& name, const std::string& labels) {
    Song s;
    s.name = name;
    for (char c : labels) s.intervals.push_back(Interval::from_label(c));
    return s;
}
} // namespace

TEST_CASE("SRN learns a deterministic chain") {
    // n->o and o->n always; after training, prediction error on the chain
    // should drop well below an unrelated transition
    Corpus c;
    c.songs.push_back(song_from_labels("chain", std::string("nononononononononon")));
    Hyperparams hp;
    SrnNet net(Encoding::Ordinal, hp, 5);
    const double before = net.word_error(IntervalWord::from_labels("no"));
    Rng rng(6);
    net.train_corpus(c, 30, rng);
    const double after = net.word_error(IntervalWord::from_labels("no"));
    CHECK(after < before);
    const double unrelated = net.word_error(IntervalWord::from_labels("ay"));
    CHECK(after < unrelated);
}

TEST_CASE("SRN scoring starts from a zero context") {
    Corpus c;
    c.songs.push_back(song_from_labels("chain", "nononononon"));
    Hyperparams hp;
    SrnNet net(Encoding::Ordinal, hp, 7);
    Rng rng(8);
    net.train_corpus(c, 10, rng);
    // scoring twice in a row gives identical results (no state leaks)
    const auto w = IntervalWord::from_labels("non");
    CHECK(net.word_error(w) == net.word_error(w));
    CHECK(net.hidden_rep(w) == net.hidden_rep(w));
}

TEST_CASE("SRN training is deterministic per seed") {
    Corpus c;
    c.songs.push_back(song_from_labels("a", "mmoqkmikt"));
    c.songs.push_back(song_from_labels("b", "okmlnpr"));
    Hyperparams hp;
    SrnNet n1(Encoding::Ordinal, hp, 9), n2(Encoding::Ordinal, hp, 9);
    Rng r1(3), r2(3);
    n1.train_corpus(c, 5, r1);
    n2.train_corpus(c, 5, r2);
    CHECK(n1 == n2);
}

TEST_CASE("untrained SRN has near-baseline error on any word") {
    Hyperparams hp;
    SrnNet net(Encoding::Ordinal, hp, 10);
    // with random small weights the prediction is near 0, so the mean
    // absolute difference against a bipolar code is near 1
    const double e = net.word_error(IntervalWord::from_labels("mo"));
    CHECK(e > 0.6);
    CHECK(e < 1.4);
}

TEST_CASE("SRN word error averages the per-step prediction errors") {
    Hyperparams hp;
    SrnNet net(Encoding::Ordinal, hp, 11);
    const auto w2 = IntervalWord::from_labels("no");
    const auto w3 = IntervalWord::from_labels("non");
    const double e2 = net.word_error(w2);
    const double e3 = net.word_error(w3);
    CHECK(e2 > 0.0);
    CHECK(e3 > 0.0);
    CHECK_THROWS_AS(net.word_error(IntervalWord::from_labels("n")), DataError);
}

TEST_CASE("SRN snapshot round trip") {
    Corpus c;
    c.songs.push_back(song_from_labels("a", "mmoqk"));
    Hyperparams hp;
    SrnNet net(Encoding::Ordinal, hp, 12);
    Rng rng(4);
    net.train_corpus(c, 3, rng);
    const std::string path = "test_srn_snapshot.tmp.txt";
    net.save_snapshot(path);
    const SrnNet back = SrnNet::load_snapshot(path);
    CHECK(back == net);
    CHECK(snapshot_model_name(path) == "srn");
    std::remove(path.c_str());
}

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "tracx/corpus.hpp"
#include "tracx/melody.hpp"

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
    c.songs.push_back(song_from_labels("one", "mmoqkm"));
    c.songs.push_back(song_from_labels("two", "okmm"));
    c.songs.push_back(song_from_labels("three", "mo"));
    return c;
}

std::multiset<int> multiset_of(const Song& s) {
    std::multiset<int> m;
    for (const auto& iv : s.intervals) m.insert(iv.semitones);
    return m;
}

} // namespace

TEST_CASE("word inventory counts sliding windows without crossing songs") {
    const Corpus c = toy_corpus();
    const auto inv2 = word_inventory(c, 2);
    // windows: 5 + 3 + 1
    CHECK(inv2.total_windows() == 9);
    CHECK(inv2.counts.at("mm") == 2);
    CHECK(inv2.counts.at("mo") == 2);
    CHECK(inv2.counts.at("ok") == 1); // from "two" only; "one" has no ok
    CHECK(inv2.counts.count("qo") == 0);

    const auto inv3 = word_inventory(c, 3);
    std::size_t expect = 0;
    for (const auto& s : c.songs) expect += s.intervals.size() >= 3 ? s.intervals.size() - 2 : 0;
    CHECK(inv3.total_windows() == expect);

    Corpus single;
    single.songs.push_back(song_from_labels("s", "mm"));
    const auto inv = word_inventory(single, 2);
    CHECK(inv.counts.size() == 1);
    CHECK(inv.counts.at("mm") == 1);
}

TEST_CASE("inventory completeness invariant") {
    const Corpus c = toy_corpus();
    for (int n = 1; n <= 4; ++n) {
        std::size_t expect = 0;
        for (const auto& s : c.songs)
            expect += s.intervals.size() >= static_cast<std::size_t>(n) ? s.intervals.size() - static_cast<std::size_t>(n) + 1 : 0;
        CHECK(word_inventory(c, n).total_windows() == expect);
    }
}

TEST_CASE("transitional probabilities normalize and handle chains") {
    Corpus chain;
    chain.songs.push_back(song_from_labels("ab", "nonononon"));
    const TpTable tp(chain);
    CHECK(tp.tp(Interval::from_label('n'), Interval::from_label('o')).value == doctest::Approx(1.0));
    CHECK(tp.tp(Interval::from_label('o'), Interval::from_label('n')).value == doctest::Approx(1.0));

    const Corpus c = toy_corpus();
    const TpTable t(c);
    for (int a = kMinSemitones; a <= kMaxSemitones; ++a) {
        double sum = 0.0;
        bool any = false;
        for (int b = kMinSemitones; b <= kMaxSemitones; ++b) {
            const auto v = t.tp(Interval(a), Interval(b));
            if (v.defined) {
                sum += v.value;
                any = true;
            }
        }
        if (any) CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("avg_tp is the mean of consecutive TPs and flags unseen antecedents") {
    Corpus c;
    // x->y always; y->z half the time, y->x half the time
    c.songs.push_back(song_from_labels("s1", "nqn")); // n->q, q->n
    c.songs.push_back(song_from_labels("s2", "nqo")); // n->q, q->o
    const TpTable t(c);
    const auto w = t.avg_tp(IntervalWord::from_labels("nqo"));
    CHECK(w.defined);
    CHECK(w.value == doctest::Approx((1.0 + 0.5) / 2.0));
    const auto unseen = t.avg_tp(IntervalWord::from_labels("ay"));
    CHECK_FALSE(unseen.defined);
    CHECK(unseen.value == 0.0);
}

TEST_CASE("permutations preserve the right multisets") {
    const Corpus c = toy_corpus();
    const Corpus ws = permute_within_song(c, 77);
    REQUIRE(ws.songs.size() == c.songs.size());
    for (std::size_t i = 0; i < c.songs.size(); ++i) {
        CHECK(ws.songs[i].intervals.size() == c.songs[i].intervals.size());
        CHECK(multiset_of(ws.songs[i]) == multiset_of(c.songs[i]));
    }

    const Corpus gl = permute_global(c, 78);
    std::multiset<int> all_before, all_after;
    for (const auto& s : c.songs) all_before.merge(multiset_of(s));
    for (std::size_t i = 0; i < gl.songs.size(); ++i) {
        CHECK(gl.songs[i].intervals.size() == c.songs[i].intervals.size());
        all_after.merge(multiset_of(gl.songs[i]));
    }
    CHECK(all_before == all_after);

    const Corpus fr = full_random(c, 79);
    for (std::size_t i = 0; i < fr.songs.size(); ++i)
        CHECK(fr.songs[i].intervals.size() == c.songs[i].intervals.size());

    // determinism per seed
    const Corpus ws2 = permute_within_song(c, 77);
    for (std::size_t i = 0; i < ws.songs.size(); ++i) CHECK(ws.songs[i].intervals == ws2.songs[i].intervals);
}

TEST_CASE("full_random can produce intervals absent from the corpus") {
    Corpus c;
    c.songs.push_back(song_from_labels("flat", std::string(200, 'm')));
    const Corpus fr = full_random(c, 123);
    bool any_nonflat = false;
    for (const auto& iv : fr.songs[0].intervals) any_nonflat = any_nonflat || iv.semitones != 0;
    CHECK(any_nonflat);
}

TEST_CASE("concatenate chains songs without a break") {
    const Corpus c = toy_corpus();
    const Song all = concatenate(c);
    CHECK(all.intervals.size() == c.total_intervals());
    CHECK(all.intervals[0] == c.songs[0].intervals[0]);
    CHECK(all.intervals.back() == c.songs.back().intervals.back());
}

TEST_CASE("move_word_to_front relocates non-overlapping occurrences") {
    Song s = song_from_labels("seq", "okmmokqok");
    const auto res = move_word_to_front(s, IntervalWord::from_labels("ok"));
    CHECK(res.moved == 3);
    CHECK(res.sequence.intervals.size() == s.intervals.size());
    const std::string lab = [&] {
        std::string l;
        for (const auto& iv : res.sequence.intervals) l.push_back(iv.label());
        return l;
    }();
    CHECK(lab == "okokokmmq");

    // absent word: unchanged, flagged by moved == 0
    const auto none = move_word_to_front(s, IntervalWord::from_labels("ay"));
    CHECK(none.moved == 0);
    CHECK(none.sequence.intervals == s.intervals);

    // overlapping occurrences are taken greedily left to right
    Song rep = song_from_labels("rep", "mmmm");
    const auto mm = move_word_to_front(rep, IntervalWord::from_labels("mm"));
    CHECK(mm.moved == 2);

    // relocating a word already at the front is the identity
    const auto once = move_word_to_front(s, IntervalWord::from_labels("ok"));
    const auto twice = move_word_to_front(once.sequence, IntervalWord::from_labels("ok"));
    CHECK(twice.sequence.intervals == once.sequence.intervals);
    CHECK(twice.moved == once.moved);
}

TEST_CASE("saffran stream has exact counts and no immediate repetition") {
    std::vector<IntervalWord> words;
    for (const auto* w : {"fv", "un", "hs", "dy", "mt", "pl"}) words.push_back(IntervalWord::from_labels(w));
    const auto stream = saffran_stream(words, 6, 18, 321);
    CHECK(stream.tokens.size() == 108);
    CHECK(stream.song.intervals.size() == 216);
    for (std::size_t i = 1; i < stream.tokens.size(); ++i) CHECK(stream.tokens[i] != stream.tokens[i - 1]);
    // every word index appears
    std::set<int> used(stream.tokens.begin(), stream.tokens.end());
    CHECK(used.size() == 6);
}

TEST_CASE("random 3-words respect the singability constraints") {
    CHECK_FALSE(is_singable({0, 13, 5}));
    CHECK_FALSE(is_singable({4, 1, -13}));
    CHECK_FALSE(is_singable({2, 11, 6}));
    CHECK_FALSE(is_singable({5, -5, -8}));
    CHECK(is_singable({11, 1, 11}));
    Rng rng(9);
    const auto words = random_3words(500, rng);
    CHECK(words.size() == 500);
    for (const auto& w : words) {
        std::vector<int> steps;
        for (const auto& iv : w.intervals) steps.push_back(iv.semitones);
        CHECK(is_singable(steps));
    }
}

TEST_CASE("chebyshev, mdist, contour paper examples") {
    CHECK(chebyshev(IntervalWord::from_labels("caf"), IntervalWord::from_labels("jim")) == 8);
    CHECK(mdist(IntervalWord::from_labels("sgm"), IntervalWord::from_labels("okm")) == std::vector<int>{4, 4, 0});
    CHECK(contour(IntervalWord::from_labels("kmo")) == "F=R");
    CHECK(contour(IntervalWord::from_labels("mm")) == "==");
    CHECK_THROWS_AS(chebyshev(IntervalWord::from_labels("ab"), IntervalWord::from_labels("abc")), DataError);
}

TEST_CASE("unheard word sets satisfy their category definitions") {
    // synthetic inventory around m: words on a small grid, errors increasing
    // with distance from the flat word so familiar/unfamiliar split cleanly
    Corpus c;
    std::string labels;
    for (int rep = 0; rep < 3; ++rep) labels += "mmmooommmkkk";
    c.songs.push_back(song_from_labels("grid", labels));
    const auto inv = word_inventory(c, 3);
    std::map<std::string, double> errors;
    double e = 0.1;
    for (const auto& [w, cnt] : inv.counts) {
        errors[w] = e;
        e += 0.05;
    }
    const auto sets = unheard_word_sets(inv, errors, 42, 10);
    CHECK(sets.far.size() == 10);
    CHECK(sets.near_unfamiliar.size() == 10);
    CHECK(sets.near_familiar.size() == 10);
    const auto inv_words = inv.words();
    const double unfam_cut = sets.error_mean + 0.5 * sets.error_sd;
    const double fam_cut = sets.error_mean - 0.5 * sets.error_sd;
    for (const auto& w : sets.far) {
        CHECK_FALSE(inv.contains(w.labels()));
        for (const auto& k : inv_words) CHECK(chebyshev(w, k) > 5); // brute-force verification
    }
    for (const auto& w : sets.near_unfamiliar) {
        CHECK_FALSE(inv.contains(w.labels()));
        bool near_unfam = false, near_fam = false;
        for (std::size_t i = 0; i < inv_words.size(); ++i) {
            const int d = chebyshev(w, inv_words[i]);
            if (d == 1 && errors.at(inv_words[i].labels()) > unfam_cut) near_unfam = true;
            if (d <= 1 && errors.at(inv_words[i].labels()) < fam_cut) near_fam = true;
        }
        CHECK(near_unfam);
        CHECK_FALSE(near_fam);
    }
    for (const auto& w : sets.near_familiar) {
        CHECK_FALSE(inv.contains(w.labels()));
        bool near_fam = false;
        for (std::size_t i = 0; i < inv_words.size(); ++i)
            if (chebyshev(w, inv_words[i]) == 1 && errors.at(inv_words[i].labels()) < fam_cut) near_fam = true;
        CHECK(near_fam);
    }
}

TEST_CASE("unheard word sets report exhaustion") {
    Corpus c;
    c.songs.push_back(song_from_labels("tiny", "mm"));
    const auto inv = word_inventory(c, 3); // empty inventory -> categories unfillable
    std::map<std::string, double> errors;
    CHECK_THROWS_AS(unheard_word_sets(inv, errors, 1, 5, 100), DataError);
}

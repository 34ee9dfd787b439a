#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tracx/experiments.hpp"

using namespace tracx;

namespace {

Song song_from_labels(const std::string& name, const std::string& labels) {
    Song s;
    s.name = name;
    for (char c : labels) s.intervals.push_back(Interval::from_label(c));
    return s;
}

// a toy corpus with strong chunk structure and a skewed word distribution
Corpus toy_corpus() {
    Corpus c;
    c.songs.push_back(song_from_labels("a", "mmommommokmikmmo"));
    c.songs.push_back(song_from_labels("b", "okmmokqkmmommoik"));
    c.songs.push_back(song_from_labels("c", "mmokmtmfmmommokq"));
    c.songs.push_back(song_from_labels("d", "qkmmoikmmokmtmmo"));
    return c;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("frequency-error anticorrelation on a skewed toy corpus") {
    const Corpus c = toy_corpus();
    Hyperparams hp;
    const auto inv = word_inventory(c, 2);
    const auto words = inv.words();
    const auto errs = replicate_word_errors(ModelKind::Tracx2, c, Encoding::Ordinal, hp, 30, words, 8, 5, default_exec());
    std::vector<double> freqs;
    for (const auto& w : words) freqs.push_back(inv.counts.at(w.labels()));
    const auto r = pearson(freqs, errs);
    REQUIRE(r.has_value());
    CHECK(*r < 0.0); // frequent words end up with smaller errors
}

TEST_CASE("study1_clusters produces one point per 2-word with classes") {
    const Corpus c = toy_corpus();
    const ClusterReport rep = study1_clusters(c, Encoding::Ordinal, ModelKind::Tracx2, 3, default_exec());
    CHECK(rep.points.size() == word_inventory(c, 2).counts.size());
    for (const auto& p : rep.points) {
        CHECK(p.cls.size() == 2);
        for (char ch : p.cls) CHECK((ch == 'R' || ch == 'F' || ch == '='));
    }
    CHECK(rep.explained_pc1 >= rep.explained_pc2);
}

TEST_CASE("study1_trace rows carry one R^2 per interval position") {
    const Corpus c = toy_corpus();
    const TraceReport rep = study1_trace(c, 4, default_exec());
    REQUIRE(rep.rows.size() == 4); // 2 encodings x word lengths 3,4
    for (const auto& row : rep.rows) {
        CHECK(static_cast<int>(row.r2.size()) == row.word_len);
        for (double r2 : row.r2) {
            CHECK(r2 >= 0.0);
            CHECK(r2 <= 1.0);
        }
    }
}

TEST_CASE("study1_primacy: relocation report is consistent") {
    const Corpus c = toy_corpus();
    const PrimacyReport rep = study1_primacy(c, IntervalWord::from_labels("mo"), 4, 6, default_exec());
    CHECK(rep.occurrences_moved > 0);
    CHECK(rep.baseline_errors.size() == 4);
    CHECK(rep.relocated_errors.size() == 4);
    CHECK(rep.freq_error_r.has_value());
    CHECK_THROWS_AS(study1_primacy(c, IntervalWord::from_labels("ay"), 2, 6, default_exec()), DataError);
}

TEST_CASE("study2_prior_learning orders regimes sensibly on a toy setup") {
    const Corpus c = toy_corpus();
    // held-out melody with intervals far outside the toy corpus alphabet
    Song test = song_from_labels("held-out", "AyTBxUwC");
    const PriorLearningReport rep =
        study2_prior_learning(c, test, {ModelKind::Tracx2}, 6, 7, default_exec());
    CHECK_FALSE(rep.test_words.empty());
    const auto& songs = rep.cell(ModelKind::Tracx2, "songs");
    const auto& none = rep.cell(ModelKind::Tracx2, "no-training");
    CHECK(songs.run_means.size() == 6);
    CHECK(none.run_means.size() == 6);
    // five regimes per model
    CHECK(rep.cells.size() == 5);
}

TEST_CASE("study2_prior_learning rejects fully covered test melodies") {
    const Corpus c = toy_corpus();
    Song test = song_from_labels("inside", "mmo"); // occurs in training
    CHECK_THROWS_AS(study2_prior_learning(c, test, {ModelKind::Tracx2}, 2, 7, default_exec()), DataError);
}

TEST_CASE("study4_saffran report shapes and groupings") {
    const SaffranReport rep = study4_saffran("repaired", ModelKind::Tracx2, 4, 10, 9, default_exec());
    CHECK(rep.errors.rows == 4);
    CHECK(rep.errors.cols == 6);
    REQUIRE(rep.groupings.size() == 1);
    CHECK(rep.groupings[0].xb_run_means.size() == 4);
    CHECK(rep.groupings[0].frac_comparisons_xb_better >= 0.0);
    CHECK(rep.groupings[0].frac_comparisons_xb_better <= 1.0);

    const SaffranReport orig = study4_saffran("original", ModelKind::Tracx2, 3, 5, 10, default_exec());
    REQUIRE(orig.groupings.size() == 2);
    CHECK(orig.groupings[0].name == "pn-as-xb");
    CHECK(orig.groupings[1].name == "pn-as-ax");
    CHECK_THROWS_AS(study4_saffran("nonsense", ModelKind::Tracx2, 2, 5, 1, default_exec()), DataError);
}

TEST_CASE("study4_internal_reps covers every 3-word") {
    const Corpus c = toy_corpus();
    const RepAsymmetryReport rep = study4_internal_reps(c, {ModelKind::Tracx2, ModelKind::Srn}, 11, default_exec());
    REQUIRE(rep.models.size() == 2);
    for (const auto& pm : rep.models) {
        CHECK(pm.n_words == static_cast<int>(word_inventory(c, 3).counts.size()));
        CHECK(pm.frac_end_closer >= 0.0);
        CHECK(pm.frac_end_closer <= 1.0);
    }
}

TEST_CASE("csv writers emit byte-identical files for identical reports") {
    namespace fs = std::filesystem;
    const Corpus c = toy_corpus();
    const std::string dir1 = "test_exp_out1", dir2 = "test_exp_out2";
    fs::create_directories(dir1);
    fs::create_directories(dir2);
    const PrimacyReport r1 = study1_primacy(c, IntervalWord::from_labels("mo"), 3, 21, default_exec());
    const PrimacyReport r2 = study1_primacy(c, IntervalWord::from_labels("mo"), 3, 21, default_exec());
    write_primacy_csv(r1, dir1);
    write_primacy_csv(r2, dir2);
    CHECK(slurp(dir1 + "/primacy_runs.csv") == slurp(dir2 + "/primacy_runs.csv"));
    CHECK(slurp(dir1 + "/primacy_summary.csv") == slurp(dir2 + "/primacy_summary.csv"));
    fs::remove_all(dir1);
    fs::remove_all(dir2);
}

TEST_CASE("aggregates in reports are recomputable from per-run tables") {
    const Corpus c = toy_corpus();
    const PrimacyReport rep = study1_primacy(c, IntervalWord::from_labels("mo"), 5, 31, default_exec());
    CHECK(rep.baseline_mean == mean(rep.baseline_errors));
    CHECK(rep.relocated_mean == mean(rep.relocated_errors));

    Song test = song_from_labels("held-out", "AyTBxUwC");
    const PriorLearningReport prior = study2_prior_learning(c, test, {ModelKind::Rae}, 4, 13, default_exec());
    for (const auto& cell : prior.cells) {
        CHECK(cell.mean == mean(cell.run_means));
        CHECK(cell.sem == sem(cell.run_means));
    }
}

#ifndef TRACX_EXPERIMENTS_HPP
#define TRACX_EXPERIMENTS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tracx/analysis.hpp"
#include "tracx/corpus.hpp"
#include "tracx/net.hpp"
#include "tracx/parallel.hpp"

namespace tracx {

enum class ModelKind { Tracx2, Rae, Srn };

ModelKind model_from_string(const std::string& s);
std::string to_string(ModelKind m);

// A trained model behind one scoring interface.
class AnyNet {
public:
    static AnyNet train(ModelKind kind, const Corpus& corpus, Encoding enc, const Hyperparams& hp, int epochs,
                        std::uint64_t run_seed);
    static AnyNet untrained(ModelKind kind, Encoding enc, const Hyperparams& hp, std::uint64_t run_seed);

    double word_error(const IntervalWord& word) const;
    ActVector hidden_rep(const IntervalWord& word) const;
    ModelKind kind() const { return kind_; }
    const Tracx2Net& autoencoder() const;
    const SrnNet& srn() const;

private:
    ModelKind kind_ = ModelKind::Tracx2;
    std::optional<Tracx2Net> ae_;
    std::optional<SrnNet> srn_;
};

// Frozen-net batch scoring; index-sloted writes, so serial and OpenMP
// execution give identical results.
std::vector<double> score_words(const AnyNet& net, const std::vector<IntervalWord>& words, Exec exec);
Matrix rep_matrix(const AnyNet& net, const std::vector<IntervalWord>& words, Exec exec);

// Per-word mean error across independently seeded replicate runs.
std::vector<double> replicate_word_errors(ModelKind kind, const Corpus& corpus, Encoding enc, const Hyperparams& hp,
                                          int epochs, const std::vector<IntervalWord>& words, int runs,
                                          std::uint64_t seed, Exec exec);

// ---------------------------------------------------------------- study 1.1

struct ClusterReport {
    struct Point {
        std::string word;
        std::string cls; // 2-interval contour class, e.g. "R=", "FF"
        double pc1 = 0.0, pc2 = 0.0;
    };
    std::string model;
    Encoding encoding = Encoding::Ordinal;
    std::vector<Point> points;
    double explained_pc1 = 0.0, explained_pc2 = 0.0;
    double within_class_mean = 0.0, between_class_mean = 0.0;
    double mean_silhouette = 0.0;
    // per flat-second/flat-first class: Pearson r between |non-flat interval|
    // and the PC-plane distance from the "mm" point (monotone layout check)
    std::map<std::string, double> flat_class_monotonicity;
};

ClusterReport study1_clusters(const Corpus& corpus, Encoding enc, ModelKind model, std::uint64_t seed, Exec exec);

// ---------------------------------------------------------------- study 1.2

struct TraceReport {
    struct Row {
        Encoding encoding = Encoding::Ordinal;
        int word_len = 0;
        int n_words = 0;
        std::vector<double> r2; // one per interval position
    };
    std::vector<Row> rows;
};

TraceReport study1_trace(const Corpus& corpus, std::uint64_t seed, Exec exec);

// ---------------------------------------------------------------- study 1.3

struct PrimacyReport {
    std::string word;
    int occurrences_moved = 0;
    std::vector<double> baseline_errors;  // per run, concatenated training
    std::vector<double> relocated_errors; // per run, word moved to the front
    double baseline_mean = 0.0, relocated_mean = 0.0;
    std::optional<double> freq_error_r; // r(frequency, mean error) over 2-words
};

PrimacyReport study1_primacy(const Corpus& corpus, const IntervalWord& word, int runs, std::uint64_t seed, Exec exec);

// ---------------------------------------------------------------- study 2

inline constexpr const char* kPriorRegimes[] = {"songs", "within-song-permute", "global-permute", "full-random",
                                                "no-training"};

struct PriorLearningReport {
    struct Cell {
        ModelKind model;
        std::string regime;
        std::vector<double> run_means;
        double mean = 0.0, sem = 0.0;
    };
    std::vector<Cell> cells;
    std::vector<std::string> test_words;

    const Cell& cell(ModelKind m, const std::string& regime) const;
};

PriorLearningReport study2_prior_learning(const Corpus& corpus, const Song& test_melody,
                                          const std::vector<ModelKind>& models, int runs, std::uint64_t seed,
                                          Exec exec);

struct UnheardReport {
    struct PerModel {
        ModelKind model;
        UnheardWordSets sets;
        std::vector<double> err_far, err_near_unfam, err_near_fam;
        double mean_far = 0.0, mean_near_unfam = 0.0, mean_near_fam = 0.0;
        TestResult anova;
        // Bonferroni-corrected pairwise unpaired t-tests (far/nu, far/nf, nu/nf)
        std::vector<TestResult> posthoc;
    };
    std::vector<PerModel> models;
};

UnheardReport study2_unheard_categories(const Corpus& corpus, const std::vector<ModelKind>& models,
                                        std::uint64_t seed, Exec exec);

// ---------------------------------------------------------------- study 3

struct ContourReport {
    struct PerModel {
        std::string model; // tracx2 | rae | srn | untrained
        ContourStudyResult result;
    };
    std::vector<PerModel> models;
    std::vector<IntervalWord> words;
};

ContourReport study3_contour(const Corpus& corpus, int n_words, std::uint64_t seed, Exec exec);

// ---------------------------------------------------------------- study 4

struct SaffranDesign {
    std::string variant; // "original" | "repaired"
    std::vector<std::string> words;
    std::vector<std::string> partwords;
    // named groupings of the part-words into Xb / aX sets
    struct Grouping {
        std::string name;
        std::vector<std::string> xb, ax;
    };
    std::vector<Grouping> groupings;
};

SaffranDesign saffran_design(const std::string& variant);

struct SaffranReport {
    SaffranDesign design;
    ModelKind model;
    int runs = 0, epochs = 0;
    Matrix errors; // runs x partwords
    struct GroupingResult {
        std::string name;
        std::vector<double> xb_run_means, ax_run_means;
        TestResult t; // paired across runs, Xb - aX
        double frac_runs_xb_better = 0.0;
        double frac_comparisons_xb_better = 0.0; // over run x Xb-word x aX-word
    };
    std::vector<GroupingResult> groupings;
};

SaffranReport study4_saffran(const std::string& variant, ModelKind model, int runs, int epochs, std::uint64_t seed,
                             Exec exec);

struct RepAsymmetryReport {
    struct PerModel {
        ModelKind model;
        int n_words = 0;
        double mean_begin_dist = 0.0; // cityblock(H(abc), H(ab))
        double mean_end_dist = 0.0;   // cityblock(H(abc), H(bc))
        double frac_end_closer = 0.0;
    };
    std::vector<PerModel> models;
};

RepAsymmetryReport study4_internal_reps(const Corpus& corpus, const std::vector<ModelKind>& models,
                                        std::uint64_t seed, Exec exec);

// ---------------------------------------------------------------- CSV output

void write_cluster_csv(const ClusterReport& r, const std::string& dir);
void write_trace_csv(const TraceReport& r, const std::string& dir);
void write_primacy_csv(const PrimacyReport& r, const std::string& dir);
void write_prior_csv(const PriorLearningReport& r, const std::string& dir);
void write_unheard_csv(const UnheardReport& r, const std::string& dir);
void write_contour_csv(const ContourReport& r, const std::string& dir);
void write_saffran_csv(const SaffranReport& r, const std::string& dir);
void write_reps_csv(const RepAsymmetryReport& r, const std::string& dir);

} // namespace tracx

#endif

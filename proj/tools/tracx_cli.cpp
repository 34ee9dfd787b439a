// Batch front end: corpus tooling, training, scoring, experiment execution.

#include <cctype>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tracx/csv.hpp"
#include "tracx/experiments.hpp"
#include "tracx/melody.hpp"
#include "tracx/net.hpp"
#include "tracx/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tracx;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;

struct CliOptions {
    std::string melody_path;
    std::string corpus_path;
    std::string corpus2_path;
    std::string test_melody_path;
    std::string snapshot_path;
    std::string words_path;
    std::string out_dir = "out";
    std::string out_file;
    std::string model = "tracx2";
    std::string models_csv = "tracx2,rae,srn";
    std::string encoding = "ordinal";
    std::string study;
    std::string primacy_word = "mo";
    std::uint64_t seed = 1;
    int epochs = -1; // -1 = the study default
    int runs = 20;
    int n_words = 1000;
    int jobs = 0; // 0 = all cores (OpenMP), 1 = serial
    bool trace = false;
};

Exec exec_for(int jobs) {
    if (jobs == 1) return Exec::Serial;
#ifdef _OPENMP
    if (jobs > 1) omp_set_num_threads(jobs);
    return Exec::OpenMP;
#else
    return Exec::Serial;
#endif
}

std::vector<ModelKind> parse_models(const std::string& csv) {
    std::vector<ModelKind> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(model_from_string(item));
    }
    if (out.empty()) throw DataError("no models given");
    return out;
}

int cmd_encode(const CliOptions& opt) {
    const Melody m = load_melody(opt.melody_path);
    if (m.intervals.empty()) throw DataError(opt.melody_path + ": melody has fewer than 2 notes, no intervals");
    std::ostringstream steps;
    for (std::size_t i = 0; i < m.intervals.size(); ++i) {
        if (i) steps << ' ';
        const int s = m.intervals[i].semitones;
        if (s > 0) steps << '+';
        steps << s;
    }
    std::cout << steps.str() << "\n" << render_labels(m.intervals) << "\n";
    return 0;
}

int cmd_train(const CliOptions& opt) {
    const Corpus corpus = load_corpus(opt.corpus_path);
    const Encoding enc = encoding_from_string(opt.encoding);
    const ModelKind kind = model_from_string(opt.model);
    Hyperparams hp;
    const int epochs = opt.epochs >= 0 ? opt.epochs : hp.epochs;
    fs::create_directories(opt.out_dir);
    const std::string snap_path = opt.out_dir + "/net.snapshot";

    if (kind == ModelKind::Srn) {
        if (opt.trace) throw DataError("--trace is only available for the autoencoder models");
        SrnNet net(enc, hp, derive_seed(opt.seed, 0));
        Rng rng(derive_seed(opt.seed, 1));
        net.train_corpus(corpus, epochs, rng);
        net.save_snapshot(snap_path);
    } else {
        Tracx2Net net(enc, hp, derive_seed(opt.seed, 0));
        Rng rng(derive_seed(opt.seed, 1));
        CsvWriter trace({"epoch", "song", "step", "E", "delta"});
        TrainObserver observer;
        if (opt.trace) {
            observer = [&](const TrainStepSample& s) {
                trace.add_row({std::to_string(s.epoch), std::to_string(s.song), std::to_string(s.step), fmt9(s.error),
                               fmt9(s.delta)});
            };
        }
        const Mode mode = kind == ModelKind::Rae ? Mode::Rae : Mode::Tracx2;
        net.train_corpus(corpus, epochs, mode, rng, observer);
        net.save_snapshot(snap_path, opt.model);
        if (opt.trace) trace.write_atomic(opt.out_dir + "/training_trace.csv");
    }
    std::cout << "wrote " << snap_path << "\n";
    return 0;
}

int cmd_score(const CliOptions& opt) {
    const std::string model = snapshot_model_name(opt.snapshot_path);
    std::optional<Tracx2Net> ae;
    std::optional<SrnNet> srn;
    if (model == "srn")
        srn = SrnNet::load_snapshot(opt.snapshot_path);
    else
        ae = Tracx2Net::load_snapshot(opt.snapshot_path);
    const Mode mode = model == "rae" ? Mode::Rae : Mode::Tracx2;

    // frequency column needs one inventory per word length; cache by n
    std::map<int, WordInventory> inv_by_len;
    std::optional<Corpus> corpus;
    if (!opt.corpus_path.empty()) corpus = load_corpus(opt.corpus_path);

    std::ifstream wf(opt.words_path);
    if (!wf) throw DataError("cannot open words file: " + opt.words_path);
    CsvWriter csv({"word", "length", "error", "frequency", "status"});
    std::string line;
    while (std::getline(wf, line)) {
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
        std::size_t start = 0;
        while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start]))) ++start;
        const std::string token = line.substr(start);
        if (token.empty() || token[0] == '#') continue;
        std::string status = "ok", err_field, freq_field;
        IntervalWord word;
        bool valid = true;
        try {
            word = IntervalWord::from_labels(token);
        } catch (const DataError&) {
            status = "unknown-letter";
            valid = false;
        }
        if (valid && word.size() < 2) {
            status = "too-short";
            valid = false;
        }
        if (valid) {
            const double e = srn ? srn->word_error(word) : ae->word_error(word, mode);
            err_field = fmt9(e);
            if (corpus) {
                auto [it, inserted] = inv_by_len.try_emplace(static_cast<int>(word.size()));
                if (inserted) it->second = word_inventory(*corpus, static_cast<int>(word.size()));
                const auto cit = it->second.counts.find(word.labels());
                freq_field = std::to_string(cit == it->second.counts.end() ? 0 : cit->second);
            }
        }
        csv.add_row({token, std::to_string(token.size()), err_field, freq_field, status});
    }
    if (opt.out_file.empty())
        std::cout << csv.str();
    else
        csv.write_atomic(opt.out_file);
    return 0;
}

json base_manifest(const CliOptions& opt, const std::string& study) {
    json j;
    j["study"] = study;
    j["seed"] = opt.seed;
    j["runs"] = opt.runs;
    j["jobs"] = opt.jobs;
    j["corpus"] = opt.corpus_path;
    j["encoding"] = opt.encoding;
    j["version"] = "1.0";
    // provenance only; CSV outputs stay byte-identical for identical seeds
    const std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    j["timestamp"] = stamp;
    return j;
}

int cmd_experiment(const CliOptions& opt) {
    const Exec exec = exec_for(opt.jobs);
    fs::create_directories(opt.out_dir);
    json manifest = base_manifest(opt, opt.study);
    std::vector<std::string> outputs;

    const auto need_corpus = [&]() {
        if (opt.corpus_path.empty()) throw DataError("--corpus is required for study " + opt.study);
        return load_corpus(opt.corpus_path);
    };

    if (opt.study == "st1.1") {
        const Corpus corpus = need_corpus();
        const ClusterReport rep = study1_clusters(corpus, encoding_from_string(opt.encoding),
                                                  model_from_string(opt.model), opt.seed, exec);
        write_cluster_csv(rep, opt.out_dir);
        std::vector<ScatterPoint> pts;
        for (const auto& p : rep.points) pts.push_back({p.pc1, p.pc2, p.word, p.cls});
        write_text_atomic(opt.out_dir + "/pca_clusters.svg",
                          svg_scatter(pts, "2-interval word representations (" + rep.model + ", " +
                                               to_string(rep.encoding) + ")",
                                      "PC1", "PC2"));
        outputs = {"pca_clusters.csv", "pca_clusters_summary.csv", "pca_clusters.svg"};
        manifest["model"] = opt.model;
    } else if (opt.study == "st1.2") {
        const Corpus corpus = need_corpus();
        write_trace_csv(study1_trace(corpus, opt.seed, exec), opt.out_dir);
        outputs = {"table1.csv"};
        if (!opt.corpus2_path.empty()) {
            const Corpus corpus2 = load_corpus(opt.corpus2_path);
            const TraceReport rep2 = study1_trace(corpus2, derive_seed(opt.seed, 2), exec);
            const std::string sub = opt.out_dir + "/set2";
            fs::create_directories(sub);
            write_trace_csv(rep2, sub);
            outputs.push_back("set2/table1.csv");
            manifest["corpus2"] = opt.corpus2_path;
        }
    } else if (opt.study == "st1.3") {
        const Corpus corpus = need_corpus();
        const PrimacyReport rep =
            study1_primacy(corpus, IntervalWord::from_labels(opt.primacy_word), opt.runs, opt.seed, exec);
        write_primacy_csv(rep, opt.out_dir);
        outputs = {"primacy_runs.csv", "primacy_summary.csv"};
        manifest["word"] = opt.primacy_word;
    } else if (opt.study == "st2.prior") {
        const Corpus corpus = need_corpus();
        if (opt.test_melody_path.empty()) throw DataError("--test-melody is required for st2.prior");
        const Melody bach = load_melody(opt.test_melody_path);
        const PriorLearningReport rep = study2_prior_learning(corpus, Song{bach.name, bach.intervals},
                                                              parse_models(opt.models_csv), opt.runs, opt.seed, exec);
        write_prior_csv(rep, opt.out_dir);
        outputs = {"prior_learning_runs.csv", "prior_learning_summary.csv", "prior_learning_test_words.csv"};
        manifest["models"] = opt.models_csv;
        manifest["test_melody"] = opt.test_melody_path;
    } else if (opt.study == "st2.unheard") {
        const Corpus corpus = need_corpus();
        const UnheardReport rep = study2_unheard_categories(corpus, parse_models(opt.models_csv), opt.seed, exec);
        write_unheard_csv(rep, opt.out_dir);
        outputs = {"unheard_words.csv", "unheard_summary.csv"};
        manifest["models"] = opt.models_csv;
    } else if (opt.study == "st3") {
        const Corpus corpus = need_corpus();
        const ContourReport rep = study3_contour(corpus, opt.n_words, opt.seed, exec);
        write_contour_csv(rep, opt.out_dir);
        outputs = {"contour_triplets.csv", "contour_summary.csv"};
        manifest["n_words"] = opt.n_words;
    } else if (opt.study == "st4.original" || opt.study == "st4.repaired") {
        const std::string variant = opt.study.substr(4);
        const int epochs = opt.epochs >= 0 ? opt.epochs : 100;
        const SaffranReport rep =
            study4_saffran(variant, model_from_string(opt.model), opt.runs, epochs, opt.seed, exec);
        write_saffran_csv(rep, opt.out_dir);
        outputs = {"saffran_runs.csv", "saffran_summary.csv"};
        manifest["model"] = opt.model;
        manifest["epochs"] = epochs;
    } else if (opt.study == "st4.reps") {
        const Corpus corpus = need_corpus();
        const RepAsymmetryReport rep = study4_internal_reps(corpus, parse_models(opt.models_csv), opt.seed, exec);
        write_reps_csv(rep, opt.out_dir);
        outputs = {"rep_asymmetry.csv"};
        manifest["models"] = opt.models_csv;
    } else {
        throw DataError("unknown study id: " + opt.study +
                        " (expected st1.1, st1.2, st1.3, st2.prior, st2.unheard, st3, st4.original, st4.repaired, "
                        "st4.reps)");
    }

    manifest["outputs"] = outputs;
    write_text_atomic(opt.out_dir + "/manifest.json", manifest.dump(2) + "\n");
    std::cout << "study " << opt.study << " written to " << opt.out_dir << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"TRACX2 melody segmentation and chunking toolkit"};
    app.require_subcommand(1);
    CliOptions opt;

    auto* enc = app.add_subcommand("encode", "print the interval steps and letters of a melody file");
    enc->add_option("melody", opt.melody_path, "melody file")->required();

    auto* train = app.add_subcommand("train", "train a model on a corpus and write a net snapshot");
    train->add_option("--corpus", opt.corpus_path, "corpus manifest")->required();
    train->add_option("--model", opt.model, "tracx2|rae|srn");
    train->add_option("--encoding", opt.encoding, "ordinal|onehot");
    train->add_option("--epochs", opt.epochs, "training epochs (default 30)");
    train->add_option("--seed", opt.seed, "rng seed")->required();
    train->add_option("--out", opt.out_dir, "output directory");
    train->add_flag("--trace", opt.trace, "also write a per-step E/delta CSV");

    auto* score = app.add_subcommand("score", "score words (one per line) with a trained snapshot");
    score->add_option("--snapshot", opt.snapshot_path, "net snapshot file")->required();
    score->add_option("--words", opt.words_path, "word list file")->required();
    score->add_option("--corpus", opt.corpus_path, "corpus manifest for the frequency column");
    score->add_option("--out", opt.out_file, "output CSV (default stdout)");

    auto* expcmd = app.add_subcommand("experiment", "run one of the study pipelines");
    expcmd->add_option("--study", opt.study, "st1.1|st1.2|st1.3|st2.prior|st2.unheard|st3|st4.original|st4.repaired|st4.reps")
        ->required();
    expcmd->add_option("--corpus", opt.corpus_path, "corpus manifest");
    expcmd->add_option("--corpus2", opt.corpus2_path, "second corpus manifest (st1.2)");
    expcmd->add_option("--test-melody", opt.test_melody_path, "held-out melody file (st2.prior)");
    expcmd->add_option("--model", opt.model, "model for single-model studies");
    expcmd->add_option("--models", opt.models_csv, "comma list for multi-model studies");
    expcmd->add_option("--encoding", opt.encoding, "ordinal|onehot");
    expcmd->add_option("--epochs", opt.epochs, "override the study's epoch count");
    expcmd->add_option("--runs", opt.runs, "replicate runs (default 20)");
    std::string seeds_spec;
    expcmd->add_option("--seeds", seeds_spec,
                       "replicate count; per-run seeds are derived from --seed (alias of --runs)");
    expcmd->add_option("--words", opt.n_words, "random word count for st3 (default 1000)");
    expcmd->add_option("--word", opt.primacy_word, "word to relocate for st1.3 (default mo)");
    expcmd->add_option("--seed", opt.seed, "rng seed")->required();
    expcmd->add_option("--out", opt.out_dir, "output directory");
    expcmd->add_option("--jobs", opt.jobs, "worker threads; 1 = serial");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (!seeds_spec.empty()) {
            if (seeds_spec.find(',') != std::string::npos)
                throw DataError("--seeds takes a replicate count; per-run seeds are derived from --seed");
            opt.runs = std::stoi(seeds_spec);
        }
        if (enc->parsed()) return cmd_encode(opt);
        if (train->parsed()) return cmd_train(opt);
        if (score->parsed()) return cmd_score(opt);
        if (expcmd->parsed()) return cmd_experiment(opt);
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}

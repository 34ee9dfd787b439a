#include "tracx/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "tracx/csv.hpp"

namespace tracx {

ModelKind model_from_string(const std::string& s) {
    if (s == "tracx2") return ModelKind::Tracx2;
    if (s == "rae") return ModelKind::Rae;
    if (s == "srn") return ModelKind::Srn;
    throw DataError("unknown model: " + s);
}

std::string to_string(ModelKind m) {
    switch (m) {
    case ModelKind::Tracx2: return "tracx2";
    case ModelKind::Rae: return "rae";
    case ModelKind::Srn: return "srn";
    }
    return "?";
}

namespace {
Mode ae_mode(ModelKind kind) { return kind == ModelKind::Rae ? Mode::Rae : Mode::Tracx2; }
std::string join(const std::string& dir, const std::string& name) { return dir + "/" + name; }
} // namespace

AnyNet AnyNet::train(ModelKind kind, const Corpus& corpus, Encoding enc, const Hyperparams& hp, int epochs,
                     std::uint64_t run_seed) {
    AnyNet net = untrained(kind, enc, hp, run_seed);
    Rng shuffle_rng(derive_seed(run_seed, 1));
    if (kind == ModelKind::Srn)
        net.srn_->train_corpus(corpus, epochs, shuffle_rng);
    else
        net.ae_->train_corpus(corpus, epochs, ae_mode(kind), shuffle_rng);
    return net;
}

AnyNet AnyNet::untrained(ModelKind kind, Encoding enc, const Hyperparams& hp, std::uint64_t run_seed) {
    AnyNet net;
    net.kind_ = kind;
    if (kind == ModelKind::Srn)
        net.srn_.emplace(enc, hp, derive_seed(run_seed, 0));
    else
        net.ae_.emplace(enc, hp, derive_seed(run_seed, 0));
    return net;
}

double AnyNet::word_error(const IntervalWord& word) const {
    return kind_ == ModelKind::Srn ? srn_->word_error(word) : ae_->word_error(word, ae_mode(kind_));
}

ActVector AnyNet::hidden_rep(const IntervalWord& word) const {
    return kind_ == ModelKind::Srn ? srn_->hidden_rep(word) : ae_->hidden_rep(word, ae_mode(kind_));
}

const Tracx2Net& AnyNet::autoencoder() const {
    if (!ae_) throw DataError("model is not an autoencoder");
    return *ae_;
}

const SrnNet& AnyNet::srn() const {
    if (!srn_) throw DataError("model is not an SRN");
    return *srn_;
}

std::vector<double> score_words(const AnyNet& net, const std::vector<IntervalWord>& words, Exec exec) {
    std::vector<double> errors(words.size(), 0.0);
    parallel_for(exec, static_cast<std::ptrdiff_t>(words.size()),
                 [&](std::ptrdiff_t i) { errors[static_cast<std::size_t>(i)] = net.word_error(words[static_cast<std::size_t>(i)]); });
    return errors;
}

Matrix rep_matrix(const AnyNet& net, const std::vector<IntervalWord>& words, Exec exec) {
    Matrix m(static_cast<int>(words.size()), kCodeLen);
    parallel_for(exec, static_cast<std::ptrdiff_t>(words.size()), [&](std::ptrdiff_t i) {
        const ActVector h = net.hidden_rep(words[static_cast<std::size_t>(i)]);
        for (int j = 0; j < kCodeLen; ++j) m.at(static_cast<int>(i), j) = h[static_cast<std::size_t>(j)];
    });
    return m;
}

std::vector<double> replicate_word_errors(ModelKind kind, const Corpus& corpus, Encoding enc, const Hyperparams& hp,
                                          int epochs, const std::vector<IntervalWord>& words, int runs,
                                          std::uint64_t seed, Exec exec) {
    std::vector<std::vector<double>> per_run(static_cast<std::size_t>(runs));
    parallel_for(exec, runs, [&](std::ptrdiff_t r) {
        const AnyNet net = AnyNet::train(kind, corpus, enc, hp, epochs, derive_seed(seed, static_cast<std::uint64_t>(r)));
        per_run[static_cast<std::size_t>(r)] = score_words(net, words, Exec::Serial);
    });
    std::vector<double> means(words.size(), 0.0);
    for (const auto& run : per_run)
        for (std::size_t i = 0; i < words.size(); ++i) means[i] += run[i];
    for (auto& m : means) m /= static_cast<double>(runs);
    return means;
}

// ---------------------------------------------------------------- study 1.1

ClusterReport study1_clusters(const Corpus& corpus, Encoding enc, ModelKind model, std::uint64_t seed, Exec exec) {
    const Hyperparams hp;
    const AnyNet net = AnyNet::train(model, corpus, enc, hp, hp.epochs, derive_seed(seed, 0));
    const auto words = word_inventory(corpus, 2).words();
    const Matrix reps = rep_matrix(net, words, exec);
    const PcaResult p = pca(reps);

    ClusterReport rep;
    rep.model = to_string(model);
    rep.encoding = enc;
    rep.explained_pc1 = p.explained.size() > 0 ? p.explained[0] : 0.0;
    rep.explained_pc2 = p.explained.size() > 1 ? p.explained[1] : 0.0;
    for (std::size_t i = 0; i < words.size(); ++i)
        rep.points.push_back({words[i].labels(), contour(words[i]), p.projections.at(static_cast<int>(i), 0),
                              p.projections.at(static_cast<int>(i), 1)});

    const auto dist = [&](const ClusterReport::Point& a, const ClusterReport::Point& b) {
        return std::hypot(a.pc1 - b.pc1, a.pc2 - b.pc2);
    };
    double within = 0.0, between = 0.0;
    long n_within = 0, n_between = 0;
    for (std::size_t i = 0; i < rep.points.size(); ++i) {
        for (std::size_t j = i + 1; j < rep.points.size(); ++j) {
            const double d = dist(rep.points[i], rep.points[j]);
            if (rep.points[i].cls == rep.points[j].cls) {
                within += d;
                ++n_within;
            } else {
                between += d;
                ++n_between;
            }
        }
    }
    rep.within_class_mean = n_within ? within / static_cast<double>(n_within) : 0.0;
    rep.between_class_mean = n_between ? between / static_cast<double>(n_between) : 0.0;

    // mean silhouette over points whose class has at least 2 members
    std::map<std::string, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < rep.points.size(); ++i) by_class[rep.points[i].cls].push_back(i);
    double sil_sum = 0.0;
    long sil_n = 0;
    for (std::size_t i = 0; i < rep.points.size(); ++i) {
        const auto& own = by_class[rep.points[i].cls];
        if (own.size() < 2) continue;
        double a = 0.0;
        for (std::size_t j : own)
            if (j != i) a += dist(rep.points[i], rep.points[j]);
        a /= static_cast<double>(own.size() - 1);
        double b = std::numeric_limits<double>::infinity();
        for (const auto& [cls, members] : by_class) {
            if (cls == rep.points[i].cls) continue;
            double m = 0.0;
            for (std::size_t j : members) m += dist(rep.points[i], rep.points[j]);
            b = std::min(b, m / static_cast<double>(members.size()));
        }
        sil_sum += (b - a) / std::max(a, b);
        ++sil_n;
    }
    rep.mean_silhouette = sil_n ? sil_sum / static_cast<double>(sil_n) : 0.0;

    // layout of the four flat-containing classes relative to "mm"
    const auto mm = std::find_if(rep.points.begin(), rep.points.end(),
                                 [](const auto& pt) { return pt.word == "mm"; });
    if (mm != rep.points.end()) {
        for (const std::string cls : {"R=", "F=", "=R", "=F"}) {
            std::vector<double> sizes, dists;
            for (const auto& pt : rep.points) {
                if (pt.cls != cls) continue;
                const IntervalWord w = IntervalWord::from_labels(pt.word);
                const int nonflat = w.intervals[0].semitones != 0 ? w.intervals[0].semitones : w.intervals[1].semitones;
                sizes.push_back(std::abs(nonflat));
                dists.push_back(dist(pt, *mm));
            }
            if (sizes.size() >= 3) {
                if (const auto r = pearson(sizes, dists)) rep.flat_class_monotonicity[cls] = *r;
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------- study 1.2

TraceReport study1_trace(const Corpus& corpus, std::uint64_t seed, Exec exec) {
    const Hyperparams hp;
    TraceReport rep;
    int net_idx = 0;
    for (const Encoding enc : {Encoding::Ordinal, Encoding::OneHot}) {
        const AnyNet net =
            AnyNet::train(ModelKind::Tracx2, corpus, enc, hp, hp.epochs, derive_seed(seed, static_cast<std::uint64_t>(net_idx++)));
        for (const int n : {3, 4}) {
            const auto words = word_inventory(corpus, n).words();
            if (words.size() < 3) continue;
            const Matrix reps = rep_matrix(net, words, exec);
            TraceReport::Row row;
            row.encoding = enc;
            row.word_len = n;
            row.n_words = static_cast<int>(words.size());
            for (int k = 0; k < n; ++k) {
                std::vector<double> targets(words.size());
                for (std::size_t i = 0; i < words.size(); ++i)
                    targets[i] = static_cast<double>(words[i].intervals[static_cast<std::size_t>(k)].semitones);
                const auto r2 = multiple_r_squared(reps, targets);
                row.r2.push_back(r2.value_or(std::numeric_limits<double>::quiet_NaN()));
            }
            rep.rows.push_back(std::move(row));
        }
    }
    return rep;
}

// ---------------------------------------------------------------- study 1.3

PrimacyReport study1_primacy(const Corpus& corpus, const IntervalWord& word, int runs, std::uint64_t seed, Exec exec) {
    const Hyperparams hp;
    PrimacyReport rep;
    rep.word = word.labels();
    const Song chained = concatenate(corpus);
    const MoveResult moved = move_word_to_front(chained, word);
    rep.occurrences_moved = moved.moved;
    const Corpus baseline{{chained}};
    const Corpus relocated{{moved.sequence}};

    const auto words2 = word_inventory(baseline, 2).words();
    const auto word_idx = static_cast<std::size_t>(
        std::distance(words2.begin(), std::find_if(words2.begin(), words2.end(), [&](const IntervalWord& w) {
                          return w.labels() == rep.word;
                      })));
    if (word_idx == words2.size()) throw DataError("primacy word " + rep.word + " does not occur in the corpus");

    rep.baseline_errors.resize(static_cast<std::size_t>(runs));
    rep.relocated_errors.resize(static_cast<std::size_t>(runs));
    std::vector<std::vector<double>> all_baseline(static_cast<std::size_t>(runs));
    parallel_for(exec, runs, [&](std::ptrdiff_t r) {
        const std::uint64_t rs = derive_seed(seed, static_cast<std::uint64_t>(r));
        const AnyNet base_net = AnyNet::train(ModelKind::Tracx2, baseline, Encoding::Ordinal, hp, hp.epochs, rs);
        all_baseline[static_cast<std::size_t>(r)] = score_words(base_net, words2, Exec::Serial);
        rep.baseline_errors[static_cast<std::size_t>(r)] = all_baseline[static_cast<std::size_t>(r)][word_idx];
        const AnyNet relo_net = AnyNet::train(ModelKind::Tracx2, relocated, Encoding::Ordinal, hp, hp.epochs, rs);
        rep.relocated_errors[static_cast<std::size_t>(r)] = relo_net.word_error(word);
    });
    rep.baseline_mean = mean(rep.baseline_errors);
    rep.relocated_mean = mean(rep.relocated_errors);

    const auto inv = word_inventory(baseline, 2);
    std::vector<double> freqs(words2.size()), mean_errs(words2.size(), 0.0);
    for (std::size_t i = 0; i < words2.size(); ++i) freqs[i] = inv.counts.at(words2[i].labels());
    for (const auto& run : all_baseline)
        for (std::size_t i = 0; i < words2.size(); ++i) mean_errs[i] += run[i];
    for (auto& e : mean_errs) e /= static_cast<double>(runs);
    rep.freq_error_r = pearson(freqs, mean_errs);
    return rep;
}

// ---------------------------------------------------------------- study 2

const PriorLearningReport::Cell& PriorLearningReport::cell(ModelKind m, const std::string& regime) const {
    for (const auto& c : cells)
        if (c.model == m && c.regime == regime) return c;
    throw DataError("prior-learning cell not found: " + to_string(m) + "/" + regime);
}

PriorLearningReport study2_prior_learning(const Corpus& corpus, const Song& test_melody,
                                          const std::vector<ModelKind>& models, int runs, std::uint64_t seed,
                                          Exec exec) {
    const Hyperparams hp;
    // one fixed scramble per regime; replicate runs vary weights and song order
    const std::vector<std::pair<std::string, Corpus>> regimes = {
        {kPriorRegimes[0], corpus},
        {kPriorRegimes[1], permute_within_song(corpus, derive_seed(seed, 901))},
        {kPriorRegimes[2], permute_global(corpus, derive_seed(seed, 902))},
        {kPriorRegimes[3], full_random(corpus, derive_seed(seed, 903))},
    };

    // test words: every 3-word of the held-out melody absent from all
    // training variants
    const Corpus test_corpus{{test_melody}};
    const auto test_inv = word_inventory(test_corpus, 3);
    std::set<std::string> excluded;
    for (const auto& [name, c] : regimes)
        for (const auto& [w, cnt] : word_inventory(c, 3).counts) excluded.insert(w);
    std::vector<IntervalWord> test_words;
    PriorLearningReport rep;
    for (const auto& [w, cnt] : test_inv.counts) {
        if (!excluded.count(w)) {
            test_words.push_back(IntervalWord::from_labels(w));
            rep.test_words.push_back(w);
        }
    }
    if (test_words.empty())
        throw DataError("study2_prior_learning: every test-melody 3-word occurs in a training variant");

    for (std::size_t mi = 0; mi < models.size(); ++mi) {
        for (std::size_t gi = 0; gi <= regimes.size(); ++gi) { // last slot = no training
            PriorLearningReport::Cell cell;
            cell.model = models[mi];
            cell.regime = gi < regimes.size() ? regimes[gi].first : kPriorRegimes[4];
            cell.run_means.resize(static_cast<std::size_t>(runs));
            parallel_for(exec, runs, [&](std::ptrdiff_t r) {
                const std::uint64_t rs = derive_seed(seed, 10000 + (mi * 8 + gi) * 1000 + static_cast<std::uint64_t>(r));
                const AnyNet net = gi < regimes.size()
                                       ? AnyNet::train(models[mi], regimes[gi].second, Encoding::Ordinal, hp,
                                                       hp.epochs, rs)
                                       : AnyNet::untrained(models[mi], Encoding::Ordinal, hp, rs);
                const auto errs = score_words(net, test_words, Exec::Serial);
                cell.run_means[static_cast<std::size_t>(r)] = mean(errs);
            });
            cell.mean = mean(cell.run_means);
            cell.sem = sem(cell.run_means);
            rep.cells.push_back(std::move(cell));
        }
    }
    return rep;
}

UnheardReport study2_unheard_categories(const Corpus& corpus, const std::vector<ModelKind>& models,
                                        std::uint64_t seed, Exec exec) {
    const Hyperparams hp;
    const auto inv = word_inventory(corpus, 3);
    const auto inv_words = inv.words();
    UnheardReport rep;
    for (std::size_t mi = 0; mi < models.size(); ++mi) {
        UnheardReport::PerModel pm;
        pm.model = models[mi];
        const AnyNet net =
            AnyNet::train(models[mi], corpus, Encoding::Ordinal, hp, hp.epochs, derive_seed(seed, 100 + mi));
        const auto inv_errors = score_words(net, inv_words, exec);
        std::map<std::string, double> error_map;
        for (std::size_t i = 0; i < inv_words.size(); ++i) error_map[inv_words[i].labels()] = inv_errors[i];
        pm.sets = unheard_word_sets(inv, error_map, derive_seed(seed, 200 + mi));
        pm.err_far = score_words(net, pm.sets.far, exec);
        pm.err_near_unfam = score_words(net, pm.sets.near_unfamiliar, exec);
        pm.err_near_fam = score_words(net, pm.sets.near_familiar, exec);
        pm.mean_far = mean(pm.err_far);
        pm.mean_near_unfam = mean(pm.err_near_unfam);
        pm.mean_near_fam = mean(pm.err_near_fam);
        pm.anova = oneway_anova({pm.err_far, pm.err_near_unfam, pm.err_near_fam});
        const std::vector<std::pair<const std::vector<double>*, const std::vector<double>*>> pairs = {
            {&pm.err_far, &pm.err_near_unfam}, {&pm.err_far, &pm.err_near_fam}, {&pm.err_near_unfam, &pm.err_near_fam}};
        for (const auto& [a, b] : pairs) {
            TestResult t = unpaired_t(*a, *b);
            t.p = bonferroni(t.p, static_cast<int>(pairs.size()));
            t.note = "Bonferroni-corrected pairwise t";
            pm.posthoc.push_back(std::move(t));
        }
        rep.models.push_back(std::move(pm));
    }
    return rep;
}

// ---------------------------------------------------------------- study 3

ContourReport study3_contour(const Corpus& corpus, int n_words, std::uint64_t seed, Exec exec) {
    const Hyperparams hp;
    ContourReport rep;
    Rng word_rng(derive_seed(seed, 1));
    rep.words = random_3words(n_words, word_rng);

    const auto add = [&](const std::string& name, const AnyNet& net) {
        const Matrix reps = rep_matrix(net, rep.words, exec);
        rep.models.push_back({name, contour_study(reps, rep.words)});
    };
    add("tracx2", AnyNet::train(ModelKind::Tracx2, corpus, Encoding::Ordinal, hp, hp.epochs, derive_seed(seed, 10)));
    add("rae", AnyNet::train(ModelKind::Rae, corpus, Encoding::Ordinal, hp, hp.epochs, derive_seed(seed, 11)));
    add("srn", AnyNet::train(ModelKind::Srn, corpus, Encoding::Ordinal, hp, hp.epochs, derive_seed(seed, 12)));
    add("untrained", AnyNet::untrained(ModelKind::Tracx2, Encoding::Ordinal, hp, derive_seed(seed, 13)));
    return rep;
}

// ---------------------------------------------------------------- study 4

SaffranDesign saffran_design(const std::string& variant) {
    SaffranDesign design;
    design.variant = variant;
    if (variant == "original") {
        design.words = {"fv", "un", "hs", "nl", "nn", "pl"};
        design.partwords = {"gv", "pn", "ls", "nq", "nw"};
        design.groupings.push_back({"pn-as-xb", {"gv", "pn", "ls"}, {"nq", "nw"}});
        design.groupings.push_back({"pn-as-ax", {"gv", "ls"}, {"pn", "nq", "nw"}});
    } else if (variant == "repaired") {
        design.words = {"fv", "un", "hs", "dy", "mt", "pl"};
        design.partwords = {"gv", "wn", "rs", "db", "mo", "pq"};
        design.groupings.push_back({"repaired", {"gv", "wn", "rs"}, {"db", "mo", "pq"}});
    } else {
        throw DataError("unknown Saffran variant: " + variant);
    }
    return design;
}

SaffranReport study4_saffran(const std::string& variant, ModelKind model, int runs, int epochs, std::uint64_t seed,
                             Exec exec) {
    const Hyperparams hp;
    SaffranReport rep;
    rep.design = saffran_design(variant);
    rep.model = model;
    rep.runs = runs;
    rep.epochs = epochs;
    std::vector<IntervalWord> words, partwords;
    for (const auto& w : rep.design.words) words.push_back(IntervalWord::from_labels(w));
    for (const auto& w : rep.design.partwords) partwords.push_back(IntervalWord::from_labels(w));

    rep.errors = Matrix(runs, static_cast<int>(partwords.size()));
    parallel_for(exec, runs, [&](std::ptrdiff_t r) {
        // a fresh stream per run
        const SaffranStream stream = saffran_stream(words, 6, 18, derive_seed(seed, 500 + static_cast<std::uint64_t>(r)));
        const Corpus stream_corpus{{stream.song}};
        const AnyNet net = AnyNet::train(model, stream_corpus, Encoding::Ordinal, hp, epochs,
                                         derive_seed(seed, 100 + static_cast<std::uint64_t>(r)));
        const auto errs = score_words(net, partwords, Exec::Serial);
        for (std::size_t i = 0; i < errs.size(); ++i) rep.errors.at(static_cast<int>(r), static_cast<int>(i)) = errs[i];
    });

    const auto col_of = [&](const std::string& w) {
        for (std::size_t i = 0; i < rep.design.partwords.size(); ++i)
            if (rep.design.partwords[i] == w) return static_cast<int>(i);
        throw DataError("part-word not scored: " + w);
    };
    for (const auto& g : rep.design.groupings) {
        SaffranReport::GroupingResult res;
        res.name = g.name;
        res.xb_run_means.resize(static_cast<std::size_t>(runs));
        res.ax_run_means.resize(static_cast<std::size_t>(runs));
        long comparisons = 0, xb_better = 0;
        for (int r = 0; r < runs; ++r) {
            double xs = 0.0, as = 0.0;
            for (const auto& w : g.xb) xs += rep.errors.at(r, col_of(w));
            for (const auto& w : g.ax) as += rep.errors.at(r, col_of(w));
            res.xb_run_means[static_cast<std::size_t>(r)] = xs / static_cast<double>(g.xb.size());
            res.ax_run_means[static_cast<std::size_t>(r)] = as / static_cast<double>(g.ax.size());
            for (const auto& wx : g.xb)
                for (const auto& wa : g.ax) {
                    ++comparisons;
                    if (rep.errors.at(r, col_of(wx)) < rep.errors.at(r, col_of(wa))) ++xb_better;
                }
        }
        res.t = paired_t(res.xb_run_means, res.ax_run_means);
        long runs_better = 0;
        for (int r = 0; r < runs; ++r)
            if (res.xb_run_means[static_cast<std::size_t>(r)] < res.ax_run_means[static_cast<std::size_t>(r)]) ++runs_better;
        res.frac_runs_xb_better = static_cast<double>(runs_better) / static_cast<double>(runs);
        res.frac_comparisons_xb_better = static_cast<double>(xb_better) / static_cast<double>(comparisons);
        rep.groupings.push_back(std::move(res));
    }
    return rep;
}

RepAsymmetryReport study4_internal_reps(const Corpus& corpus, const std::vector<ModelKind>& models,
                                        std::uint64_t seed, Exec exec) {
    const Hyperparams hp;
    RepAsymmetryReport rep;
    const auto words3 = word_inventory(corpus, 3).words();
    for (std::size_t mi = 0; mi < models.size(); ++mi) {
        const AnyNet net =
            AnyNet::train(models[mi], corpus, Encoding::Ordinal, hp, hp.epochs, derive_seed(seed, 100 + mi));
        std::vector<double> begin_d(words3.size()), end_d(words3.size());
        parallel_for(exec, static_cast<std::ptrdiff_t>(words3.size()), [&](std::ptrdiff_t i) {
            const auto& w = words3[static_cast<std::size_t>(i)];
            const IntervalWord head({w.intervals[0], w.intervals[1]});
            const IntervalWord tail({w.intervals[1], w.intervals[2]});
            const ActVector full = net.hidden_rep(w);
            const ActVector h_head = net.hidden_rep(head);
            const ActVector h_tail = net.hidden_rep(tail);
            begin_d[static_cast<std::size_t>(i)] = cityblock(full, h_head);
            end_d[static_cast<std::size_t>(i)] = cityblock(full, h_tail);
        });
        RepAsymmetryReport::PerModel pm;
        pm.model = models[mi];
        pm.n_words = static_cast<int>(words3.size());
        pm.mean_begin_dist = mean(begin_d);
        pm.mean_end_dist = mean(end_d);
        long closer = 0;
        for (std::size_t i = 0; i < words3.size(); ++i)
            if (end_d[i] < begin_d[i]) ++closer;
        pm.frac_end_closer = static_cast<double>(closer) / static_cast<double>(words3.size());
        rep.models.push_back(pm);
    }
    return rep;
}

// ---------------------------------------------------------------- CSV output

void write_cluster_csv(const ClusterReport& r, const std::string& dir) {
    CsvWriter points({"word", "class", "pc1", "pc2"});
    for (const auto& p : r.points) points.add_row({p.word, p.cls, fmt9(p.pc1), fmt9(p.pc2)});
    points.write_atomic(join(dir, "pca_clusters.csv"));

    CsvWriter summary({"key", "value"});
    summary.add_row({"model", r.model});
    summary.add_row({"encoding", to_string(r.encoding)});
    summary.add_row({"explained_pc1", fmt9(r.explained_pc1)});
    summary.add_row({"explained_pc2", fmt9(r.explained_pc2)});
    summary.add_row({"within_class_mean", fmt9(r.within_class_mean)});
    summary.add_row({"between_class_mean", fmt9(r.between_class_mean)});
    summary.add_row({"mean_silhouette", fmt9(r.mean_silhouette)});
    for (const auto& [cls, v] : r.flat_class_monotonicity) summary.add_row({"monotonicity_" + cls, fmt9(v)});
    summary.write_atomic(join(dir, "pca_clusters_summary.csv"));
}

void write_trace_csv(const TraceReport& r, const std::string& dir) {
    CsvWriter csv({"encoding", "word_len", "n_words", "r2_i1", "r2_i2", "r2_i3", "r2_i4"});
    for (const auto& row : r.rows) {
        std::vector<std::string> fields = {to_string(row.encoding), std::to_string(row.word_len),
                                           std::to_string(row.n_words)};
        for (int k = 0; k < 4; ++k)
            fields.push_back(k < static_cast<int>(row.r2.size()) ? fmt9(row.r2[static_cast<std::size_t>(k)]) : "");
        csv.add_row(fields);
    }
    csv.write_atomic(join(dir, "table1.csv"));
}

void write_primacy_csv(const PrimacyReport& r, const std::string& dir) {
    CsvWriter runs({"run", "baseline_error", "relocated_error"});
    for (std::size_t i = 0; i < r.baseline_errors.size(); ++i)
        runs.add_row({std::to_string(i), fmt9(r.baseline_errors[i]), fmt9(r.relocated_errors[i])});
    runs.write_atomic(join(dir, "primacy_runs.csv"));

    CsvWriter summary({"key", "value"});
    summary.add_row({"word", r.word});
    summary.add_row({"occurrences_moved", std::to_string(r.occurrences_moved)});
    summary.add_row({"baseline_mean", fmt9(r.baseline_mean)});
    summary.add_row({"relocated_mean", fmt9(r.relocated_mean)});
    if (r.freq_error_r) summary.add_row({"freq_error_r", fmt9(*r.freq_error_r)});
    summary.write_atomic(join(dir, "primacy_summary.csv"));
}

void write_prior_csv(const PriorLearningReport& r, const std::string& dir) {
    CsvWriter runs({"model", "regime", "run", "mean_test_error"});
    CsvWriter summary({"model", "regime", "mean", "sem"});
    for (const auto& c : r.cells) {
        for (std::size_t i = 0; i < c.run_means.size(); ++i)
            runs.add_row({to_string(c.model), c.regime, std::to_string(i), fmt9(c.run_means[i])});
        summary.add_row({to_string(c.model), c.regime, fmt9(c.mean), fmt9(c.sem)});
    }
    runs.write_atomic(join(dir, "prior_learning_runs.csv"));
    summary.write_atomic(join(dir, "prior_learning_summary.csv"));

    CsvWriter words({"test_word"});
    for (const auto& w : r.test_words) words.add_row({w});
    words.write_atomic(join(dir, "prior_learning_test_words.csv"));
}

void write_unheard_csv(const UnheardReport& r, const std::string& dir) {
    CsvWriter words({"model", "category", "word", "error"});
    CsvWriter summary({"model", "mean_far", "mean_near_unfamiliar", "mean_near_familiar", "F", "df1", "df2", "p",
                       "partial_eta_sq", "p_far_nu", "p_far_nf", "p_nu_nf"});
    for (const auto& pm : r.models) {
        const auto emit = [&](const char* cat, const std::vector<IntervalWord>& ws, const std::vector<double>& es) {
            for (std::size_t i = 0; i < ws.size(); ++i)
                words.add_row({to_string(pm.model), cat, ws[i].labels(), fmt9(es[i])});
        };
        emit("far", pm.sets.far, pm.err_far);
        emit("near-unfamiliar", pm.sets.near_unfamiliar, pm.err_near_unfam);
        emit("near-familiar", pm.sets.near_familiar, pm.err_near_fam);
        summary.add_row({to_string(pm.model), fmt9(pm.mean_far), fmt9(pm.mean_near_unfam), fmt9(pm.mean_near_fam),
                         fmt9(pm.anova.statistic), fmt9(pm.anova.df1), fmt9(pm.anova.df2), fmt9(pm.anova.p),
                         fmt9(pm.anova.effect), fmt9(pm.posthoc[0].p), fmt9(pm.posthoc[1].p), fmt9(pm.posthoc[2].p)});
    }
    words.write_atomic(join(dir, "unheard_words.csv"));
    summary.write_atomic(join(dir, "unheard_summary.csv"));
}

void write_contour_csv(const ContourReport& r, const std::string& dir) {
    CsvWriter triplets({"model", "d1", "d2", "d3", "pairs_same", "pairs_diff", "mean_same", "mean_diff", "p_raw",
                        "p_bonferroni", "scored"});
    CsvWriter summary({"model", "scored_triplets", "frac_expected_direction", "frac_significant"});
    for (const auto& pm : r.models) {
        for (const auto& t : pm.result.triplets) {
            if (t.pairs_same + t.pairs_diff == 0) continue;
            triplets.add_row({pm.model, std::to_string(t.mdist[0]), std::to_string(t.mdist[1]),
                              std::to_string(t.mdist[2]), std::to_string(t.pairs_same), std::to_string(t.pairs_diff),
                              fmt9(t.mean_same), fmt9(t.mean_diff), fmt9(t.p_raw), fmt9(t.p_bonferroni),
                              t.scored ? "1" : "0"});
        }
        summary.add_row({pm.model, std::to_string(pm.result.scored_triplets),
                         fmt9(pm.result.fraction_expected_direction), fmt9(pm.result.fraction_significant)});
    }
    triplets.write_atomic(join(dir, "contour_triplets.csv"));
    summary.write_atomic(join(dir, "contour_summary.csv"));
}

void write_saffran_csv(const SaffranReport& r, const std::string& dir) {
    CsvWriter runs({"run", "partword", "error"});
    for (int run = 0; run < r.runs; ++run)
        for (std::size_t i = 0; i < r.design.partwords.size(); ++i)
            runs.add_row({std::to_string(run), r.design.partwords[i], fmt9(r.errors.at(run, static_cast<int>(i)))});
    runs.write_atomic(join(dir, "saffran_runs.csv"));

    CsvWriter summary({"grouping", "xb_mean", "ax_mean", "t", "df", "p", "cohens_d", "frac_runs_xb_better",
                       "frac_comparisons_xb_better"});
    for (const auto& g : r.groupings)
        summary.add_row({g.name, fmt9(mean(g.xb_run_means)), fmt9(mean(g.ax_run_means)), fmt9(g.t.statistic),
                         fmt9(g.t.df1), fmt9(g.t.p), fmt9(g.t.effect), fmt9(g.frac_runs_xb_better),
                         fmt9(g.frac_comparisons_xb_better)});
    summary.write_atomic(join(dir, "saffran_summary.csv"));
}

void write_reps_csv(const RepAsymmetryReport& r, const std::string& dir) {
    CsvWriter csv({"model", "n_words", "mean_begin_dist", "mean_end_dist", "frac_end_closer"});
    for (const auto& pm : r.models)
        csv.add_row({to_string(pm.model), std::to_string(pm.n_words), fmt9(pm.mean_begin_dist),
                     fmt9(pm.mean_end_dist), fmt9(pm.frac_end_closer)});
    csv.write_atomic(join(dir, "rep_asymmetry.csv"));
}

} // namespace tracx

#include "tracx/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "tracx/melody.hpp"

namespace tracx {

std::size_t Corpus::total_intervals() const {
    std::size_t n = 0;
    for (const auto& s : songs) n += s.intervals.size();
    return n;
}

Corpus load_corpus(const std::string& manifest_path) {
    std::ifstream f(manifest_path);
    if (!f) throw DataError("cannot open corpus manifest: " + manifest_path);
    std::string dir;
    if (const auto slash = manifest_path.find_last_of("/\\"); slash != std::string::npos)
        dir = manifest_path.substr(0, slash + 1);
    Corpus corpus;
    std::string line;
    while (std::getline(f, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const std::string path = (line[0] == '/') ? line : dir + line;
        Melody m = load_melody(path);
        if (m.intervals.empty()) throw DataError("song has no intervals: " + path);
        corpus.songs.push_back(Song{m.name, std::move(m.intervals)});
    }
    if (corpus.songs.empty()) throw DataError("empty corpus manifest: " + manifest_path);
    return corpus;
}

std::size_t WordInventory::total_windows() const {
    std::size_t t = 0;
    for (const auto& [w, c] : counts) t += static_cast<std::size_t>(c);
    return t;
}

std::vector<IntervalWord> WordInventory::words() const {
    std::vector<IntervalWord> out;
    out.reserve(counts.size());
    for (const auto& [labels, c] : counts) out.push_back(IntervalWord::from_labels(labels));
    return out;
}

WordInventory word_inventory(const Corpus& corpus, int n) {
    if (n < 1) throw DataError("word length must be >= 1");
    WordInventory inv;
    inv.n = n;
    std::string key(static_cast<std::size_t>(n), ' ');
    for (const auto& song : corpus.songs) {
        if (static_cast<int>(song.intervals.size()) < n) continue;
        for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= song.intervals.size(); ++i) {
            for (int j = 0; j < n; ++j) key[static_cast<std::size_t>(j)] = song.intervals[i + static_cast<std::size_t>(j)].label();
            ++inv.counts[key];
        }
    }
    return inv;
}

TpTable::TpTable(const Corpus& corpus) {
    for (const auto& song : corpus.songs) {
        for (std::size_t i = 0; i + 1 < song.intervals.size(); ++i) {
            const auto a = static_cast<std::size_t>(song.intervals[i].semitones - kMinSemitones);
            const auto b = static_cast<std::size_t>(song.intervals[i + 1].semitones - kMinSemitones);
            ++bigram_[a][b];
            ++antecedent_[a];
        }
    }
}

TpTable::Tp TpTable::tp(Interval a, Interval b) const {
    const auto ia = static_cast<std::size_t>(a.semitones - kMinSemitones);
    const auto ib = static_cast<std::size_t>(b.semitones - kMinSemitones);
    if (antecedent_[ia] == 0) return {0.0, false};
    return {static_cast<double>(bigram_[ia][ib]) / static_cast<double>(antecedent_[ia]), true};
}

TpTable::Tp TpTable::avg_tp(const IntervalWord& word) const {
    if (word.size() < 2) throw DataError("avg_tp needs a word of length >= 2");
    double sum = 0.0;
    bool all_defined = true;
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
        const Tp t = tp(word.intervals[i], word.intervals[i + 1]);
        sum += t.value;
        all_defined = all_defined && t.defined;
    }
    return {sum / static_cast<double>(word.size() - 1), all_defined};
}

Corpus permute_within_song(const Corpus& corpus, std::uint64_t seed) {
    Rng rng(seed);
    Corpus out = corpus;
    for (auto& song : out.songs) rng.shuffle(song.intervals);
    return out;
}

Corpus permute_global(const Corpus& corpus, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Interval> pool;
    pool.reserve(corpus.total_intervals());
    for (const auto& song : corpus.songs) pool.insert(pool.end(), song.intervals.begin(), song.intervals.end());
    rng.shuffle(pool);
    Corpus out = corpus;
    std::size_t pos = 0;
    for (auto& song : out.songs) {
        for (auto& iv : song.intervals) iv = pool[pos++];
    }
    return out;
}

Corpus full_random(const Corpus& corpus, std::uint64_t seed) {
    Rng rng(seed);
    Corpus out = corpus;
    for (auto& song : out.songs)
        for (auto& iv : song.intervals) iv = Interval(rng.int_range(kMinSemitones, kMaxSemitones));
    return out;
}

Song concatenate(const Corpus& corpus) {
    Song s;
    s.name = "concatenation";
    s.intervals.reserve(corpus.total_intervals());
    for (const auto& song : corpus.songs) s.intervals.insert(s.intervals.end(), song.intervals.begin(), song.intervals.end());
    return s;
}

MoveResult move_word_to_front(const Song& sequence, const IntervalWord& word) {
    if (word.size() != 2) throw DataError("move_word_to_front expects a 2-interval word");
    const auto& seq = sequence.intervals;
    std::vector<bool> taken(seq.size(), false);
    int moved = 0;
    for (std::size_t i = 0; i + 1 < seq.size();) {
        if (seq[i] == word.intervals[0] && seq[i + 1] == word.intervals[1]) {
            taken[i] = taken[i + 1] = true;
            ++moved;
            i += 2;
        } else {
            ++i;
        }
    }
    MoveResult res;
    res.moved = moved;
    res.sequence.name = sequence.name + "+front:" + word.labels();
    if (moved == 0) {
        res.sequence.intervals = seq;
        return res;
    }
    res.sequence.intervals.reserve(seq.size());
    for (int k = 0; k < moved; ++k) {
        res.sequence.intervals.push_back(word.intervals[0]);
        res.sequence.intervals.push_back(word.intervals[1]);
    }
    for (std::size_t i = 0; i < seq.size(); ++i)
        if (!taken[i]) res.sequence.intervals.push_back(seq[i]);
    return res;
}

SaffranStream saffran_stream(const std::vector<IntervalWord>& words, int blocks, int words_per_block,
                             std::uint64_t seed) {
    if (words.size() < 2) throw DataError("saffran_stream needs at least 2 distinct words");
    Rng rng(seed);
    SaffranStream out;
    const int total = blocks * words_per_block;
    out.tokens.reserve(static_cast<std::size_t>(total));
    int prev = -1;
    for (int i = 0; i < total; ++i) {
        int pick;
        do {
            pick = static_cast<int>(rng.below(words.size()));
        } while (pick == prev);
        out.tokens.push_back(pick);
        prev = pick;
    }
    out.song.name = "saffran-stream";
    for (int t : out.tokens) {
        const auto& w = words[static_cast<std::size_t>(t)];
        out.song.intervals.insert(out.song.intervals.end(), w.intervals.begin(), w.intervals.end());
    }
    return out;
}

bool is_singable(const std::vector<int>& steps) {
    for (int s : steps)
        if (s < -12 || s > 12) return false;
    for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
        const int a = steps[i], b = steps[i + 1];
        if (a > 0 && b > 0 && a + b > 12) return false;
        if (a < 0 && b < 0 && a + b < -12) return false;
    }
    return true;
}

std::vector<IntervalWord> random_3words(int count, Rng& rng) {
    if (count < 1) throw DataError("random_3words needs count >= 1");
    std::vector<IntervalWord> out;
    out.reserve(static_cast<std::size_t>(count));
    std::vector<int> steps(3);
    while (static_cast<int>(out.size()) < count) {
        for (auto& s : steps) s = rng.int_range(-12, 12);
        if (!is_singable(steps)) continue;
        out.push_back(IntervalWord::from_semitones(steps));
    }
    return out;
}

int chebyshev(const IntervalWord& a, const IntervalWord& b) {
    if (a.size() != b.size()) throw DataError("chebyshev needs equal-length words");
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, std::abs(a.intervals[i].semitones - b.intervals[i].semitones));
    return d;
}

std::vector<int> mdist(const IntervalWord& a, const IntervalWord& b) {
    if (a.size() != b.size()) throw DataError("mdist needs equal-length words");
    std::vector<int> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        d[i] = std::abs(a.intervals[i].semitones - b.intervals[i].semitones);
    return d;
}

std::string contour(const IntervalWord& word) {
    std::string c;
    c.reserve(word.size());
    for (const auto& iv : word.intervals)
        c.push_back(iv.semitones > 0 ? 'R' : (iv.semitones < 0 ? 'F' : '='));
    return c;
}

UnheardWordSets unheard_word_sets(const WordInventory& inventory, const std::map<std::string, double>& word_errors,
                                  std::uint64_t seed, int set_size, long attempt_budget) {
    if (inventory.n != 3) throw DataError("unheard_word_sets expects a 3-interval inventory");
    if (inventory.counts.size() < 2) throw DataError("unheard_word_sets: inventory too small to define categories");
    std::vector<IntervalWord> known;
    std::vector<double> errors;
    for (const auto& [labels, c] : inventory.counts) {
        const auto it = word_errors.find(labels);
        if (it == word_errors.end()) throw DataError("word_errors is missing inventory word " + labels);
        known.push_back(IntervalWord::from_labels(labels));
        errors.push_back(it->second);
    }
    double mu = 0.0;
    for (double e : errors) mu += e;
    mu /= static_cast<double>(errors.size());
    double var = 0.0;
    for (double e : errors) var += (e - mu) * (e - mu);
    var /= static_cast<double>(errors.size() - 1);
    const double sd = std::sqrt(var);
    const double unfamiliar_cut = mu + 0.5 * sd;
    const double familiar_cut = mu - 0.5 * sd;

    UnheardWordSets out;
    out.error_mean = mu;
    out.error_sd = sd;
    Rng rng(seed);
    std::vector<int> steps(3);
    for (long attempt = 0; attempt < attempt_budget; ++attempt) {
        if (static_cast<int>(out.far.size()) == set_size && static_cast<int>(out.near_unfamiliar.size()) == set_size &&
            static_cast<int>(out.near_familiar.size()) == set_size)
            return out;
        for (auto& s : steps) s = rng.int_range(-12, 12);
        if (!is_singable(steps)) continue;
        IntervalWord cand = IntervalWord::from_semitones(steps);
        if (inventory.contains(cand.labels())) continue;
        int min_cheb = kAlphabetSize;
        bool near_unfam = false, near_fam_le1 = false, near_fam_eq1 = false;
        for (std::size_t k = 0; k < known.size(); ++k) {
            const int d = chebyshev(cand, known[k]);
            min_cheb = std::min(min_cheb, d);
            if (d == 1 && errors[k] > unfamiliar_cut) near_unfam = true;
            if (d <= 1 && errors[k] < familiar_cut) {
                near_fam_le1 = true;
                if (d == 1) near_fam_eq1 = true;
            }
        }
        if (min_cheb > 5) {
            if (static_cast<int>(out.far.size()) < set_size) out.far.push_back(cand);
        } else if (near_fam_eq1) {
            if (static_cast<int>(out.near_familiar.size()) < set_size) out.near_familiar.push_back(cand);
        } else if (near_unfam && !near_fam_le1) {
            if (static_cast<int>(out.near_unfamiliar.size()) < set_size) out.near_unfamiliar.push_back(cand);
        }
    }
    throw DataError("unheard_word_sets: attempt budget exhausted (far=" + std::to_string(out.far.size()) +
                    ", near-unfamiliar=" + std::to_string(out.near_unfamiliar.size()) +
                    ", near-familiar=" + std::to_string(out.near_familiar.size()) + ")");
}

} // namespace tracx

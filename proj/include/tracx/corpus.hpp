#ifndef TRACX_CORPUS_HPP
#define TRACX_CORPUS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tracx/interval.hpp"
#include "tracx/rng.hpp"

namespace tracx {

struct Song {
    std::string name;
    std::vector<Interval> intervals;
};

struct Corpus {
    std::vector<Song> songs;

    std::size_t total_intervals() const;
};

// Reads a manifest (one melody file path per line, '#' comments allowed;
// paths are relative to the manifest's directory) and parses every melody.
Corpus load_corpus(const std::string& manifest_path);

// Occurrence counts of all length-n interval words, sliding window, never
// crossing a song boundary. Keys are label strings.
struct WordInventory {
    int n = 0;
    std::map<std::string, int> counts;

    bool contains(const std::string& labels) const { return counts.count(labels) != 0; }
    std::size_t total_windows() const;
    std::vector<IntervalWord> words() const;
};

WordInventory word_inventory(const Corpus& corpus, int n);

// First-order transitional probabilities between successive intervals,
// counted within songs. TP(b|a) = count(ab) / count(a in non-final position).
class TpTable {
public:
    explicit TpTable(const Corpus& corpus);

    // 0 with defined=false when the antecedent never occurs non-finally.
    struct Tp {
        double value = 0.0;
        bool defined = false;
    };
    Tp tp(Interval a, Interval b) const;

    // mean of the n-1 consecutive TPs of a word; undefined antecedents are
    // flagged and contribute 0
    Tp avg_tp(const IntervalWord& word) const;

private:
    std::array<std::array<std::int64_t, kAlphabetSize>, kAlphabetSize> bigram_{};
    std::array<std::int64_t, kAlphabetSize> antecedent_{};
};

// The three corpus scrambles of the prior-learning study. Each preserves
// per-song lengths.
Corpus permute_within_song(const Corpus& corpus, std::uint64_t seed);
Corpus permute_global(const Corpus& corpus, std::uint64_t seed);
Corpus full_random(const Corpus& corpus, std::uint64_t seed);

// Chains all songs into one sequence (no break between songs).
Song concatenate(const Corpus& corpus);

struct MoveResult {
    Song sequence;
    int moved = 0; // occurrences relocated; 0 means the input came back unchanged
};

// Removes every non-overlapping occurrence of a 2-interval word (greedy
// left-to-right) and prepends them consecutively at the front.
MoveResult move_word_to_front(const Song& sequence, const IntervalWord& word);

struct SaffranStream {
    Song song;
    std::vector<int> tokens; // word index per slot, blocks * words_per_block entries
};

// Random concatenation of word tokens with no immediate repetition, across
// block boundaries included.
SaffranStream saffran_stream(const std::vector<IntervalWord>& words, int blocks, int words_per_block,
                             std::uint64_t seed);

// True when all intervals lie in [-12,12] and no two adjacent intervals of
// equal sign sum beyond +/-12 (the "singable" constraint).
bool is_singable(const std::vector<int>& steps);

// Uniform rejection sampling of singable 3-interval words.
std::vector<IntervalWord> random_3words(int count, Rng& rng);

int chebyshev(const IntervalWord& a, const IntervalWord& b);
std::vector<int> mdist(const IntervalWord& a, const IntervalWord& b);

// Per-interval sign pattern, one of 'R', 'F', '=' per position.
std::string contour(const IntervalWord& word);

struct UnheardWordSets {
    std::vector<IntervalWord> far;             // Cheb > 5 from every inventory word
    std::vector<IntervalWord> near_unfamiliar; // Cheb 1 from a poorly-learned word, not Cheb<=1 from a familiar one
    std::vector<IntervalWord> near_familiar;   // Cheb 1 from a well-learned word
    double error_mean = 0.0;
    double error_sd = 0.0;
};

// Generates the three 50-word sets of the unheard-word study against a map
// of per-word errors over the 3-interval inventory. Throws DataError if the
// attempt budget runs out before all sets fill.
UnheardWordSets unheard_word_sets(const WordInventory& inventory, const std::map<std::string, double>& word_errors,
                                  std::uint64_t seed, int set_size = 50, long attempt_budget = 2000000);

} // namespace tracx

#endif

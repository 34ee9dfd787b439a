#ifndef TRACX_INTERVAL_HPP
#define TRACX_INTERVAL_HPP

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tracx {

constexpr int kMinSemitones = -19;
constexpr int kMaxSemitones = 19;
constexpr int kAlphabetSize = 39; // one slot per semitone step in [-19, +19]
constexpr int kCodeLen = kAlphabetSize;
constexpr int kPairLen = 2 * kCodeLen;

// Raised on malformed melodies, out-of-range intervals, unknown letters.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when a numeric routine cannot produce a defined result.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The 39 interval labels: capitals A..G for -19..-13, lowercase a..y for
// -12..+12, capitals T..Z for +13..+19.
char label_of(int semitones);
int semitones_of(char label);
bool is_valid_label(char c);

// A signed semitone step between two successive notes.
struct Interval {
    int semitones = 0;

    Interval() = default;
    explicit Interval(int s);           // validates range
    static Interval from_label(char c); // validates alphabet

    char label() const { return label_of(semitones); }
    bool operator==(const Interval& o) const = default;
    auto operator<=>(const Interval& o) const = default;
};

// An ordered sequence of intervals (a "word").
struct IntervalWord {
    std::vector<Interval> intervals;

    IntervalWord() = default;
    explicit IntervalWord(std::vector<Interval> iv) : intervals(std::move(iv)) {}

    static IntervalWord from_labels(std::string_view labels);
    static IntervalWord from_semitones(const std::vector<int>& steps);

    std::size_t size() const { return intervals.size(); }
    std::string labels() const;
    bool operator==(const IntervalWord& o) const = default;
    auto operator<=>(const IntervalWord& o) const = default;
};

// Bipolar 39-element code vectors ({-1,+1} entries for pure codes).
using Code = std::array<double, kCodeLen>;
// Real-valued activations in [-1,1], same shape as a Code.
using ActVector = std::array<double, kCodeLen>;

// Thermometer code: k = semitones + 19, elements 0..k are +1, the rest -1.
// Hamming distance between two ordinal codes equals the semitone difference.
Code encode_ordinal(Interval iv);

// Single +1 at index semitones + 19.
Code encode_onehot(Interval iv);

int hamming(const Code& a, const Code& b);

enum class Encoding { Ordinal, OneHot };

Encoding encoding_from_string(std::string_view s);
std::string to_string(Encoding e);

// Precomputed codes for the whole alphabet.
class CodeBook {
public:
    explicit CodeBook(Encoding e);
    const Code& code(Interval iv) const { return codes_[static_cast<std::size_t>(iv.semitones - kMinSemitones)]; }
    Encoding encoding() const { return encoding_; }

private:
    Encoding encoding_;
    std::array<Code, kAlphabetSize> codes_;
};

} // namespace tracx

#endif

#include "tracx/interval.hpp"

#include <string>

namespace tracx {

namespace {
// index 0 -> -19 ... index 38 -> +19
constexpr std::string_view kAlphabet = "ABCDEFGabcdefghijklmnopqrstuvwxyTUVWXYZ";
static_assert(kAlphabet.size() == kAlphabetSize);
} // namespace

char label_of(int semitones) {
    if (semitones < kMinSemitones || semitones > kMaxSemitones)
        throw DataError("interval out of range [-19,19]: " + std::to_string(semitones));
    return kAlphabet[static_cast<std::size_t>(semitones - kMinSemitones)];
}

int semitones_of(char label) {
    const auto pos = kAlphabet.find(label);
    if (pos == std::string_view::npos)
        throw DataError(std::string("unknown interval letter: '") + label + "'");
    return static_cast<int>(pos) + kMinSemitones;
}

bool is_valid_label(char c) { return kAlphabet.find(c) != std::string_view::npos; }

Interval::Interval(int s) : semitones(s) {
    if (s < kMinSemitones || s > kMaxSemitones)
        throw DataError("interval out of range [-19,19]: " + std::to_string(s));
}

Interval Interval::from_label(char c) { return Interval(semitones_of(c)); }

IntervalWord IntervalWord::from_labels(std::string_view labels) {
    std::vector<Interval> iv;
    iv.reserve(labels.size());
    for (char c : labels) iv.push_back(Interval::from_label(c));
    return IntervalWord(std::move(iv));
}

IntervalWord IntervalWord::from_semitones(const std::vector<int>& steps) {
    std::vector<Interval> iv;
    iv.reserve(steps.size());
    for (int s : steps) iv.push_back(Interval(s));
    return IntervalWord(std::move(iv));
}

std::string IntervalWord::labels() const {
    std::string s;
    s.reserve(intervals.size());
    for (const auto& iv : intervals) s.push_back(iv.label());
    return s;
}

Code encode_ordinal(Interval iv) {
    Code c;
    const int k = iv.semitones - kMinSemitones;
    for (int i = 0; i < kCodeLen; ++i) c[static_cast<std::size_t>(i)] = (i <= k) ? 1.0 : -1.0;
    return c;
}

Code encode_onehot(Interval iv) {
    Code c;
    c.fill(-1.0);
    c[static_cast<std::size_t>(iv.semitones - kMinSemitones)] = 1.0;
    return c;
}

int hamming(const Code& a, const Code& b) {
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) ++d;
    return d;
}

Encoding encoding_from_string(std::string_view s) {
    if (s == "ordinal") return Encoding::Ordinal;
    if (s == "onehot") return Encoding::OneHot;
    throw DataError("unknown encoding: " + std::string(s));
}

std::string to_string(Encoding e) { return e == Encoding::Ordinal ? "ordinal" : "onehot"; }

CodeBook::CodeBook(Encoding e) : encoding_(e) {
    for (int s = kMinSemitones; s <= kMaxSemitones; ++s) {
        const auto idx = static_cast<std::size_t>(s - kMinSemitones);
        codes_[idx] = (e == Encoding::Ordinal) ? encode_ordinal(Interval(s)) : encode_onehot(Interval(s));
    }
}

} // namespace tracx

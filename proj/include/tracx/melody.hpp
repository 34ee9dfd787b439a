#ifndef TRACX_MELODY_HPP
#define TRACX_MELODY_HPP

#include <string>
#include <string_view>
#include <vector>

#include "tracx/interval.hpp"

namespace tracx {

// A parsed melody file: pitch numbers (60 = C4) plus the derived intervals.
struct Melody {
    std::string name;
    std::vector<int> pitches;
    std::vector<Interval> intervals;
};

// Parses the melody text format: whitespace-separated note names ("C4",
// "F#3", "Bb4") or integer pitch numbers; '#'-prefixed comment lines; an
// optional "# song: <name>" header. Throws DataError with file:line:col
// context on malformed tokens or intervals outside [-19,19].
Melody parse_melody(std::string_view text, std::string_view filename = "<melody>");

Melody load_melody(const std::string& path);

// Renders intervals back to a whitespace-separated label string.
std::string render_labels(const std::vector<Interval>& intervals);

} // namespace tracx

#endif

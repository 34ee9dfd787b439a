#include "tracx/melody.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace tracx {

namespace {

int letter_semitone(char c) {
    switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'C': return 0;
    case 'D': return 2;
    case 'E': return 4;
    case 'F': return 5;
    case 'G': return 7;
    case 'A': return 9;
    case 'B': return 11;
    default: return -1;
    }
}

[[noreturn]] void fail(std::string_view file, int line, int col, const std::string& msg) {
    std::ostringstream os;
    os << file << ":" << line << ":" << col << ": " << msg;
    throw DataError(os.str());
}

// "C4" -> 60. Accepts letter, optional # or b, octave (possibly negative).
int parse_note_token(const std::string& tok, std::string_view file, int line, int col) {
    if (tok.empty()) fail(file, line, col, "empty token");
    // bare integer = pitch number
    if (tok[0] == '-' || tok[0] == '+' || std::isdigit(static_cast<unsigned char>(tok[0]))) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            fail(file, line, col, "malformed pitch number '" + tok + "'");
        }
        if (used != tok.size()) fail(file, line, col, "malformed pitch number '" + tok + "'");
        return v;
    }
    const int base = letter_semitone(tok[0]);
    if (base < 0) fail(file, line, col, "malformed note '" + tok + "'");
    std::size_t i = 1;
    int accidental = 0;
    if (i < tok.size() && (tok[i] == '#' || tok[i] == 'b')) {
        accidental = (tok[i] == '#') ? 1 : -1;
        ++i;
    }
    if (i >= tok.size()) fail(file, line, col, "note '" + tok + "' is missing its octave");
    std::size_t used = 0;
    int octave = 0;
    try {
        octave = std::stoi(tok.substr(i), &used);
    } catch (const std::exception&) {
        fail(file, line, col, "malformed octave in '" + tok + "'");
    }
    if (i + used != tok.size()) fail(file, line, col, "trailing characters in note '" + tok + "'");
    return 12 * (octave + 1) + base + accidental; // 60 = C4
}

} // namespace

Melody parse_melody(std::string_view text, std::string_view filename) {
    Melody m;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    struct Tok {
        std::string text;
        int line, col;
    };
    std::vector<Tok> toks;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line[0] == '#') {
            const std::string_view header = "# song:";
            if (line.rfind(header, 0) == 0) {
                std::string name = line.substr(header.size());
                while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front()))) name.erase(name.begin());
                while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
                m.name = name;
            }
            continue;
        }
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            if (i >= line.size()) break;
            const std::size_t start = i;
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            toks.push_back({line.substr(start, i - start), lineno, static_cast<int>(start) + 1});
        }
    }
    m.pitches.reserve(toks.size());
    for (const auto& t : toks) m.pitches.push_back(parse_note_token(t.text, filename, t.line, t.col));
    for (std::size_t i = 1; i < m.pitches.size(); ++i) {
        const int step = m.pitches[i] - m.pitches[i - 1];
        if (step < kMinSemitones || step > kMaxSemitones) {
            fail(filename, toks[i].line, toks[i].col,
                 "interval " + std::to_string(step) + " between '" + toks[i - 1].text + "' and '" + toks[i].text +
                     "' is outside [-19,19]");
        }
        m.intervals.push_back(Interval(step));
    }
    return m;
}

Melody load_melody(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot open melody file: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    Melody m = parse_melody(os.str(), path);
    if (m.name.empty()) {
        // fall back to the file stem
        std::string stem = path;
        if (const auto slash = stem.find_last_of("/\\"); slash != std::string::npos) stem = stem.substr(slash + 1);
        if (const auto dot = stem.find_last_of('.'); dot != std::string::npos) stem = stem.substr(0, dot);
        m.name = stem;
    }
    return m;
}

std::string render_labels(const std::vector<Interval>& intervals) {
    std::string s;
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        if (i) s.push_back(' ');
        s.push_back(intervals[i].label());
    }
    return s;
}

} // namespace tracx

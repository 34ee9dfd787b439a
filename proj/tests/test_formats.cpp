#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "tracx/csv.hpp"
#include "tracx/svg.hpp"

using namespace tracx;

TEST_CASE("fmt9 gives 9 significant digits with no locale surprises") {
    CHECK(fmt9(0.125) == "0.125");
    CHECK(fmt9(1.0 / 3.0) == "0.333333333");
    CHECK(fmt9(-0.0092) == "-0.0092");
    CHECK(fmt9(101.9) == "101.9");
    CHECK(fmt9(1e-12) == "1e-12");
}

TEST_CASE("csv writer emits LF lines in column order") {
    CsvWriter csv({"word", "error"});
    csv.add_row({"mm", fmt9(0.17)});
    csv.add_row({"ok", fmt9(0.19)});
    CHECK(csv.str() == "word,error\nmm,0.17\nok,0.19\n");
    CHECK(csv.str().find('\r') == std::string::npos);
}

TEST_CASE("csv rejects ragged rows") {
    CsvWriter csv({"a", "b"});
    CHECK_THROWS(csv.add_row({"only-one"}));
}

TEST_CASE("atomic write leaves no temp file and replaces content") {
    const std::string path = "test_formats_atomic.tmp.csv";
    CsvWriter csv({"k"});
    csv.add_row({"1"});
    csv.write_atomic(path);
    {
        std::ifstream f(path);
        std::stringstream ss;
        ss << f.rdbuf();
        CHECK(ss.str() == "k\n1\n");
    }
    std::ifstream tmp(path + ".tmp");
    CHECK_FALSE(tmp.good());
    std::remove(path.c_str());
}

namespace {
// minimal well-formedness scan: tags balance and the file is a single svg element
bool svg_well_formed(const std::string& svg) {
    int depth = 0;
    std::size_t i = 0;
    bool seen_root = false;
    while (i < svg.size()) {
        if (svg[i] != '<') {
            ++i;
            continue;
        }
        const auto end = svg.find('>', i);
        if (end == std::string::npos) return false;
        const std::string tag = svg.substr(i, end - i + 1);
        if (tag.rfind("<?", 0) == 0) {
            // declaration
        } else if (tag.rfind("</", 0) == 0) {
            if (--depth < 0) return false;
        } else if (tag[tag.size() - 2] == '/') {
            if (depth == 0) return false; // self-closing outside root
        } else {
            ++depth;
            seen_root = true;
        }
        i = end + 1;
    }
    return depth == 0 && seen_root;
}
} // namespace

TEST_CASE("svg scatter is structurally well formed with one marker per point") {
    std::vector<ScatterPoint> pts;
    for (int i = 0; i < 84; ++i)
        pts.push_back({static_cast<double>(i % 7), static_cast<double>(i % 5), "w" + std::to_string(i),
                       i % 2 ? "RF" : "F="});
    const std::string svg = svg_scatter(pts, "clusters", "PC1", "PC2");
    CHECK(svg_well_formed(svg));
    std::size_t markers = 0, pos = 0;
    while ((pos = svg.find("<circle", pos)) != std::string::npos) {
        ++markers;
        pos += 7;
    }
    // one marker per word plus one legend dot per class
    CHECK(markers == 84 + 2);
    // identical input, identical output
    CHECK(svg == svg_scatter(pts, "clusters", "PC1", "PC2"));
}

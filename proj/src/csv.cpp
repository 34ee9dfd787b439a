#include "tracx/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "tracx/interval.hpp"

namespace tracx {

std::string fmt9(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) buf_.push_back(',');
        buf_ += header[i];
    }
    buf_.push_back('\n');
}

void CsvWriter::add_row(std::vector<std::string> fields) {
    if (fields.size() != width_) throw std::logic_error("csv row width mismatch");
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) buf_.push_back(',');
        buf_ += fields[i];
    }
    buf_.push_back('\n');
}

std::string CsvWriter::str() const { return buf_; }

void CsvWriter::write_atomic(const std::string& path) const { write_text_atomic(path, buf_); }

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw DataError("cannot open for writing: " + tmp);
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f) throw DataError("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw DataError("cannot rename into place: " + path);
}

} // namespace tracx

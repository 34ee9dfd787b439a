#ifndef TRACX_CSV_HPP
#define TRACX_CSV_HPP

#include <string>
#include <vector>

namespace tracx {

// Fixed float formatting for all emitted CSVs: 9 significant digits, C locale.
std::string fmt9(double v);

// Row-oriented CSV builder with stable output: caller-fixed column order,
// LF line endings, no quoting (fields must not contain commas or newlines).
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);

    void add_row(std::vector<std::string> fields);
    std::string str() const;

    // write-temp-then-rename so partially written files never appear
    void write_atomic(const std::string& path) const;

private:
    std::size_t width_;
    std::string buf_;
};

void write_text_atomic(const std::string& path, const std::string& content);

} // namespace tracx

#endif

#include "wom/csv.hpp"

#include <charconv>
#include <cmath>

namespace wom {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << '\n'; }

void CsvWriter::comment(const std::string& key, double value) { out_ << "# " << key << " = " << format_number(value) << '\n'; }

void CsvWriter::comment(const std::string& key, const std::string& value) { out_ << "# " << key << " = " << value << '\n'; }

void CsvWriter::header(const std::vector<std::string>& columns) { row_text(columns); }

void CsvWriter::row(const std::vector<double>& values, const std::string& trailing, bool has_trailing) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out_ << ',';
        out_ << format_number(values[i]);
    }
    if (has_trailing) out_ << ',' << trailing;
    out_ << '\n';
}

void CsvWriter::row_text(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
}

}  // namespace wom

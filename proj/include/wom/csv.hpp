#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace wom {

// Shortest decimal text that parses back to the same double; "nan", "inf", "-inf" otherwise.
std::string format_number(double v);

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void comment(const std::string& text);
    void comment(const std::string& key, double value);
    void comment(const std::string& key, const std::string& value);
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<double>& values, const std::string& trailing = {}, bool has_trailing = false);
    void row_text(const std::vector<std::string>& cells);

private:
    std::ostream& out_;
};

}  // namespace wom

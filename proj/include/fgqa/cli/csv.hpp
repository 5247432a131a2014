#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace fgqa::cli {

struct Column {
    std::string name;  // carries its unit suffix, e.g. J_K
    std::string description;
};

/// Shortest decimal form that parses back to the same double.
std::string format_number(double value);
/// RFC 4180 quoting: fields holding a comma, quote or line break are quoted
/// and inner quotes doubled.
std::string quote_field(std::string_view field);

// Writes a '#'-prefixed preamble, one comment line per column, the header
// row and then data rows. Line endings are CRLF-free ('\n').
class CsvWriter {
public:
    CsvWriter(std::ostream& out, std::vector<Column> columns, const std::vector<std::string>& preamble);

    void row(const std::vector<std::string>& fields);
    std::size_t rows_written() const { return rows_; }

private:
    std::ostream& out_;
    std::vector<Column> columns_;
    std::size_t rows_ = 0;
};

}  // namespace fgqa::cli

#include "fgqa/cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace fgqa::cli {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string quote_field(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

CsvWriter::CsvWriter(std::ostream& out, std::vector<Column> columns, const std::vector<std::string>& preamble)
    : out_(out), columns_(std::move(columns)) {
    for (const auto& line : preamble) out_ << "# " << line << '\n';
    for (const auto& c : columns_) out_ << "# column " << c.name << ": " << c.description << '\n';
    for (std::size_t k = 0; k < columns_.size(); ++k) {
        if (k) out_ << ',';
        out_ << quote_field(columns_[k].name);
    }
    out_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    if (fields.size() != columns_.size()) {
        throw std::logic_error("csv row has " + std::to_string(fields.size()) + " fields, expected " +
                               std::to_string(columns_.size()));
    }
    for (std::size_t k = 0; k < fields.size(); ++k) {
        if (k) out_ << ',';
        out_ << quote_field(fields[k]);
    }
    out_ << '\n';
    ++rows_;
}

}  // namespace fgqa::cli

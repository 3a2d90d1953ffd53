#include <charconv>
#include <stdexcept>
#include <system_error>

#include "greenstream/csv.hpp"

namespace greenstream {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{})
        throw std::runtime_error("double formatting failed");
    return std::string(buf, ptr);
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
    if (header.empty())
        throw std::invalid_argument("csv header must be non-empty");
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out_ += ',';
        out_ += header[i];
    }
    out_ += '\n';
}

void CsvWriter::begin_row() {
    if (row_open_)
        throw std::logic_error("csv row already open");
    row_open_ = true;
    in_row_ = 0;
}

void CsvWriter::add(const std::string& v) {
    if (!row_open_)
        throw std::logic_error("csv field outside a row");
    if (in_row_ >= columns_)
        throw std::logic_error("csv row wider than header");
    if (v.find_first_of(",\n\"") != std::string::npos)
        throw std::invalid_argument("csv field must not need quoting");
    if (in_row_) out_ += ',';
    out_ += v;
    ++in_row_;
}

void CsvWriter::add(double v) { add(format_double(v)); }

void CsvWriter::add(std::optional<double> v) {
    add(v ? format_double(*v) : std::string());
}

void CsvWriter::add(std::int64_t v) { add(std::to_string(v)); }
void CsvWriter::add(std::uint64_t v) { add(std::to_string(v)); }
void CsvWriter::add(int v) { add(std::to_string(v)); }

void CsvWriter::end_row() {
    if (!row_open_)
        throw std::logic_error("csv row not open");
    if (in_row_ != columns_)
        throw std::logic_error("csv row narrower than header");
    out_ += '\n';
    row_open_ = false;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    for (char c : text) {
        if (c == '\n') {
            row.push_back(field);
            field.clear();
            rows.push_back(std::move(row));
            row.clear();
        } else if (c == ',') {
            row.push_back(field);
            field.clear();
        } else if (c == '\r') {
            throw std::runtime_error("csv: carriage returns unsupported");
        } else {
            field += c;
        }
    }
    if (!field.empty() || !row.empty()) {
        row.push_back(field);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace greenstream

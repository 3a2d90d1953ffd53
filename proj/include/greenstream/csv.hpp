#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace greenstream {

// Deterministic, locale-independent CSV assembly. Doubles are written in
// shortest round-trip form via std::to_chars so identical values always
// produce identical bytes.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header);

    void begin_row();
    void add(double v);
    void add(std::optional<double> v); // absent -> empty field
    void add(std::int64_t v);
    void add(std::uint64_t v);
    void add(int v);
    void add(const std::string& v);
    void end_row();

    const std::string& str() const { return out_; }

  private:
    std::string out_;
    std::size_t columns_ = 0;
    std::size_t in_row_ = 0;
    bool row_open_ = false;
};

std::string format_double(double v);

// Minimal reader for the population round trip: splits on commas, validates
// a fixed header. Throws std::runtime_error on malformed input.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

} // namespace greenstream

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace abelint {

// RFC 4180 quoting: fields containing comma, quote or newline are wrapped in
// double quotes with embedded quotes doubled.
std::string csv_field(const std::string& raw);

// Locale-independent shortest round-trip formatting (std::to_chars).
std::string format_double(double v);
std::string format_int(std::int64_t v);

class CsvBuilder {
  public:
    explicit CsvBuilder(const std::vector<std::string>& header);
    void row(const std::vector<std::string>& fields);
    const std::string& str() const { return data_; }

  private:
    std::string data_;
    std::size_t width_;
};

// Writes through a temp file plus rename; interrupted runs never leave a
// truncated file at the target path.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

} // namespace abelint

#include "abelint/csvio.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include "abelint/errors.hpp"

namespace abelint {

std::string csv_field(const std::string& raw) {
    if (raw.find_first_of(",\"\n\r") == std::string::npos) return raw;
    std::string out = "\"";
    for (char c : raw) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_int(std::int64_t v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

CsvBuilder::CsvBuilder(const std::vector<std::string>& header) : width_(header.size()) {
    row(header);
}

void CsvBuilder::row(const std::vector<std::string>& fields) {
    if (fields.size() != width_)
        throw Error("csv row width mismatch: got " + std::to_string(fields.size()) + ", want " +
                    std::to_string(width_));
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) data_ += ',';
        data_ += csv_field(fields[i]);
    }
    data_ += '\n';
}

void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw Error("short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

} // namespace abelint

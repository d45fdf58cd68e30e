#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace stor {

/// Shortest decimal text that parses back to the same double; never locale-dependent.
std::string format_double(double value);

/// Strict locale-independent parse; the whole string must be consumed.
bool parse_double(std::string_view text, double& out);
bool parse_uint(std::string_view text, std::uint64_t& out);

std::vector<std::string> split_whitespace(std::string_view line);
std::vector<std::string> split(std::string_view text, char sep);
std::string_view trim(std::string_view text);

/// Minimal CSV emitter: a fixed header and rows of preformatted cells.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> cells);
    const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }
    const std::vector<std::string>& header() const noexcept { return header_; }

    void write(std::ostream& out) const;
    void write_file(const std::filesystem::path& path) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace stor

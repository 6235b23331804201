#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "kklcsd/analysis.hpp"
#include "kklcsd/grid.hpp"

namespace kklcsd {

// Plain comma-separated text with a mandatory header row. Numbers use the
// shortest decimal form that round-trips exactly, so files are diff-stable.

/// Shortest round-trip decimal representation.
std::string format_number(double value);

/// Parses a full-precision decimal; ConfigError on malformed text.
double parse_number(const std::string& text);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;

    std::size_t rows() const noexcept { return columns.empty() ? 0 : columns.front().size(); }
    /// Column by header name; ConfigError when absent.
    const std::vector<double>& column(const std::string& name) const;
};

void write_table(const std::filesystem::path& path, const Table& table);
Table read_table(const std::filesystem::path& path);

/// Field layout: header "t,<x_0>,...,<x_{n-1}>", one row per time.
void write_field_csv(const std::filesystem::path& path, const Grid& grid, const RowMatrix& values);

struct FieldCsv {
    std::vector<double> times;
    std::vector<double> sizes;
    RowMatrix values;
};
FieldCsv read_field_csv(const std::filesystem::path& path);

/// quantity,value,tolerance,pass
void write_checks_csv(const std::filesystem::path& path, const std::vector<CheckRow>& rows);

}  // namespace kklcsd

#include "kklcsd/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "kklcsd/errors.hpp"

namespace kklcsd {

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("csv: cannot open " + path.string() + " for writing");
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("csv: cannot open " + path.string());
    return in;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

std::string format_number(double value) {
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) throw Error("csv: cannot format number");
    return {buf.data(), end};
}

double parse_number(const std::string& text) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    while (first < last && *first == ' ') ++first;
    if (first < last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) throw ConfigError("csv: malformed number '" + text + "'");
    return value;
}

const std::vector<double>& Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return columns[i];
    }
    throw ConfigError("csv: missing column '" + name + "'");
}

void write_table(const std::filesystem::path& path, const Table& table) {
    if (table.header.size() != table.columns.size()) throw ShapeError("csv: header and column counts differ");
    const std::size_t rows = table.rows();
    for (const auto& c : table.columns) {
        if (c.size() != rows) throw ShapeError("csv: columns have different lengths");
    }
    auto out = open_out(path);
    for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
    out << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            out << (i ? "," : "") << format_number(table.columns[i][r]);
        }
        out << '\n';
    }
    if (!out) throw Error("csv: write failed for " + path.string());
}

Table read_table(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("csv: " + path.string() + " is empty");
    strip_cr(line);
    Table table;
    table.header = split(line);
    table.columns.resize(table.header.size());
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != table.header.size()) {
            std::ostringstream msg;
            msg << "csv: " << path.string() << " line " << lineno << " has " << cells.size() << " cells, expected "
                << table.header.size();
            throw ConfigError(msg.str());
        }
        for (std::size_t i = 0; i < cells.size(); ++i) table.columns[i].push_back(parse_number(cells[i]));
    }
    return table;
}

void write_field_csv(const std::filesystem::path& path, const Grid& grid, const RowMatrix& values) {
    if (values.rows() != static_cast<Eigen::Index>(grid.n_t()) || values.cols() != static_cast<Eigen::Index>(grid.n_x())) {
        throw ShapeError("csv: field values do not match the grid");
    }
    auto out = open_out(path);
    out << 't';
    for (std::size_t j = 0; j < grid.n_x(); ++j) out << ',' << format_number(grid.x(j));
    out << '\n';
    for (std::size_t k = 0; k < grid.n_t(); ++k) {
        out << format_number(grid.t(k));
        for (Eigen::Index j = 0; j < values.cols(); ++j) out << ',' << format_number(values(static_cast<Eigen::Index>(k), j));
        out << '\n';
    }
    if (!out) throw Error("csv: write failed for " + path.string());
}

FieldCsv read_field_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("csv: " + path.string() + " is empty");
    strip_cr(line);
    const auto head = split(line);
    if (head.empty() || head.front() != "t") throw ConfigError("csv: field file must start with a 't' column");
    FieldCsv f;
    for (std::size_t i = 1; i < head.size(); ++i) f.sizes.push_back(parse_number(head[i]));
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        strip_cr(line);
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != head.size()) throw ConfigError("csv: ragged row in " + path.string());
        f.times.push_back(parse_number(cells[0]));
        std::vector<double> row;
        for (std::size_t i = 1; i < cells.size(); ++i) row.push_back(parse_number(cells[i]));
        rows.push_back(std::move(row));
    }
    f.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(f.sizes.size()));
    for (std::size_t k = 0; k < rows.size(); ++k) {
        for (std::size_t j = 0; j < f.sizes.size(); ++j) {
            f.values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = rows[k][j];
        }
    }
    return f;
}

void write_checks_csv(const std::filesystem::path& path, const std::vector<CheckRow>& rows) {
    auto out = open_out(path);
    out << "quantity,value,tolerance,pass\n";
    for (const auto& r : rows) {
        out << r.quantity << ',' << format_number(r.value) << ',' << format_number(r.tolerance) << ','
            << (r.pass ? "true" : "false") << '\n';
    }
    if (!out) throw Error("csv: write failed for " + path.string());
}

}  // namespace kklcsd

#include "iftsim/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "iftsim/error.hpp"

namespace ift {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int CsvTable::column(const std::string& name) const {
    for (size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
}

double CsvTable::value(size_t row, int col) const {
    if (row >= rows.size() || col < 0 || col >= static_cast<int>(rows[row].size()))
        throw InvalidArgument("csv: cell out of range");
    return std::strtod(rows[row][col].c_str(), nullptr);
}

void CsvTable::add_row(const std::vector<double>& values) {
    std::vector<std::string> r;
    r.reserve(values.size());
    for (double v : values) r.push_back(format_double(v));
    rows.push_back(std::move(r));
}

void CsvTable::add_row(const std::vector<std::string>& values) { rows.push_back(values); }

std::string csv_to_string(const CsvTable& table) {
    std::ostringstream out;
    for (size_t i = 0; i < table.header.size(); ++i) {
        if (i) out << ',';
        out << table.header[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << row[i];
        }
        out << '\n';
    }
    return out.str();
}

CsvTable csv_from_string(const std::string& text) {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (first) {
            t.header = std::move(cells);
            first = false;
        } else {
            t.rows.push_back(std::move(cells));
        }
    }
    return t;
}

CsvTable csv_read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open csv file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return csv_from_string(buf.str());
}

void csv_write_file(const std::string& path, const CsvTable& table) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write csv file: " + path);
    out << csv_to_string(table);
}

} // namespace ift

#pragma once

#include <string>
#include <vector>

namespace ift {

/// Locale-independent CSV with full double precision ('%.17g', '.' decimal).
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const; // -1 when absent
    double value(size_t row, int col) const;
    void add_row(const std::vector<double>& values);
    void add_row(const std::vector<std::string>& values);
};

std::string format_double(double v);
std::string csv_to_string(const CsvTable& table);
CsvTable csv_from_string(const std::string& text);
CsvTable csv_read_file(const std::string& path);
void csv_write_file(const std::string& path, const CsvTable& table);

} // namespace ift

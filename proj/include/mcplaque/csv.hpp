#pragma once

#include <string>
#include <vector>

namespace mcplaque {

// Rectangular numeric table: one named column per header entry.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

// One value formatted the way the CSV emitter writes it (9 significant
// digits, shortest form; integral values come out without a decimal point).
std::string csv_value(double v);

// Render the table: header line, comma separators, '\n' endings on every
// line including the last.  Throws std::invalid_argument on ragged rows.
std::string render_csv(const CsvTable& table);

// render_csv to a file, written in binary mode so the bytes are identical
// across platforms.  Throws std::runtime_error on I/O failure.
void write_csv(const CsvTable& table, const std::string& path);

}  // namespace mcplaque

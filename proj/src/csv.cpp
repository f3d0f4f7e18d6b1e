#include "mcplaque/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace mcplaque {

std::string csv_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string render_csv(const CsvTable& table) {
    std::string out;
    out.reserve(32 * (table.rows.size() + 1));
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (c) out += ',';
        out += table.header[c];
    }
    out += '\n';
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (table.rows[r].size() != table.header.size())
            throw std::invalid_argument("render_csv: row " + std::to_string(r) +
                                        " has " +
                                        std::to_string(table.rows[r].size()) +
                                        " cells, header has " +
                                        std::to_string(table.header.size()));
        for (std::size_t c = 0; c < table.rows[r].size(); ++c) {
            if (c) out += ',';
            out += csv_value(table.rows[r][c]);
        }
        out += '\n';
    }
    return out;
}

void write_csv(const CsvTable& table, const std::string& path) {
    const std::string text = render_csv(table);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_csv: cannot open " + path);
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    f.flush();
    if (!f) throw std::runtime_error("write_csv: write failed for " + path);
}

}  // namespace mcplaque

#include "aptfwm/table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "aptfwm/types.hpp"

namespace aptfwm {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

std::string format_int(long v) { return std::to_string(v); }

std::string format_bool(bool v) { return v ? "true" : "false"; }

void add_row(OutputTable& table, std::vector<std::string> cells) {
    if (cells.size() != table.columns.size()) {
        throw DataError("OutputTable: row width does not match the header");
    }
    table.rows.push_back(std::move(cells));
}

std::string render_table(const OutputTable& table) {
    std::string out;
    for (const auto& c : table.comments) {
        out += "# ";
        out += c;
        out += '\n';
    }
    for (size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

void write_table(const std::string& path, const OutputTable& table) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot open output file: " + path);
    f << render_table(table);
    if (!f) throw DataError("failed writing output file: " + path);
}

}  // namespace aptfwm

#pragma once

#include <string>
#include <vector>

namespace aptfwm {

// Column-oriented output table: comment block (resolved configuration echo),
// one header row naming columns and units, then rows of cells formatted at 15
// significant digits. Rendering is fully deterministic, so re-running a
// configuration reproduces the file byte for byte.
struct OutputTable {
    std::vector<std::string> comments;   // emitted as "# <line>"
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

// %.15g with canonical "nan"/"inf" spellings.
[[nodiscard]] std::string format_double(double v);
[[nodiscard]] std::string format_int(long v);
[[nodiscard]] std::string format_bool(bool v);

void add_row(OutputTable& table, std::vector<std::string> cells);

[[nodiscard]] std::string render_table(const OutputTable& table);

void write_table(const std::string& path, const OutputTable& table);

}  // namespace aptfwm

#include "aptfwm/dataset.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "aptfwm/table.hpp"

namespace aptfwm {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_cell(const std::string& cell, int line_no) {
    size_t pos = 0;
    double v;
    try {
        v = std::stod(cell, &pos);
    } catch (const std::exception&) {
        throw DataError("dataset line " + std::to_string(line_no) +
                        ": not a number: '" + cell + "'");
    }
    while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
    if (pos != cell.size()) {
        throw DataError("dataset line " + std::to_string(line_no) +
                        ": trailing characters in '" + cell + "'");
    }
    return v;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

}  // namespace

GainDataset read_dataset(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot open dataset: " + path);

    GainDataset data;
    bool have_header = false;
    bool has_weight = false;
    std::string line;
    int line_no = 0;
    while (std::getline(f, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;

        const auto cells = split_csv(t);
        if (!have_header) {
            if (cells.size() != 3 && cells.size() != 4) {
                throw DataError("dataset line " + std::to_string(line_no) +
                                ": header must be <axis>,g_p,g_s[,weight]");
            }
            const std::string axis = trim(cells[0]);
            if (axis != "density_per_cm3" && axis != "omega_over_2pi_GHz" &&
                axis != "param_value") {
                throw DataError("dataset line " + std::to_string(line_no) +
                                ": unknown axis column '" + axis + "'");
            }
            if (trim(cells[1]) != "g_p" || trim(cells[2]) != "g_s") {
                throw DataError("dataset line " + std::to_string(line_no) +
                                ": unknown column '" +
                                (trim(cells[1]) != "g_p" ? trim(cells[1]) : trim(cells[2])) +
                                "'");
            }
            if (cells.size() == 4) {
                if (trim(cells[3]) != "weight") {
                    throw DataError("dataset line " + std::to_string(line_no) +
                                    ": unknown column '" + trim(cells[3]) + "'");
                }
                has_weight = true;
            }
            data.axis_name = axis;
            have_header = true;
            continue;
        }

        const size_t expected = has_weight ? 4 : 3;
        if (cells.size() != expected) {
            throw DataError("dataset line " + std::to_string(line_no) + ": expected " +
                            std::to_string(expected) + " columns, got " +
                            std::to_string(cells.size()));
        }
        data.param.push_back(parse_cell(trim(cells[0]), line_no));
        data.g_p.push_back(parse_cell(trim(cells[1]), line_no));
        data.g_s.push_back(parse_cell(trim(cells[2]), line_no));
        if (has_weight) data.weight.push_back(parse_cell(trim(cells[3]), line_no));
    }
    if (!have_header) throw DataError("dataset has no header row: " + path);
    if (data.param.empty()) throw DataError("dataset has no data rows: " + path);
    data.validate();
    return data;
}

void write_dataset(const std::string& path, const GainDataset& data,
                   const std::vector<std::string>& comments) {
    data.validate();
    OutputTable table;
    table.comments = comments;
    table.columns = {data.axis_name, "g_p", "g_s"};
    if (!data.weight.empty()) table.columns.push_back("weight");
    for (size_t i = 0; i < data.param.size(); ++i) {
        std::vector<std::string> row{format_double(data.param[i]),
                                     format_double(data.g_p[i]),
                                     format_double(data.g_s[i])};
        if (!data.weight.empty()) row.push_back(format_double(data.weight[i]));
        add_row(table, std::move(row));
    }
    write_table(path, table);
}

namespace {

// Box-Muller over explicitly constructed uniforms; unlike
// std::normal_distribution this yields the same stream on every platform.
class DeterministicGauss {
  public:
    explicit DeterministicGauss(std::uint64_t seed) : rng_(seed) {}

    double operator()() {
        const double u1 = (static_cast<double>(rng_() >> 11) + 0.5) * 0x1p-53;
        const double u2 = (static_cast<double>(rng_() >> 11) + 0.5) * 0x1p-53;
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * constants::pi * u2);
    }

  private:
    std::mt19937_64 rng_;
};

}  // namespace

GainDataset synthetic_gain_dataset(const PhysicalParams& p, SweepAxis axis,
                                   const std::vector<double>& grid,
                                   double noise_fraction, std::uint64_t seed) {
    if (noise_fraction < 0.0 || noise_fraction > 0.3) {
        throw ConfigError("synthetic_gain_dataset: noise fraction out of range [0, 0.3]");
    }
    GainDataset data;
    data.axis_name = axis_column(axis);
    DeterministicGauss gauss(seed);
    for (const double value : grid) {
        const EffectiveModel model = effective_from_physical(at_axis_value(p, axis, value));
        const auto tc =
            propagate_mean(build_lossy_generator(model), model.length, MomentState())
                .effective;
        data.param.push_back(value);
        data.g_p.push_back(std::norm(tc.a) * (1.0 + noise_fraction * gauss()));
        data.g_s.push_back(std::norm(tc.c) * (1.0 + noise_fraction * gauss()));
    }
    data.validate();
    return data;
}

}  // namespace aptfwm

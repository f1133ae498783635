#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aptfwm/fit.hpp"

namespace aptfwm {

// Comma-separated gain data with a mandatory header row naming the columns:
//   <axis>,g_p,g_s[,weight]
// where <axis> is density_per_cm3, omega_over_2pi_GHz, or param_value.
// '#' lines are comments; CRLF and LF line endings both parse; malformed rows
// are reported with their line number.
[[nodiscard]] GainDataset read_dataset(const std::string& path);

void write_dataset(const std::string& path, const GainDataset& data,
                   const std::vector<std::string>& comments = {});

// Model-generated gain curve with multiplicative Gaussian noise,
//   measured = model * (1 + noise_fraction * xi).
// The Gaussian draws come from an explicit Box-Muller over mt19937_64 so the
// bytes are reproducible across standard libraries.
[[nodiscard]] GainDataset synthetic_gain_dataset(const PhysicalParams& p, SweepAxis axis,
                                                 const std::vector<double>& grid,
                                                 double noise_fraction, std::uint64_t seed);

}  // namespace aptfwm

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aptfwm/fit.hpp"

namespace aptfwm {

// Fully resolved run description. Exactly one parameterization is active:
// either a direct effective model ([model] kappa keys) or the physical mapping
// ([physical] section); mixing them is a configuration conflict.
struct RunConfig {
    bool direct_model = false;
    EffectiveModel model;              // valid in direct mode
    bool has_physical = false;
    PhysicalParams physical;           // valid in physical mode
    std::optional<double> temperature_C;

    DetectorPair detector{};
    double ep_tolerance = 1e-9;

    bool has_sweep = false;
    SweepAxis axis = SweepAxis::Density;
    double sweep_start = 0.0, sweep_stop = 0.0;
    int sweep_points = 0;
    double n_p0 = 1e6;

    std::vector<FitParameter> fit_free{FitParameter::DeltaK};
    FitOptions fit_options{};

    std::string output_path;

    // Resolved "section.key = value" pairs, in canonical order, sufficient to
    // reproduce the run; embedded verbatim in every output table.
    std::vector<std::pair<std::string, std::string>> echo;

    [[nodiscard]] std::vector<double> grid() const;
    // The single configured model (direct, or physical at its set density).
    [[nodiscard]] EffectiveModel point_model() const;
};

// Line-oriented key = value format with [section] headers and '#' comments.
// Unknown sections or keys, duplicate keys, missing required keys, unit-family
// mismatches, and conflicting parameterizations are all errors carrying the
// offending line number.
[[nodiscard]] RunConfig load_config(const std::string& path);

}  // namespace aptfwm

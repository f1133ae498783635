#pragma once

#include <string>
#include <vector>

#include "aptfwm/detection.hpp"
#include "aptfwm/physical.hpp"

namespace aptfwm {

enum class SweepAxis { Density, Rabi };

[[nodiscard]] const char* to_string(SweepAxis axis);
// Column/unit name of the swept parameter ("density_per_cm3" etc.).
[[nodiscard]] const char* axis_column(SweepAxis axis);

// Everything the figure tables plot, per grid point. Failed points keep their
// slot (ok = false, values NaN) so one bad point never kills a sweep.
struct SweepRecord {
    double param_value = 0.0;
    double lambda_re = 0.0, lambda_im = 0.0;       // rad/m, lossless pair +lambda
    double g_p = 0.0, g_s = 0.0;                   // with loss
    double g_p_norm = 0.0, g_s_norm = 0.0;
    double s_ideal = 0.0, s_ideal_db = 0.0;
    double s_lossy = 0.0, s_lossy_db = 0.0;
    double s_detected = 0.0, s_detected_db = 0.0;
    Regime regime = Regime::SymmetryBroken;
    bool ok = true;
    std::string error;
};

struct SweepSettings {
    double n_p0 = 1e6;                 // photons in the probe seed
    DetectorPair detector{};
    double ep_tolerance = 1e-9;
};

[[nodiscard]] std::vector<double> linspace(double start, double stop, int points);

// The parameter set with the swept axis forced to the given value.
[[nodiscard]] PhysicalParams at_axis_value(PhysicalParams p, SweepAxis axis, double value);

[[nodiscard]] SweepRecord evaluate_point(const PhysicalParams& p, SweepAxis axis,
                                         double value, const SweepSettings& settings);

// Grid points are independent; the parallel version fans them out with OpenMP
// into preallocated slots and is bit-identical to the serial reference.
[[nodiscard]] std::vector<SweepRecord> sweep(const PhysicalParams& p, SweepAxis axis,
                                             const std::vector<double>& grid,
                                             const SweepSettings& settings);
[[nodiscard]] std::vector<SweepRecord> sweep_serial(const PhysicalParams& p, SweepAxis axis,
                                                    const std::vector<double>& grid,
                                                    const SweepSettings& settings);

// Bisection root of beta(param) = 1; the bracket endpoints must straddle the
// transition.
[[nodiscard]] double locate_ep(const PhysicalParams& p, SweepAxis axis, double lo,
                               double hi, double rel_tol = 1e-8);

struct OptimumReport {
    double param_value = 0.0;
    double s_detected = 1.0;
    double s_detected_db = 0.0;
    bool boundary = false;   // grid argmin sat on an endpoint; no bracket to refine
};

// Grid argmin of detected squeezing followed by golden-section refinement
// between the neighboring grid points (tolerance 1e-4 of the grid span).
[[nodiscard]] OptimumReport optimal_squeezing(const PhysicalParams& p, SweepAxis axis,
                                              const std::vector<double>& grid,
                                              const SweepSettings& settings);

}  // namespace aptfwm

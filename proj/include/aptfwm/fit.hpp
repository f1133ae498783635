#pragma once

#include <string>
#include <vector>

#include "aptfwm/sweeps.hpp"

namespace aptfwm {

// Measured classical gain curve along one sweep axis.
struct GainDataset {
    std::string axis_name = "density_per_cm3";   // or omega_over_2pi_GHz
    std::vector<double> param;
    std::vector<double> g_p;
    std::vector<double> g_s;
    std::vector<double> weight;   // empty means uniform

    [[nodiscard]] SweepAxis axis() const;
    void validate() const;
};

enum class FitParameter { DeltaK, G, AlphaRef };

[[nodiscard]] const char* to_string(FitParameter p);

struct FitOptions {
    int max_iterations = 100;
    double step_tolerance = 1e-10;    // on the scaled parameters
    bool relative_residuals = true;   // (model-data)/data, right for multiplicative noise
    bool log_residuals = false;       // log(model) - log(data) instead
};

struct FitResult {
    std::vector<FitParameter> free;
    Eigen::VectorXd values;        // same order as free
    Eigen::MatrixXd covariance;    // local curvature estimate; NaN if unidentifiable
    double residual_norm = 0.0;    // ||r||_2 at the optimum
    int iterations = 0;
    bool converged = false;
    bool identifiable = true;
    PhysicalParams params;         // input params with fitted values applied
};

// Damped least squares on the classical gains, starting from the values in p.
// Free parameters are a subset of {delta_k, g, alpha_ref}; everything else is
// held at its input value.
[[nodiscard]] FitResult fit_delta_k(const GainDataset& data, const PhysicalParams& p,
                                    const std::vector<FitParameter>& free,
                                    const FitOptions& options = {});

}  // namespace aptfwm

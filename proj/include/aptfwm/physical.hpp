#pragma once

#include "aptfwm/apt_core.hpp"

namespace aptfwm {

// Liquid-phase Rb vapor pressure, log10(P/Torr) = a - b/T(K), scaled by the
// probed-isotope abundance. Coefficients are overridable from configuration.
struct VaporPressureCurve {
    double a = 7.738;
    double b_K = 4215.0;
    double abundance = 0.7217;   // Rb-85 natural fraction
};

// Experiment-level knobs mapped onto the effective model:
//   kappa = g N / (2 c delta2) * (omega/omega_ref)^p_kappa
//   alpha = alpha_ref * (N/n_ref) * (omega_ref/omega)^p_alpha
// delta_k is a fitted input (the wavenumbers and angle never enter separately)
// and delta2 always sits one hyperfine splitting above delta1. The two-photon
// detuning and the beam angle are recorded run metadata, not model inputs.
struct PhysicalParams {
    double delta_k = 0.0;         // rad/m
    double delta1_GHz = 0.7;      // one-photon detuning
    double delta_2ph_MHz = 0.0;   // recorded, not modeled
    double omega_GHz = 0.42;      // pump Rabi frequency Omega/2pi
    double omega_ref_GHz = 0.42;
    double theta_deg = 0.0;       // recorded, not modeled
    double n_density = 0.0;       // atoms/cm^3
    double length = 0.019;        // m
    double g = 0.0;               // rad^2 cm^3 / s^2; 0 means uncalibrated
    double alpha_ref = 0.0;       // rad/m at (n_ref, omega_ref)
    double n_ref = 7e12;          // cm^-3
    double p_kappa = 2.0;
    double p_alpha = 2.0;
    VaporPressureCurve vapor;

    [[nodiscard]] double delta2_GHz() const {
        return delta1_GHz + constants::hyperfine_GHz;
    }
    [[nodiscard]] double delta2_rad_per_s() const {
        return 2.0 * constants::pi * delta2_GHz() * 1e9;
    }
    void validate() const;
};

[[nodiscard]] complexd kappa_from_physical(const PhysicalParams& p);

[[nodiscard]] double alpha_from_physical(const PhysicalParams& p);

[[nodiscard]] EffectiveModel effective_from_physical(const PhysicalParams& p);

// Back-solves g so the eigenvalue coalescence sits at the given density at the
// parameter set's own pump strength.
[[nodiscard]] double calibrate_g_for_ep_density(const PhysicalParams& p,
                                                double ep_density_cm3);

[[nodiscard]] double density_from_temperature(double t_celsius,
                                              const VaporPressureCurve& curve = {});

[[nodiscard]] double temperature_from_density(double n_cm3,
                                              const VaporPressureCurve& curve = {});

}  // namespace aptfwm

#pragma once

#include "aptfwm/lossy.hpp"

namespace aptfwm {

// Photodiode efficiencies, modeled as passive beamsplitters mixing in vacuum.
// dark_variance is a constant additive photon-number variance (electronics
// floor); zero by default and not part of the optical model.
struct DetectorPair {
    double eta_p = 1.0;
    double eta_s = 1.0;
    double dark_variance = 0.0;   // photons^2

    void validate() const;
};

// Beamsplitter transform per mode: means scale by sqrt(eta), fluctuation
// correlators pick up (1-eta) of vacuum. Composes multiplicatively in eta.
[[nodiscard]] MomentState apply_detectors(const MomentState& moments,
                                          const DetectorPair& det);

// Relative-intensity squeezing as the photodiodes see it, shot-noise
// referenced to the detected photon numbers.
[[nodiscard]] VarianceReport detected_squeezing(const MomentState& moments,
                                                const DetectorPair& det, double n_p0);

}  // namespace aptfwm

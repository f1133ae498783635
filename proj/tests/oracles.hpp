#pragma once

// Test-side reference implementations, kept deliberately independent of the
// library's closed forms: a fixed-step RK4 integration of the coupled-mode
// equation and random model samplers shared across the test binaries.

#include <random>

#include "aptfwm/apt_core.hpp"

namespace oracles {

using aptfwm::complexd;
using aptfwm::Matrix2cd;

// Integrates dU/dz = -i m U, U(0) = I with classic RK4. Global error scales as
// (|lambda| h)^4 per unit |lambda| L; 800 steps keeps it below 1e-9 for
// |lambda| L <= 3.
inline Matrix2cd rk4_propagator(const Matrix2cd& m, double length, int steps = 800) {
    Matrix2cd u = Matrix2cd::Identity();
    const double h = length / steps;
    const complexd mi(0.0, -1.0);
    for (int i = 0; i < steps; ++i) {
        const Matrix2cd k1 = mi * (m * u);
        const Matrix2cd k2 = mi * (m * (u + 0.5 * h * k1));
        const Matrix2cd k3 = mi * (m * (u + 0.5 * h * k2));
        const Matrix2cd k4 = mi * (m * (u + h * k3));
        u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return u;
}

struct ModelSampler {
    std::mt19937_64 rng;

    explicit ModelSampler(unsigned long long seed) : rng(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }

    // Wide-range lossless model for algebraic identities (no oracle needed).
    aptfwm::EffectiveModel wide_lossless() {
        aptfwm::EffectiveModel m;
        m.delta_k = uniform(-1e3, 1e3);
        m.kappa = uniform(0.0, 1e3);
        m.length = uniform(1e-4, 0.1);
        return m;
    }

    // Bounded |lambda| L (< ~3) so fixed-step RK4 reaches 1e-9 accuracy and
    // matrix entries stay O(10).
    aptfwm::EffectiveModel oracle_lossless() {
        aptfwm::EffectiveModel m;
        m.delta_k = uniform(-1e3, 1e3);
        m.kappa = uniform(0.0, 1e3);
        m.length = uniform(1e-4, 3e-3);
        return m;
    }

    // Within |beta - 1| < window of the eigenvalue coalescence.
    aptfwm::EffectiveModel near_ep(double window = 1e-4) {
        aptfwm::EffectiveModel m;
        m.delta_k = uniform(100.0, 1e3) * (uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0);
        m.kappa = 0.5 * std::abs(m.delta_k) * (1.0 + uniform(-window, window));
        m.length = uniform(1e-3, 3e-2);
        return m;
    }

    // Lossy model with alpha L <= max_alpha_l and moderate gain.
    aptfwm::EffectiveModel lossy(double max_alpha_l = 0.5) {
        aptfwm::EffectiveModel m;
        m.delta_k = uniform(-400.0, 400.0);
        m.kappa = uniform(0.0, 300.0);
        m.length = uniform(5e-3, 5e-2);
        m.alpha = uniform(0.0, max_alpha_l) / m.length;
        return m;
    }
};

}  // namespace oracles

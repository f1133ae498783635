#pragma once

#include "aptfwm/types.hpp"

namespace aptfwm {

// Probe/Stokes coupled-mode model for the vector (a_p, a_s^dag):
//   i d/dz (a_p, a_s^dag) = [[-dk/2 - i*alpha, -kappa], [kappa, dk/2]] (a_p, a_s^dag)
// delta_k is the signed phase mismatch, kappa the parametric coupling (real at
// two-photon resonance), alpha the probe amplitude loss rate. This module covers
// the lossless (alpha = 0) closed-form algebra.
struct EffectiveModel {
    double delta_k = 0.0;      // rad/m, signed
    complexd kappa = 0.0;      // rad/m
    complexd alpha = 0.0;      // rad/m, Re(alpha) >= 0
    double length = 0.0;       // m

    // |2 kappa / delta_k|; infinity on the delta_k = 0 branch.
    [[nodiscard]] double beta() const;
    [[nodiscard]] bool lossless() const { return alpha == complexd(0.0); }
    void validate() const;     // throws ConfigError
};

enum class Regime { SymmetryBroken, ExceptionalPoint, SymmetricPhase };

[[nodiscard]] const char* to_string(Regime r);

// Eigenvalue pair of the coupling matrix. Real below the exceptional point
// (beta < 1), imaginary above it, both zero at beta = 1.
struct Spectrum {
    complexd lambda_plus = 0.0;    // rad/m
    complexd lambda_minus = 0.0;   // rad/m, always -lambda_plus
    double beta = 0.0;
    Regime regime = Regime::SymmetryBroken;
    bool degenerate = false;       // delta_k = kappa = 0: zero matrix, no EP
};

// Entries of the Bogoliubov propagator:
//   a_p(L)     = A a_p(0) + conj(C) a_s^dag(0)
//   a_s^dag(L) = C a_p(0) + conj(A) a_s^dag(0)
// with |A|^2 - |C|^2 = 1 in the lossless case.
struct TransferCoefficients {
    complexd a = 1.0;
    complexd c = 0.0;
};

struct GainReport {
    double g_p = 1.0;       // |A|^2
    double g_s = 0.0;       // |C|^2
    double g_p_norm = 1.0;  // g_p / (g_p + g_s)
    double g_s_norm = 0.0;
};

struct SqueezingValue {
    double s = 1.0;     // Var(n_p - n_s) / (<n_p> + <n_s>), 1 = shot noise
    double s_db = 0.0;  // 10 log10(s)
};

// The coupling matrix [[-dk/2, -kappa], [kappa, dk/2]]. Anti-commutes with the
// joint parity-time operation (basis swap composed with conjugation) for real
// kappa. Rejects lossy models; the dissipative generator lives in lossy.hpp.
[[nodiscard]] Matrix2cd build_hamiltonian(const EffectiveModel& model);

[[nodiscard]] Spectrum spectrum(const EffectiveModel& model, double ep_tolerance = 1e-9);

// exp(-i m L) for any 2x2 m, via the traceless split m = tr/2 + m0 and the
// entire functions cos(sqrt(z)), sinc(sqrt(z)) of z = -det(m0) L^2. Exact
// through the eigenvalue-coalescence point (both functions are analytic in z;
// a short series takes over for |z| < 1e-4), so no separate EP branch.
[[nodiscard]] Matrix2cd propagator(const Matrix2cd& m, double length);

// Closed-form lossless transfer coefficients
//   A = cos(lambda L) + i sin(lambda L)/sqrt(1-beta^2),
//   C = -i kappa L sinc(lambda L),
// evaluated through the shared propagator so the EP (lambda -> 0) limit
// A = 1 + i dk L/2, C = -i kappa L comes out of the same expression.
[[nodiscard]] TransferCoefficients transfer_matrix(const EffectiveModel& model);

[[nodiscard]] GainReport gains(const TransferCoefficients& tc);

// Ideal relative-intensity squeezing S = 1/(|A|^2 + |C|^2) for a bright probe
// seed and vacuum Stokes input; always <= 1 without loss.
[[nodiscard]] SqueezingValue ideal_squeezing(const TransferCoefficients& tc);

}  // namespace aptfwm

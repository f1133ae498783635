#pragma once

#include "aptfwm/apt_core.hpp"

namespace aptfwm {

// Dissipative coupled-mode generator. Probe loss alpha forces Langevin noise:
// the kernel K = 2 [[Re(alpha), Im(kappa)], [-Im(kappa), 0]] enters through its
// principal square root N = N_R + i N_I, and the vacuum reservoir correlators
// <f f^dag> = delta(z-z') source the fluctuation second moments.
struct LossyGenerator {
    Matrix2cd matrix;       // drift [[-dk/2 - i alpha, -kappa], [kappa, dk/2]]
    Matrix2cd diffusion;    // source of <dv dv^dag> per unit length
    Matrix2cd diffusion_anomalous;   // source of <dv dv^T>, zero for this kernel
    Matrix2d noise_real;    // N_R
    Matrix2d noise_imag;    // N_I
};

// First and second moments of (a_p, a_s^dag) around the bright-probe mean:
// v = (da_p, da_s^dag), normal_block = <v v^dag>, anomalous_block = <v v^T>.
// Vacuum fluctuations give normal_block = diag(1, 0) from the canonical
// commutators (the a_s^dag slot is normally ordered).
struct MomentState {
    complexd mean_p = 0.0;
    complexd mean_s_dag = 0.0;
    Matrix2cd normal_block;
    Matrix2cd anomalous_block;

    MomentState();
};

// Coherent probe seed of n_p0 photons with vacuum Stokes input.
[[nodiscard]] MomentState vacuum_seed(double n_p0);

struct VarianceReport {
    double coherent_term = 0.0;   // (|A|^2-|C|^2)^2 n_p0, photons^2
    double langevin_term = 0.0;   // total_var - coherent_term, photons^2
    double total_var = 0.0;       // Var(n_p - n_s), photons^2
    double mean_np = 0.0;         // photons
    double mean_ns = 0.0;         // photons
    double squeezing_s = 1.0;     // total_var / (mean_np + mean_ns)
    double squeezing_db = 0.0;
    bool bright_seed_warning = false;  // n_p0 below the linearization threshold
};

struct MeanPropagation {
    TransferCoefficients effective;  // A = P(0,0), C = P(1,0) of the full propagator
    Matrix2cd full;
    complexd mean_p = 0.0;
    complexd mean_s_dag = 0.0;
};

// Principal matrix square root of a 2x2 via Cayley-Hamilton. Refuses inputs
// with an eigenvalue on the closed negative real axis (no principal branch).
[[nodiscard]] Matrix2cd principal_sqrt_2x2(const Matrix2cd& k);

[[nodiscard]] LossyGenerator build_lossy_generator(const EffectiveModel& model);

[[nodiscard]] MeanPropagation propagate_mean(const LossyGenerator& gen, double length,
                                             const MomentState& seed);

// Integrates d(Sigma)/dz = G Sigma + Sigma G^dag + D (G = -i drift) with the
// closed-form step propagator and Simpson quadrature for the source, doubling
// the step count until successive refinements agree to 1e-10. Throws
// NumericError with the achieved tolerance if that never happens, or if the
// normal block loses positivity beyond 1e-9.
[[nodiscard]] MomentState propagate_moments(const LossyGenerator& gen, double length,
                                            const MomentState& seed);

// Var(n_p - n_s) of the bright-seeded state by linearizing around the means.
[[nodiscard]] VarianceReport variance_diff_photon(const MomentState& moments, double n_p0);

// Independent discretization: alternates exact lossless steps with discrete
// probe beamsplitters of power transmissivity exp(-2 Re(alpha) L/slices), each
// mixing in fresh vacuum. Converges to propagate_moments as 1/slices. Real
// kappa only; the continuous beamsplitter limit does not represent the
// Im(kappa) noise channel.
[[nodiscard]] VarianceReport beamsplitter_slice_oracle(const EffectiveModel& model,
                                                       int slices, double n_p0);

// Same discretization, exposed at the moment level for entry-wise comparisons.
[[nodiscard]] MomentState slice_oracle_moments(const EffectiveModel& model, int slices,
                                               double n_p0);

}  // namespace aptfwm

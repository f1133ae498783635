#include "aptfwm/lossy.hpp"

#include <cmath>
#include <sstream>

namespace aptfwm {

namespace {
constexpr double kBrightSeedThreshold = 1e3;   // photons
constexpr double kStepTolerance = 1e-10;
constexpr double kPositivityTolerance = 1e-9;
constexpr int kMaxSteps = 1 << 20;

Matrix2cd hermitize(const Matrix2cd& m) { return 0.5 * (m + m.adjoint()); }
}  // namespace

MomentState::MomentState()
    : normal_block((Matrix2cd() << 1, 0, 0, 0).finished()),
      anomalous_block(Matrix2cd::Zero()) {}

MomentState vacuum_seed(double n_p0) {
    if (n_p0 < 0.0) throw ConfigError("vacuum_seed: negative photon number");
    MomentState s;
    s.mean_p = std::sqrt(n_p0);
    return s;
}

Matrix2cd principal_sqrt_2x2(const Matrix2cd& k) {
    Eigen::ComplexEigenSolver<Matrix2cd> es(k, false);
    for (int i = 0; i < 2; ++i) {
        const complexd ev = es.eigenvalues()(i);
        if (ev.imag() == 0.0 && ev.real() < 0.0) {
            throw NumericError(
                "principal_sqrt_2x2: eigenvalue on the negative real axis, "
                "no principal branch");
        }
    }
    // Cayley-Hamilton: sqrt(K) = (K + sqrt(det) I) / sqrt(tr + 2 sqrt(det)),
    // with principal scalar roots.
    const complexd sd = std::sqrt(k.determinant());
    const complexd denom_sq = k.trace() + 2.0 * sd;
    if (std::abs(denom_sq) == 0.0) {
        if (k.cwiseAbs().maxCoeff() == 0.0) return Matrix2cd::Zero();
        throw NumericError("principal_sqrt_2x2: defective zero-trace kernel");
    }
    return (k + sd * Matrix2cd::Identity()) / std::sqrt(denom_sq);
}

LossyGenerator build_lossy_generator(const EffectiveModel& model) {
    model.validate();
    LossyGenerator gen;
    gen.matrix << -0.5 * model.delta_k - complexd(0.0, 1.0) * model.alpha, -model.kappa,
                   model.kappa,                                             0.5 * model.delta_k;

    Matrix2cd kernel;
    kernel << 2.0 * model.alpha.real(), 2.0 * model.kappa.imag(),
             -2.0 * model.kappa.imag(), 0.0;
    const Matrix2cd root = principal_sqrt_2x2(kernel);
    gen.noise_real = root.real();
    gen.noise_imag = root.imag();

    // The Langevin vector is (f_p, f_s^dag) for the N_R part and the conjugate
    // pair for N_I. Vacuum reservoirs leave only <f_p f_p^dag> = 1 in the
    // first slot and <f_s f_s^dag> = 1 in the second-slot conjugate channel:
    const Matrix2d e_p = (Matrix2d() << 1, 0, 0, 0).finished();
    const Matrix2d e_s = (Matrix2d() << 0, 0, 0, 1).finished();
    gen.diffusion = gen.noise_real * e_p * gen.noise_real.transpose() +
                    gen.noise_imag * e_s * gen.noise_imag.transpose();
    gen.diffusion_anomalous =
        gen.noise_real * e_p * gen.noise_imag.transpose() +
        gen.noise_imag * e_s * gen.noise_real.transpose();
    return gen;
}

MeanPropagation propagate_mean(const LossyGenerator& gen, double length,
                               const MomentState& seed) {
    if (!(length > 0.0)) throw ConfigError("propagate_mean: length must be positive");
    MeanPropagation out;
    out.full = propagator(gen.matrix, length);
    out.effective = TransferCoefficients{out.full(0, 0), out.full(1, 0)};
    const Vector2cd means = out.full * Vector2cd(seed.mean_p, seed.mean_s_dag);
    out.mean_p = means(0);
    out.mean_s_dag = means(1);
    return out;
}

namespace {

struct MomentIntegration {
    Matrix2cd normal;
    Matrix2cd anomalous;
};

// One pass at fixed step count; the step propagator is exact, only the source
// quadrature (Simpson) is approximate, so refinement error falls as h^4.
MomentIntegration run_steps(const LossyGenerator& gen, double length, int steps,
                            const MomentState& seed) {
    const double h = length / steps;
    const Matrix2cd u = propagator(gen.matrix, h);
    const Matrix2cd u_half = propagator(gen.matrix, 0.5 * h);
    const Matrix2cd source =
        (h / 6.0) * (gen.diffusion +
                     4.0 * u_half * gen.diffusion * u_half.adjoint() +
                     u * gen.diffusion * u.adjoint());
    const Matrix2cd source_anom =
        (h / 6.0) * (gen.diffusion_anomalous +
                     4.0 * u_half * gen.diffusion_anomalous * u_half.transpose() +
                     u * gen.diffusion_anomalous * u.transpose());

    MomentIntegration state{seed.normal_block, seed.anomalous_block};
    for (int i = 0; i < steps; ++i) {
        state.normal = u * state.normal * u.adjoint() + source;
        state.anomalous = u * state.anomalous * u.transpose() + source_anom;
    }
    state.normal = hermitize(state.normal);
    return state;
}

double block_distance(const MomentIntegration& a, const MomentIntegration& b) {
    const double scale = std::max(1.0, a.normal.cwiseAbs().maxCoeff());
    return std::max((a.normal - b.normal).cwiseAbs().maxCoeff(),
                    (a.anomalous - b.anomalous).cwiseAbs().maxCoeff()) /
           scale;
}

}  // namespace

MomentState propagate_moments(const LossyGenerator& gen, double length,
                              const MomentState& seed) {
    if (!(length > 0.0)) throw ConfigError("propagate_moments: length must be positive");

    const MeanPropagation mean = propagate_mean(gen, length, seed);
    MomentState out;
    out.mean_p = mean.mean_p;
    out.mean_s_dag = mean.mean_s_dag;

    // Pure drift (no noise source): the single closed-form step is exact.
    if (gen.diffusion.cwiseAbs().maxCoeff() == 0.0 &&
        gen.diffusion_anomalous.cwiseAbs().maxCoeff() == 0.0) {
        out.normal_block = hermitize(mean.full * seed.normal_block * mean.full.adjoint());
        out.anomalous_block = mean.full * seed.anomalous_block * mean.full.transpose();
        return out;
    }

    MomentIntegration prev = run_steps(gen, length, 16, seed);
    double achieved = std::numeric_limits<double>::infinity();
    for (int steps = 32; steps <= kMaxSteps; steps *= 2) {
        const MomentIntegration cur = run_steps(gen, length, steps, seed);
        achieved = block_distance(cur, prev);
        prev = cur;
        if (achieved < kStepTolerance) {
            const Eigen::SelfAdjointEigenSolver<Matrix2cd> es(prev.normal);
            if (es.eigenvalues().minCoeff() <
                -kPositivityTolerance * std::max(1.0, prev.normal.cwiseAbs().maxCoeff())) {
                throw NumericError("propagate_moments: fluctuation matrix lost positivity");
            }
            out.normal_block = prev.normal;
            out.anomalous_block = prev.anomalous;
            return out;
        }
    }
    std::ostringstream msg;
    msg << "propagate_moments: step doubling did not converge, achieved tolerance "
        << achieved << " (target " << kStepTolerance << ")";
    throw NumericError(msg.str());
}

VarianceReport variance_diff_photon(const MomentState& moments, double n_p0) {
    if (!(n_p0 > 0.0)) throw ConfigError("variance_diff_photon: n_p0 must be positive");
    VarianceReport rep;
    rep.bright_seed_warning = n_p0 < kBrightSeedThreshold;

    const complexd mean_s = std::conj(moments.mean_s_dag);
    rep.mean_np = std::norm(moments.mean_p);
    rep.mean_ns = std::norm(mean_s);

    // d(n_p - n_s) linearized around the means is c.v + h.c. with
    // v = (da_p, da_s^dag) and c = (conj(mean_p), -mean_s).
    const Vector2cd c(std::conj(moments.mean_p), -mean_s);
    const complexd normal = (c.transpose() * moments.normal_block * c.conjugate())(0, 0);
    const complexd anomalous = (c.transpose() * moments.anomalous_block * c)(0, 0);
    // <X X^dag> + <X^dag X> folds in the commutator [X, X^dag] = |c1|^2 - |c2|^2.
    rep.total_var = 2.0 * normal.real() - (rep.mean_np - rep.mean_ns) +
                    2.0 * anomalous.real();

    const double diff = rep.mean_np - rep.mean_ns;
    rep.coherent_term = diff * diff / n_p0;
    rep.langevin_term = rep.total_var - rep.coherent_term;

    rep.squeezing_s = rep.total_var / (rep.mean_np + rep.mean_ns);
    rep.squeezing_db = 10.0 * std::log10(rep.squeezing_s);
    return rep;
}

MomentState slice_oracle_moments(const EffectiveModel& model, int slices, double n_p0) {
    model.validate();
    if (slices < 100) {
        throw ConfigError("slice oracle: need at least 100 slices");
    }
    if (model.kappa.imag() != 0.0) {
        throw ConfigError(
            "slice oracle: complex kappa has no beamsplitter representation; "
            "tracked by the commutator-preservation property instead");
    }

    const double dz = model.length / slices;
    // Lossless part of the drift: Im(alpha) is a detuning-like shift and stays
    // in the coherent step; only Re(alpha) becomes the beamsplitter.
    Matrix2cd drift0;
    drift0 << -0.5 * model.delta_k + model.alpha.imag(), -model.kappa,
               model.kappa,                               0.5 * model.delta_k;
    const Matrix2cd u = propagator(drift0, dz);
    const double t_amp = std::exp(-model.alpha.real() * dz);
    const Matrix2d t_bs = (Matrix2d() << t_amp, 0, 0, 1).finished();
    const double vac_in = 1.0 - t_amp * t_amp;
    const Matrix2cd injection = (Matrix2cd() << vac_in, 0, 0, 0).finished();

    Matrix2cd w = Matrix2cd::Identity();   // accumulated input-to-output map
    Matrix2cd v = Matrix2cd::Zero();       // accumulated injected-vacuum correlators
    for (int i = 0; i < slices; ++i) {
        w = t_bs * (u * w);
        v = t_bs * (u * v * u.adjoint()) * t_bs + injection;
    }

    MomentState out;
    const Vector2cd means = w * Vector2cd(std::sqrt(n_p0), 0.0);
    out.mean_p = means(0);
    out.mean_s_dag = means(1);
    const Matrix2cd seed_normal = (Matrix2cd() << 1, 0, 0, 0).finished();
    out.normal_block = hermitize(w * seed_normal * w.adjoint() + v);
    out.anomalous_block = Matrix2cd::Zero();
    return out;
}

VarianceReport beamsplitter_slice_oracle(const EffectiveModel& model, int slices,
                                         double n_p0) {
    return variance_diff_photon(slice_oracle_moments(model, slices, n_p0), n_p0);
}

}  // namespace aptfwm

#include "aptfwm/apt_core.hpp"

#include <cmath>
#include <limits>

namespace aptfwm {

double EffectiveModel::beta() const {
    if (delta_k == 0.0) {
        return kappa == complexd(0.0) ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return std::abs(2.0 * kappa / delta_k);
}

void EffectiveModel::validate() const {
    if (!(length > 0.0)) {
        throw ConfigError("EffectiveModel: length must be positive, got " +
                          std::to_string(length));
    }
    if (alpha.real() < 0.0) {
        throw ConfigError("EffectiveModel: Re(alpha) must be non-negative, got " +
                          std::to_string(alpha.real()));
    }
    if (!std::isfinite(delta_k) || !std::isfinite(std::abs(kappa)) ||
        !std::isfinite(std::abs(alpha))) {
        throw ConfigError("EffectiveModel: non-finite parameter");
    }
}

const char* to_string(Regime r) {
    switch (r) {
        case Regime::SymmetryBroken: return "symmetry_broken";
        case Regime::ExceptionalPoint: return "exceptional_point";
        case Regime::SymmetricPhase: return "symmetric_phase";
    }
    return "unknown";
}

Matrix2cd build_hamiltonian(const EffectiveModel& model) {
    if (!model.lossless()) {
        throw ConfigError("build_hamiltonian: model has loss; use the lossy generator");
    }
    Matrix2cd h;
    h << -0.5 * model.delta_k, -model.kappa,
          model.kappa,          0.5 * model.delta_k;
    return h;
}

Spectrum spectrum(const EffectiveModel& model, double ep_tolerance) {
    if (!model.lossless()) {
        throw ConfigError("spectrum: model has loss; use the lossy generator");
    }
    Spectrum sp;
    sp.beta = model.beta();
    if (model.delta_k == 0.0) {
        if (model.kappa == complexd(0.0)) {
            sp.degenerate = true;  // zero matrix: flat spectrum, no coalescence
            sp.regime = Regime::SymmetryBroken;
            return sp;
        }
        // Limit branch: eigenvalues +-i|kappa| for real kappa at zero mismatch.
        sp.lambda_plus = complexd(0.0, std::abs(model.kappa));
        sp.lambda_minus = -sp.lambda_plus;
        sp.regime = Regime::SymmetricPhase;
        return sp;
    }
    // lambda = (dk/2) sqrt(1 - (2 kappa/dk)^2); reduces to (dk/2) sqrt(1-beta^2)
    // for real kappa and stays exact for complex kappa.
    const complexd q = 2.0 * model.kappa / model.delta_k;
    sp.lambda_plus = 0.5 * model.delta_k * std::sqrt(complexd(1.0) - q * q);
    sp.lambda_minus = -sp.lambda_plus;
    if (std::abs(sp.beta - 1.0) <= ep_tolerance) {
        sp.regime = Regime::ExceptionalPoint;
    } else {
        sp.regime = sp.beta < 1.0 ? Regime::SymmetryBroken : Regime::SymmetricPhase;
    }
    return sp;
}

namespace {

// cos(sqrt(z)) and sinc(sqrt(z)) = sin(sqrt(z))/sqrt(z) as entire functions of
// complex z; the series keeps both smooth through z = 0 where the square root
// is not differentiable.
struct TrigPair {
    complexd cos_v;
    complexd sinc_v;
};

TrigPair entire_trig(complexd z) {
    TrigPair out;
    if (std::abs(z) < 1e-4) {
        const complexd z2 = z * z;
        const complexd z3 = z2 * z;
        out.cos_v = 1.0 - z / 2.0 + z2 / 24.0 - z3 / 720.0;
        out.sinc_v = 1.0 - z / 6.0 + z2 / 120.0 - z3 / 5040.0;
        return out;
    }
    const complexd w = std::sqrt(z);
    out.cos_v = std::cos(w);
    out.sinc_v = std::sin(w) / w;
    return out;
}

}  // namespace

Matrix2cd propagator(const Matrix2cd& m, double length) {
    const complexd tau = m.trace();
    const Matrix2cd m0 = m - 0.5 * tau * Matrix2cd::Identity();
    // m0 is traceless, so m0^2 = -det(m0) * I (Cayley-Hamilton).
    const complexd lambda_sq = -m0.determinant();
    const complexd z = lambda_sq * length * length;
    const auto [cos_v, sinc_v] = entire_trig(z);
    const complexd phase = std::exp(complexd(0.0, -0.5 * length) * tau);
    return phase * (cos_v * Matrix2cd::Identity() -
                    complexd(0.0, length) * sinc_v * m0);
}

TransferCoefficients transfer_matrix(const EffectiveModel& model) {
    model.validate();
    if (!model.lossless()) {
        throw ConfigError("transfer_matrix: model has loss; use the lossy generator");
    }
    const Matrix2cd p = propagator(build_hamiltonian(model), model.length);
    return TransferCoefficients{p(0, 0), p(1, 0)};
}

GainReport gains(const TransferCoefficients& tc) {
    GainReport g;
    g.g_p = std::norm(tc.a);
    g.g_s = std::norm(tc.c);
    const double sum = g.g_p + g.g_s;
    if (sum == 0.0) {
        throw ConfigError("gains: A = C = 0 is not a valid transfer matrix");
    }
    g.g_p_norm = g.g_p / sum;
    g.g_s_norm = g.g_s / sum;
    return g;
}

SqueezingValue ideal_squeezing(const TransferCoefficients& tc) {
    SqueezingValue sv;
    sv.s = 1.0 / (std::norm(tc.a) + std::norm(tc.c));
    sv.s_db = 10.0 * std::log10(sv.s);
    return sv;
}

}  // namespace aptfwm

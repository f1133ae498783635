#include "aptfwm/fit.hpp"

#include <cmath>
#include <limits>

namespace aptfwm {

SweepAxis GainDataset::axis() const {
    if (axis_name == "density_per_cm3" || axis_name == "param_value") {
        return SweepAxis::Density;
    }
    if (axis_name == "omega_over_2pi_GHz") return SweepAxis::Rabi;
    throw DataError("GainDataset: unknown axis column '" + axis_name + "'");
}

void GainDataset::validate() const {
    (void)axis();
    const size_t n = param.size();
    if (g_p.size() != n || g_s.size() != n ||
        (!weight.empty() && weight.size() != n)) {
        throw DataError("GainDataset: column lengths disagree");
    }
    for (size_t i = 0; i < n; ++i) {
        if (!(g_p[i] > 0.0) || !(g_s[i] > 0.0)) {
            throw DataError("GainDataset: gains must be positive (row " +
                            std::to_string(i + 1) + ")");
        }
        if (!weight.empty() && !(weight[i] > 0.0)) {
            throw DataError("GainDataset: weights must be positive (row " +
                            std::to_string(i + 1) + ")");
        }
    }
}

const char* to_string(FitParameter p) {
    switch (p) {
        case FitParameter::DeltaK: return "delta_k";
        case FitParameter::G: return "g";
        case FitParameter::AlphaRef: return "alpha_ref";
    }
    return "unknown";
}

namespace {

void apply_parameters(PhysicalParams& p, const std::vector<FitParameter>& free,
                      const Eigen::VectorXd& values) {
    for (size_t i = 0; i < free.size(); ++i) {
        switch (free[i]) {
            case FitParameter::DeltaK: p.delta_k = values(i); break;
            case FitParameter::G: p.g = values(i); break;
            case FitParameter::AlphaRef: p.alpha_ref = values(i); break;
        }
    }
}

double initial_value(const PhysicalParams& p, FitParameter fp) {
    switch (fp) {
        case FitParameter::DeltaK: return p.delta_k;
        case FitParameter::G: return p.g;
        case FitParameter::AlphaRef: return p.alpha_ref;
    }
    return 0.0;
}

// Stacked per-row probe and Stokes residuals.
Eigen::VectorXd residuals(const GainDataset& data, const PhysicalParams& base,
                          SweepAxis axis, const std::vector<FitParameter>& free,
                          const Eigen::VectorXd& values, const FitOptions& opt) {
    PhysicalParams p = base;
    apply_parameters(p, free, values);
    const size_t n = data.param.size();
    Eigen::VectorXd r(2 * n);
    for (size_t i = 0; i < n; ++i) {
        const EffectiveModel model =
            effective_from_physical(at_axis_value(p, axis, data.param[i]));
        const LossyGenerator gen = build_lossy_generator(model);
        const auto tc = propagate_mean(gen, model.length, MomentState()).effective;
        const double gp = std::norm(tc.a);
        const double gs = std::norm(tc.c);
        const double w = data.weight.empty() ? 1.0 : std::sqrt(data.weight[i]);
        double rp, rs;
        if (opt.log_residuals) {
            if (!(gp > 0.0) || !(gs > 0.0)) {
                throw NumericError("fit: non-positive model gain under log residuals");
            }
            rp = std::log(gp) - std::log(data.g_p[i]);
            rs = std::log(gs) - std::log(data.g_s[i]);
        } else if (opt.relative_residuals) {
            rp = (gp - data.g_p[i]) / data.g_p[i];
            rs = (gs - data.g_s[i]) / data.g_s[i];
        } else {
            rp = gp - data.g_p[i];
            rs = gs - data.g_s[i];
        }
        r(2 * i) = w * rp;
        r(2 * i + 1) = w * rs;
    }
    return r;
}

}  // namespace

FitResult fit_delta_k(const GainDataset& data, const PhysicalParams& p,
                      const std::vector<FitParameter>& free, const FitOptions& options) {
    data.validate();
    if (free.empty()) throw ConfigError("fit: no free parameters");
    if (free.size() > 3) throw ConfigError("fit: too many free parameters");
    if (data.param.size() < free.size() + 2) {
        throw DataError("fit: need at least " + std::to_string(free.size() + 2) +
                        " rows for " + std::to_string(free.size()) + " parameters");
    }
    const SweepAxis axis = data.axis();
    const int np = static_cast<int>(free.size());

    // Work in parameters scaled by their starting values so the damping and
    // finite-difference steps are dimensionless.
    Eigen::VectorXd scale(np), u(np);
    for (int i = 0; i < np; ++i) {
        const double v0 = initial_value(p, free[i]);
        scale(i) = std::abs(v0) > 0.0 ? std::abs(v0) : 1.0;
        u(i) = v0 / scale(i);
    }

    auto eval = [&](const Eigen::VectorXd& scaled) {
        return residuals(data, p, axis, free, scaled.cwiseProduct(scale), options);
    };

    Eigen::VectorXd r = eval(u);
    double cost = r.squaredNorm();
    double lambda = 1e-3;
    bool converged = false;
    int iter = 0;

    Eigen::MatrixXd jtj(np, np);
    for (; iter < options.max_iterations && !converged; ++iter) {
        // Central-difference Jacobian in the scaled parameters.
        Eigen::MatrixXd j(r.size(), np);
        for (int k = 0; k < np; ++k) {
            const double h = 1e-6 * std::max(1.0, std::abs(u(k)));
            Eigen::VectorXd up = u, dn = u;
            up(k) += h;
            dn(k) -= h;
            j.col(k) = (eval(up) - eval(dn)) / (2.0 * h);
        }
        jtj = j.transpose() * j;
        const Eigen::VectorXd jtr = j.transpose() * r;

        bool stepped = false;
        for (int attempt = 0; attempt < 40; ++attempt) {
            Eigen::MatrixXd damped = jtj;
            damped.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-30);
            const Eigen::VectorXd delta = damped.ldlt().solve(-jtr);
            const Eigen::VectorXd trial = u + delta;
            const Eigen::VectorXd r_trial = eval(trial);
            const double cost_trial = r_trial.squaredNorm();
            if (cost_trial < cost) {
                u = trial;
                r = r_trial;
                cost = cost_trial;
                lambda = std::max(lambda / 5.0, 1e-12);
                stepped = true;
                if (delta.cwiseAbs().maxCoeff() < options.step_tolerance) {
                    converged = true;
                }
                break;
            }
            lambda *= 5.0;
        }
        if (!stepped) {
            converged = true;   // damping exhausted: stationary within tolerance
        }
    }

    FitResult result;
    result.free = free;
    result.values = u.cwiseProduct(scale);
    result.residual_norm = std::sqrt(cost);
    result.iterations = iter;
    result.converged = converged;
    result.params = p;
    apply_parameters(result.params, free, result.values);

    // Local covariance from the curvature at the optimum, rescaled to the
    // physical parameters.
    const int dof = static_cast<int>(r.size()) - np;
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(jtj);
    if (!lu.isInvertible() || dof <= 0) {
        result.identifiable = false;
        result.covariance = Eigen::MatrixXd::Constant(
            np, np, std::numeric_limits<double>::quiet_NaN());
    } else {
        const double sigma2 = cost / dof;
        const Eigen::MatrixXd cov_scaled = lu.inverse() * sigma2;
        result.covariance = scale.asDiagonal() * cov_scaled * scale.asDiagonal();
    }
    return result;
}

}  // namespace aptfwm

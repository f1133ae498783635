#include "aptfwm/sweeps.hpp"

#include <cmath>
#include <limits>

namespace aptfwm {

const char* to_string(SweepAxis axis) {
    return axis == SweepAxis::Density ? "density" : "rabi";
}

const char* axis_column(SweepAxis axis) {
    return axis == SweepAxis::Density ? "density_per_cm3" : "omega_over_2pi_GHz";
}

std::vector<double> linspace(double start, double stop, int points) {
    if (points < 2) throw ConfigError("linspace: need at least 2 points");
    if (!(stop > start)) throw ConfigError("linspace: stop must exceed start");
    std::vector<double> grid(points);
    const double h = (stop - start) / (points - 1);
    for (int i = 0; i < points; ++i) grid[i] = start + i * h;
    grid.back() = stop;
    return grid;
}

PhysicalParams at_axis_value(PhysicalParams p, SweepAxis axis, double value) {
    if (axis == SweepAxis::Density) {
        p.n_density = value;
    } else {
        p.omega_GHz = value;
    }
    return p;
}

SweepRecord evaluate_point(const PhysicalParams& p, SweepAxis axis, double value,
                           const SweepSettings& settings) {
    SweepRecord rec;
    rec.param_value = value;
    try {
        const PhysicalParams at = at_axis_value(p, axis, value);
        const EffectiveModel model = effective_from_physical(at);

        EffectiveModel lossless = model;
        lossless.alpha = 0.0;
        const Spectrum sp = spectrum(lossless, settings.ep_tolerance);
        rec.lambda_re = sp.lambda_plus.real();
        rec.lambda_im = sp.lambda_plus.imag();
        rec.regime = sp.regime;

        const SqueezingValue ideal = ideal_squeezing(transfer_matrix(lossless));
        rec.s_ideal = ideal.s;
        rec.s_ideal_db = ideal.s_db;

        const LossyGenerator gen = build_lossy_generator(model);
        const MomentState out = propagate_moments(gen, model.length,
                                                  vacuum_seed(settings.n_p0));
        const GainReport g = gains(
            propagate_mean(gen, model.length, vacuum_seed(settings.n_p0)).effective);
        rec.g_p = g.g_p;
        rec.g_s = g.g_s;
        rec.g_p_norm = g.g_p_norm;
        rec.g_s_norm = g.g_s_norm;

        const VarianceReport lossy = variance_diff_photon(out, settings.n_p0);
        rec.s_lossy = lossy.squeezing_s;
        rec.s_lossy_db = lossy.squeezing_db;

        const VarianceReport det = detected_squeezing(out, settings.detector,
                                                      settings.n_p0);
        rec.s_detected = det.squeezing_s;
        rec.s_detected_db = det.squeezing_db;
    } catch (const std::exception& e) {
        rec.ok = false;
        rec.error = e.what();
        const double nan = std::numeric_limits<double>::quiet_NaN();
        rec.lambda_re = rec.lambda_im = nan;
        rec.g_p = rec.g_s = rec.g_p_norm = rec.g_s_norm = nan;
        rec.s_ideal = rec.s_ideal_db = nan;
        rec.s_lossy = rec.s_lossy_db = nan;
        rec.s_detected = rec.s_detected_db = nan;
    }
    return rec;
}

std::vector<SweepRecord> sweep_serial(const PhysicalParams& p, SweepAxis axis,
                                      const std::vector<double>& grid,
                                      const SweepSettings& settings) {
    if (grid.size() < 2) throw ConfigError("sweep: need at least 2 grid points");
    std::vector<SweepRecord> records(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        records[i] = evaluate_point(p, axis, grid[i], settings);
    }
    return records;
}

std::vector<SweepRecord> sweep(const PhysicalParams& p, SweepAxis axis,
                               const std::vector<double>& grid,
                               const SweepSettings& settings) {
    if (grid.size() < 2) throw ConfigError("sweep: need at least 2 grid points");
    std::vector<SweepRecord> records(grid.size());
    const long n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        records[i] = evaluate_point(p, axis, grid[i], settings);
    }
    return records;
}

namespace {

double beta_at(const PhysicalParams& p, SweepAxis axis, double value) {
    return effective_from_physical(at_axis_value(p, axis, value)).beta();
}

double detected_at(const PhysicalParams& p, SweepAxis axis, double value,
                   const SweepSettings& settings) {
    const EffectiveModel model = effective_from_physical(at_axis_value(p, axis, value));
    const LossyGenerator gen = build_lossy_generator(model);
    const MomentState out =
        propagate_moments(gen, model.length, vacuum_seed(settings.n_p0));
    return detected_squeezing(out, settings.detector, settings.n_p0).squeezing_s;
}

}  // namespace

double locate_ep(const PhysicalParams& p, SweepAxis axis, double lo, double hi,
                 double rel_tol) {
    if (!(hi > lo)) throw ConfigError("locate_ep: empty bracket");
    double f_lo = beta_at(p, axis, lo) - 1.0;
    double f_hi = beta_at(p, axis, hi) - 1.0;
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if (f_lo * f_hi > 0.0) {
        throw ConfigError("locate_ep: bracket does not straddle the transition");
    }
    while ((hi - lo) > rel_tol * std::max(std::abs(lo), std::abs(hi))) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = beta_at(p, axis, mid) - 1.0;
        if (f_mid == 0.0) return mid;
        if (f_lo * f_mid < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    return 0.5 * (lo + hi);
}

OptimumReport optimal_squeezing(const PhysicalParams& p, SweepAxis axis,
                                const std::vector<double>& grid,
                                const SweepSettings& settings) {
    if (grid.size() < 3) throw ConfigError("optimal_squeezing: need at least 3 points");
    size_t best = 0;
    double best_s = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < grid.size(); ++i) {
        const double s = detected_at(p, axis, grid[i], settings);
        if (s < best_s) {
            best_s = s;
            best = i;
        }
    }

    OptimumReport rep;
    if (best == 0 || best + 1 == grid.size()) {
        rep.boundary = true;
        rep.param_value = grid[best];
        rep.s_detected = best_s;
        rep.s_detected_db = 10.0 * std::log10(best_s);
        return rep;
    }

    // Golden-section on the bracketing interval.
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = grid[best - 1], b = grid[best + 1];
    const double tol = 1e-4 * (grid.back() - grid.front());
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = detected_at(p, axis, x1, settings);
    double f2 = detected_at(p, axis, x2, settings);
    while ((b - a) > tol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = detected_at(p, axis, x1, settings);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = detected_at(p, axis, x2, settings);
        }
    }
    rep.param_value = 0.5 * (a + b);
    rep.s_detected = detected_at(p, axis, rep.param_value, settings);
    rep.s_detected_db = 10.0 * std::log10(rep.s_detected);
    return rep;
}

}  // namespace aptfwm

#include "aptfwm/physical.hpp"

#include <cmath>

namespace aptfwm {

namespace {
constexpr double kTorrToPa = 133.322368;
}

void PhysicalParams::validate() const {
    if (!(omega_GHz > 0.0) || !(omega_ref_GHz > 0.0)) {
        throw ConfigError("PhysicalParams: pump Rabi frequency must be positive");
    }
    if (n_density < 0.0) {
        throw ConfigError("PhysicalParams: density must be non-negative");
    }
    if (!(length > 0.0)) {
        throw ConfigError("PhysicalParams: length must be positive");
    }
    if (delta2_GHz() == 0.0) {
        throw ConfigError("PhysicalParams: two-photon-ladder detuning delta2 is zero");
    }
    if (alpha_ref < 0.0) {
        throw ConfigError("PhysicalParams: alpha_ref must be non-negative");
    }
    if (!(n_ref > 0.0)) {
        throw ConfigError("PhysicalParams: n_ref must be positive");
    }
}

complexd kappa_from_physical(const PhysicalParams& p) {
    p.validate();
    if (p.n_density == 0.0) return 0.0;
    if (p.g == 0.0) {
        throw ConfigError(
            "kappa_from_physical: uncalibrated coupling (set g or an EP density)");
    }
    const double pump = std::pow(p.omega_GHz / p.omega_ref_GHz, p.p_kappa);
    return p.g * p.n_density /
           (2.0 * constants::c_light * p.delta2_rad_per_s()) * pump;
}

double alpha_from_physical(const PhysicalParams& p) {
    p.validate();
    const double pump = std::pow(p.omega_ref_GHz / p.omega_GHz, p.p_alpha);
    return p.alpha_ref * (p.n_density / p.n_ref) * pump;
}

EffectiveModel effective_from_physical(const PhysicalParams& p) {
    EffectiveModel m;
    m.delta_k = p.delta_k;
    m.kappa = kappa_from_physical(p);
    m.alpha = alpha_from_physical(p);
    m.length = p.length;
    m.validate();
    return m;
}

double calibrate_g_for_ep_density(const PhysicalParams& p, double ep_density_cm3) {
    if (!(ep_density_cm3 > 0.0)) {
        throw ConfigError("calibrate_g_for_ep_density: EP density must be positive");
    }
    if (p.delta_k == 0.0) {
        throw ConfigError("calibrate_g_for_ep_density: needs a non-zero phase mismatch");
    }
    // beta = 1 at N*: g N* pump / (2 c delta2) = |delta_k| / 2.
    const double pump = std::pow(p.omega_GHz / p.omega_ref_GHz, p.p_kappa);
    return std::abs(p.delta_k) * constants::c_light * p.delta2_rad_per_s() /
           (ep_density_cm3 * pump);
}

double density_from_temperature(double t_celsius, const VaporPressureCurve& curve) {
    if (!(t_celsius > 0.0) || !(t_celsius < 200.0)) {
        throw ConfigError("density_from_temperature: temperature out of range (0, 200) C");
    }
    const double t_kelvin = t_celsius + 273.15;
    const double p_torr = std::pow(10.0, curve.a - curve.b_K / t_kelvin);
    const double p_pa = p_torr * kTorrToPa;
    const double n_per_m3 = p_pa / (constants::k_boltzmann * t_kelvin);
    return n_per_m3 * 1e-6 * curve.abundance;
}

double temperature_from_density(double n_cm3, const VaporPressureCurve& curve) {
    if (!(n_cm3 > 0.0)) {
        throw ConfigError("temperature_from_density: density must be positive");
    }
    // N(T) is strictly increasing; bisect on the supported range.
    double lo = 1e-6, hi = 200.0 - 1e-6;
    if (n_cm3 < density_from_temperature(lo, curve) ||
        n_cm3 > density_from_temperature(hi, curve)) {
        throw ConfigError("temperature_from_density: density outside the curve range");
    }
    for (int i = 0; i < 200 && (hi - lo) > 1e-12 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (density_from_temperature(mid, curve) < n_cm3 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace aptfwm

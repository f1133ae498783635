#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "aptfwm/sweeps.hpp"

using namespace aptfwm;
using doctest::Approx;

namespace {

PhysicalParams fig_params() {
    PhysicalParams p;
    p.delta_k = 210.0;
    p.delta1_GHz = 0.7;
    p.length = 0.019;
    p.alpha_ref = 6.0;
    p.n_ref = 7e12;
    p.g = calibrate_g_for_ep_density(p, 7e12);
    return p;
}

SweepSettings fig_settings() {
    SweepSettings s;
    s.n_p0 = 1e6;
    s.detector.eta_p = 0.78;
    s.detector.eta_s = 0.83;
    return s;
}

}  // namespace

TEST_CASE("linspace spans the interval inclusively") {
    const auto g = linspace(1.0, 3.0, 5);
    REQUIRE(g.size() == 5);
    CHECK(g.front() == 1.0);
    CHECK(g.back() == 3.0);
    CHECK(g[2] == Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS((void)linspace(1.0, 3.0, 1), ConfigError);
    CHECK_THROWS_AS((void)linspace(3.0, 1.0, 5), ConfigError);
}

TEST_CASE("a sweep record is the point pipeline evaluated at that value") {
    const PhysicalParams p = fig_params();
    const SweepSettings settings = fig_settings();
    const double value = 5.5e12;
    const SweepRecord rec = evaluate_point(p, SweepAxis::Density, value, settings);
    REQUIRE(rec.ok);
    CHECK(rec.param_value == value);

    const PhysicalParams at = at_axis_value(p, SweepAxis::Density, value);
    CHECK(at.n_density == value);
    EffectiveModel lossless = effective_from_physical(at);
    const EffectiveModel lossy = lossless;
    lossless.alpha = 0.0;
    const Spectrum sp = spectrum(lossless, settings.ep_tolerance);
    CHECK(rec.lambda_re == Approx(sp.lambda_plus.real()).epsilon(1e-14));
    CHECK(rec.lambda_im == Approx(sp.lambda_plus.imag()).epsilon(1e-14));
    CHECK(rec.regime == sp.regime);
    CHECK(rec.s_ideal ==
          Approx(ideal_squeezing(transfer_matrix(lossless)).s).epsilon(1e-14));

    const auto gen = build_lossy_generator(lossy);
    const auto mean = propagate_mean(gen, lossy.length, vacuum_seed(settings.n_p0));
    const GainReport g = gains(mean.effective);
    CHECK(rec.g_p == Approx(g.g_p).epsilon(1e-14));
    CHECK(rec.g_s_norm == Approx(g.g_s_norm).epsilon(1e-14));

    const MomentState state = propagate_moments(gen, lossy.length,
                                                vacuum_seed(settings.n_p0));
    CHECK(rec.s_lossy ==
          Approx(variance_diff_photon(state, settings.n_p0).squeezing_s).epsilon(1e-13));
    CHECK(rec.s_detected ==
          Approx(detected_squeezing(state, settings.detector, settings.n_p0).squeezing_s)
              .epsilon(1e-13));
}

TEST_CASE("the rabi axis sweeps pump strength at fixed density") {
    PhysicalParams p = fig_params();
    p.n_density = 7.9e12;
    const PhysicalParams at = at_axis_value(p, SweepAxis::Rabi, 0.3);
    CHECK(at.omega_GHz == 0.3);
    CHECK(at.n_density == 7.9e12);
    const SweepRecord rec = evaluate_point(p, SweepAxis::Rabi, 0.3, fig_settings());
    CHECK(rec.ok);
    CHECK(rec.regime == Regime::SymmetryBroken);
}

TEST_CASE("density sweep crosses patterns in the expected order") {
    const auto grid = linspace(1e12, 2.2e13, 85);
    const auto records = sweep(fig_params(), SweepAxis::Density, grid, fig_settings());
    REQUIRE(records.size() == grid.size());

    // Count broken <-> symmetric flips; a grid point that lands exactly on
    // the coalescence reports its own regime and separates the two sides.
    int transitions = 0;
    double flip_lo = 0.0, flip_hi = 0.0;
    Regime last = records.front().regime;
    double last_value = records.front().param_value;
    for (size_t i = 0; i < records.size(); ++i) {
        REQUIRE(records[i].ok);
        // Lossless eigenvalues are real below the transition, imaginary above.
        if (records[i].regime == Regime::SymmetryBroken) CHECK(records[i].lambda_im == 0.0);
        if (records[i].regime == Regime::SymmetricPhase) CHECK(records[i].lambda_re == 0.0);
        if (records[i].regime == Regime::ExceptionalPoint) continue;
        if (records[i].regime != last) {
            ++transitions;
            flip_lo = last_value;
            flip_hi = records[i].param_value;
        }
        last = records[i].regime;
        last_value = records[i].param_value;
    }
    CHECK(transitions == 1);
    CHECK(records.front().regime == Regime::SymmetryBroken);
    CHECK(records.back().regime == Regime::SymmetricPhase);

    // The coalescence sits inside the verified density band.
    CHECK(flip_lo > 5e12);
    CHECK(flip_hi < 9e12);
}

TEST_CASE("one failing grid point does not abort the sweep") {
    PhysicalParams p = fig_params();
    p.n_density = 7.9e12;
    // Omega = 0 makes the loss mapping blow up; that point must fail alone.
    const std::vector<double> grid = {0.0, 0.3, 0.42};
    const auto records = sweep(p, SweepAxis::Rabi, grid, fig_settings());
    REQUIRE(records.size() == 3);
    CHECK_FALSE(records[0].ok);
    CHECK(!records[0].error.empty());
    CHECK(std::isnan(records[0].g_p));
    CHECK(records[1].ok);
    CHECK(records[2].ok);
}

TEST_CASE("parallel and serial sweeps are interchangeable") {
    const auto grid = linspace(1e12, 2.2e13, 40);
    const auto a = sweep(fig_params(), SweepAxis::Density, grid, fig_settings());
    const auto b = sweep_serial(fig_params(), SweepAxis::Density, grid, fig_settings());
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].param_value == b[i].param_value);
        CHECK(a[i].g_p == b[i].g_p);
        CHECK(a[i].s_detected == b[i].s_detected);
        CHECK(a[i].regime == b[i].regime);
        CHECK(a[i].ok == b[i].ok);
    }
}

TEST_CASE("EP location matches the calibrated density on the density axis") {
    const PhysicalParams p = fig_params();
    const double ep = locate_ep(p, SweepAxis::Density, 1e12, 2.2e13);
    CHECK(ep == Approx(7e12).epsilon(1e-8));
    CHECK_THROWS_AS((void)locate_ep(p, SweepAxis::Density, 1e12, 3e12), ConfigError);
}

TEST_CASE("EP location on the rabi axis follows the pump scaling") {
    PhysicalParams p = fig_params();
    p.n_density = 7.9e12;
    const double ep = locate_ep(p, SweepAxis::Rabi, 0.2, 0.7);
    // kappa ~ N Omega^2: coalescence at omega_ref sqrt(N*/N).
    CHECK(ep == Approx(0.42 * std::sqrt(7.0 / 7.9)).epsilon(1e-8));
}

TEST_CASE("without loss the best squeezing sits at the top of the grid") {
    PhysicalParams p = fig_params();
    p.alpha_ref = 0.0;
    SweepSettings settings = fig_settings();
    settings.detector = DetectorPair{};   // ideal detection
    const auto grid = linspace(1e12, 2.2e13, 41);
    const OptimumReport rep = optimal_squeezing(p, SweepAxis::Density, grid, settings);
    CHECK(rep.boundary);
    CHECK(rep.param_value == grid.back());
}

TEST_CASE("with loss the optimum is interior and refined below grid resolution") {
    const PhysicalParams p = fig_params();
    const SweepSettings settings = fig_settings();
    const auto coarse = linspace(1e12, 2.2e13, 43);
    const OptimumReport rep = optimal_squeezing(p, SweepAxis::Density, coarse, settings);
    CHECK_FALSE(rep.boundary);
    CHECK(rep.param_value > coarse.front());
    CHECK(rep.param_value < coarse.back());
    CHECK(rep.s_detected < 1.0);

    // A much finer grid must agree to within the refinement tolerance.
    const auto fine = linspace(1e12, 2.2e13, 2001);
    double best_v = 0.0, best_s = 2.0;
    for (const double v : fine) {
        const double s =
            evaluate_point(p, SweepAxis::Density, v, settings).s_detected;
        if (s < best_s) {
            best_s = s;
            best_v = v;
        }
    }
    CHECK(rep.param_value == Approx(best_v).epsilon(2e-3));
    CHECK(rep.s_detected <= best_s + 1e-6);
}

TEST_CASE("axis names round-trip") {
    CHECK(std::string(to_string(SweepAxis::Density)) == "density");
    CHECK(std::string(to_string(SweepAxis::Rabi)) == "rabi");
    CHECK(std::string(axis_column(SweepAxis::Density)) == "density_per_cm3");
    CHECK(std::string(axis_column(SweepAxis::Rabi)) == "omega_over_2pi_GHz");
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>

#include "aptfwm/sweeps.hpp"

using namespace aptfwm;

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

bool bitwise_equal(double a, double b) {
    return std::memcmp(&a, &b, sizeof(double)) == 0;
}

bool records_identical(const std::vector<SweepRecord>& a,
                       const std::vector<SweepRecord>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (!bitwise_equal(a[i].param_value, b[i].param_value) ||
            !bitwise_equal(a[i].lambda_re, b[i].lambda_re) ||
            !bitwise_equal(a[i].lambda_im, b[i].lambda_im) ||
            !bitwise_equal(a[i].g_p, b[i].g_p) || !bitwise_equal(a[i].g_s, b[i].g_s) ||
            !bitwise_equal(a[i].g_p_norm, b[i].g_p_norm) ||
            !bitwise_equal(a[i].g_s_norm, b[i].g_s_norm) ||
            !bitwise_equal(a[i].s_ideal, b[i].s_ideal) ||
            !bitwise_equal(a[i].s_lossy, b[i].s_lossy) ||
            !bitwise_equal(a[i].s_detected, b[i].s_detected) ||
            a[i].regime != b[i].regime || a[i].ok != b[i].ok ||
            a[i].error != b[i].error) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("the parallel sweep is bitwise identical to the serial reference") {
    const PhysicalParams p = fig_params();
    SweepSettings settings;
    settings.detector.eta_p = 0.78;
    settings.detector.eta_s = 0.83;
    const auto grid = linspace(1e12, 2.2e13, 200);

    const auto serial = sweep_serial(p, SweepAxis::Density, grid, settings);
    const auto parallel = sweep(p, SweepAxis::Density, grid, settings);
    CHECK(records_identical(serial, parallel));
}

TEST_CASE("repeated parallel sweeps do not depend on scheduling") {
    const PhysicalParams p = fig_params();
    SweepSettings settings;
    const auto grid = linspace(1e12, 2.2e13, 64);
    const auto first = sweep(p, SweepAxis::Density, grid, settings);
    for (int run = 0; run < 3; ++run) {
        CHECK(records_identical(first, sweep(p, SweepAxis::Density, grid, settings)));
    }
}

TEST_CASE("failed points keep their slots in both kernels") {
    PhysicalParams p = fig_params();
    p.n_density = 7.9e12;
    const std::vector<double> grid = {0.0, 0.3, 0.42, 0.5};   // omega = 0 fails
    const auto serial = sweep_serial(p, SweepAxis::Rabi, grid, SweepSettings{});
    const auto parallel = sweep(p, SweepAxis::Rabi, grid, SweepSettings{});
    CHECK(records_identical(serial, parallel));
    CHECK_FALSE(parallel[0].ok);
    CHECK(parallel[1].ok);
}

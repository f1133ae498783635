#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "aptfwm/dataset.hpp"
#include "aptfwm/fit.hpp"

using namespace aptfwm;
using doctest::Approx;

namespace {

PhysicalParams true_params() {
    PhysicalParams p;
    p.delta_k = 210.0;
    p.delta1_GHz = 0.7;
    p.length = 0.019;
    p.alpha_ref = 6.0;
    p.n_ref = 7e12;
    p.g = calibrate_g_for_ep_density(p, 7e12);
    return p;
}

GainDataset clean_dataset() {
    return synthetic_gain_dataset(true_params(), SweepAxis::Density,
                                  linspace(2e12, 1.6e13, 20), 0.0, 1);
}

}  // namespace

TEST_CASE("noiseless gains pin the phase mismatch from a 15 percent offset") {
    const GainDataset data = clean_dataset();
    PhysicalParams start = true_params();
    start.delta_k = 241.5;
    const FitResult res = fit_delta_k(data, start, {FitParameter::DeltaK});
    REQUIRE(res.converged);
    CHECK(res.identifiable);
    CHECK(res.values(0) == Approx(210.0).epsilon(1e-6));
    CHECK(res.params.delta_k == Approx(210.0).epsilon(1e-6));
    CHECK(res.residual_norm < 1e-6);
    CHECK(res.iterations >= 1);
    // Everything that was not free stays put.
    CHECK(res.params.g == start.g);
    CHECK(res.params.alpha_ref == start.alpha_ref);
}

TEST_CASE("the coupling calibration is recoverable when the mismatch is known") {
    const GainDataset data = clean_dataset();
    PhysicalParams start = true_params();
    const double g_true = start.g;
    start.g = 0.8 * g_true;
    const FitResult res = fit_delta_k(data, start, {FitParameter::G});
    REQUIRE(res.converged);
    CHECK(res.values(0) == Approx(g_true).epsilon(1e-6));

    // The recovered coupling reproduces the coalescence density.
    const double ep = locate_ep(res.params, SweepAxis::Density, 1e12, 2.2e13);
    CHECK(ep == Approx(7e12).epsilon(1e-6));
}

TEST_CASE("multiplicative noise leaves the mismatch within its scatter") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const GainDataset data = synthetic_gain_dataset(
            true_params(), SweepAxis::Density, linspace(2e12, 1.6e13, 20), 0.03, seed);
        PhysicalParams start = true_params();
        start.delta_k = 241.5;
        const FitResult res = fit_delta_k(data, start, {FitParameter::DeltaK});
        CAPTURE(seed);
        REQUIRE(res.converged);
        CHECK(std::abs(res.values(0) - 210.0) / 210.0 < 0.02);
        CHECK(res.covariance(0, 0) > 0.0);
        // The quoted uncertainty should cover the actual miss within a few sigma.
        const double sigma = std::sqrt(res.covariance(0, 0));
        CHECK(std::abs(res.values(0) - 210.0) < 6.0 * sigma + 1e-9);
    }
}

TEST_CASE("log residuals recover the same optimum on clean data") {
    const GainDataset data = clean_dataset();
    PhysicalParams start = true_params();
    start.delta_k = 241.5;
    FitOptions opt;
    opt.log_residuals = true;
    const FitResult res = fit_delta_k(data, start, {FitParameter::DeltaK}, opt);
    REQUIRE(res.converged);
    CHECK(res.values(0) == Approx(210.0).epsilon(1e-6));
}

TEST_CASE("tiny weights silence an outlier row") {
    GainDataset data = clean_dataset();
    data.weight.assign(data.param.size(), 1.0);
    data.g_p[7] *= 3.0;   // corrupted point
    data.weight[7] = 1e-12;
    PhysicalParams start = true_params();
    start.delta_k = 241.5;
    const FitResult res = fit_delta_k(data, start, {FitParameter::DeltaK});
    REQUIRE(res.converged);
    CHECK(res.values(0) == Approx(210.0).epsilon(1e-4));
}

TEST_CASE("a rabi-axis dataset fits through the pump mapping") {
    PhysicalParams p = true_params();
    p.n_density = 7.9e12;
    const GainDataset data = synthetic_gain_dataset(p, SweepAxis::Rabi,
                                                    linspace(0.25, 0.65, 15), 0.0, 2);
    CHECK(data.axis() == SweepAxis::Rabi);
    PhysicalParams start = p;
    start.delta_k = 180.0;
    const FitResult res = fit_delta_k(data, start, {FitParameter::DeltaK});
    REQUIRE(res.converged);
    CHECK(res.values(0) == Approx(210.0).epsilon(1e-6));
}

TEST_CASE("fit input validation") {
    const GainDataset data = clean_dataset();
    const PhysicalParams start = true_params();

    CHECK_THROWS_AS((void)fit_delta_k(data, start, {}), ConfigError);

    GainDataset tiny = data;
    tiny.param.resize(2);
    tiny.g_p.resize(2);
    tiny.g_s.resize(2);
    CHECK_THROWS_AS((void)fit_delta_k(tiny, start, {FitParameter::DeltaK}), DataError);

    GainDataset ragged = data;
    ragged.g_s.pop_back();
    CHECK_THROWS_AS(ragged.validate(), DataError);

    GainDataset negative = data;
    negative.g_p[3] = -0.5;
    CHECK_THROWS_AS(negative.validate(), DataError);

    GainDataset zero_weight = data;
    zero_weight.weight.assign(zero_weight.param.size(), 1.0);
    zero_weight.weight[0] = 0.0;
    CHECK_THROWS_AS(zero_weight.validate(), DataError);

    GainDataset bad_axis = data;
    bad_axis.axis_name = "voltage";
    CHECK_THROWS_AS((void)bad_axis.axis(), DataError);
}

TEST_CASE("synthetic datasets are deterministic in the seed") {
    const GainDataset a = synthetic_gain_dataset(true_params(), SweepAxis::Density,
                                                 linspace(2e12, 1.6e13, 20), 0.03, 42);
    const GainDataset b = synthetic_gain_dataset(true_params(), SweepAxis::Density,
                                                 linspace(2e12, 1.6e13, 20), 0.03, 42);
    const GainDataset c = synthetic_gain_dataset(true_params(), SweepAxis::Density,
                                                 linspace(2e12, 1.6e13, 20), 0.03, 43);
    REQUIRE(a.param.size() == b.param.size());
    bool all_equal = true;
    bool any_differ_from_c = false;
    for (size_t i = 0; i < a.param.size(); ++i) {
        all_equal = all_equal && a.g_p[i] == b.g_p[i] && a.g_s[i] == b.g_s[i];
        any_differ_from_c =
            any_differ_from_c || a.g_p[i] != c.g_p[i] || a.g_s[i] != c.g_s[i];
    }
    CHECK(all_equal);
    CHECK(any_differ_from_c);
    CHECK_THROWS_AS((void)synthetic_gain_dataset(true_params(), SweepAxis::Density,
                                                 linspace(2e12, 1.6e13, 20), 0.5, 1),
                    ConfigError);
}

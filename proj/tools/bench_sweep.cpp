// Times the parallel density-sweep kernel against the serial reference on an
// identical workload and checks that both produce the same records.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "aptfwm/physical.hpp"
#include "aptfwm/sweeps.hpp"

using namespace aptfwm;
using clock_type = std::chrono::steady_clock;

namespace {

PhysicalParams bench_params() {
    PhysicalParams p;
    p.delta_k = 210.0;
    p.delta1_GHz = 0.7;
    p.length = 0.019;
    p.alpha_ref = 6.0;
    p.n_ref = 7e12;
    p.g = calibrate_g_for_ep_density(p, 7e12);
    return p;
}

double run_once(bool parallel, const PhysicalParams& p, const std::vector<double>& grid,
                const SweepSettings& settings, std::vector<SweepRecord>& out) {
    const auto t0 = clock_type::now();
    out = parallel ? sweep(p, SweepAxis::Density, grid, settings)
                   : sweep_serial(p, SweepAxis::Density, grid, settings);
    const auto t1 = clock_type::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

bool identical(const std::vector<SweepRecord>& a, const std::vector<SweepRecord>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (std::memcmp(&a[i].param_value, &b[i].param_value, sizeof(double)) != 0 ||
            std::memcmp(&a[i].g_p, &b[i].g_p, sizeof(double)) != 0 ||
            std::memcmp(&a[i].s_detected, &b[i].s_detected, sizeof(double)) != 0 ||
            a[i].ok != b[i].ok) {
            return false;
        }
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    int points = 400;
    int repeats = 3;
    if (argc > 1) points = std::max(2, std::atoi(argv[1]));
    if (argc > 2) repeats = std::max(1, std::atoi(argv[2]));

    const PhysicalParams p = bench_params();
    const auto grid = linspace(1e12, 2.2e13, points);
    SweepSettings settings;
    settings.n_p0 = 1e6;
    settings.detector.eta_p = 0.78;
    settings.detector.eta_s = 0.83;

#ifdef _OPENMP
    const int threads = omp_get_max_threads();
#else
    const int threads = 1;
#endif
    std::printf("sweep benchmark: %d points, best of %d, %d thread(s)\n", points,
                repeats, threads);

    std::vector<SweepRecord> serial_records, parallel_records;
    double t_serial = 1e300, t_parallel = 1e300;
    for (int r = 0; r < repeats; ++r) {
        std::vector<SweepRecord> tmp;
        t_serial = std::min(t_serial, run_once(false, p, grid, settings, tmp));
        if (r == repeats - 1) serial_records = std::move(tmp);
        t_parallel = std::min(t_parallel, run_once(true, p, grid, settings, tmp));
        if (r == repeats - 1) parallel_records = std::move(tmp);
    }

    std::printf("  serial   : %8.2f ms  (%.3f ms/point)\n", 1e3 * t_serial,
                1e3 * t_serial / points);
    std::printf("  parallel : %8.2f ms  (%.3f ms/point)\n", 1e3 * t_parallel,
                1e3 * t_parallel / points);
    std::printf("  speedup  : %.2fx\n", t_serial / t_parallel);

    if (!identical(serial_records, parallel_records)) {
        std::printf("MISMATCH: serial and parallel records differ\n");
        return 1;
    }
    std::printf("  records  : identical\n");
    return 0;
}

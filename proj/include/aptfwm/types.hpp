#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace aptfwm {

using complexd = std::complex<double>;
using Eigen::Matrix2cd;
using Eigen::Matrix2d;
using Eigen::Vector2cd;

// Bad or inconsistent parameters (config files, preconditions). CLI exit code 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failure: non-convergent integration, branch-cut trouble, loss of
// positivity. CLI exit code 2.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed dataset files. CLI exit code 3.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace constants {
inline constexpr double c_light = 299792458.0;        // m/s
inline constexpr double k_boltzmann = 1.380649e-23;   // J/K
// Rb-85 ground-state hyperfine splitting, GHz.
inline constexpr double hyperfine_GHz = 3.0357;
inline constexpr double pi = 3.141592653589793238462643383279502884;
}  // namespace constants

}  // namespace aptfwm

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace urm {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;      // pure-state amplitudes, dim d or d*d
using Matrix = Eigen::MatrixXcd;      // operators, density matrices, basis columns
using RealVector = Eigen::VectorXd;

// Global tolerances. Dimensions stay tiny (d <= 31), so double precision
// leaves several orders of magnitude of headroom below these.
inline constexpr double kAssertTol = 1e-9;           // default check tolerance
inline constexpr double kNormTol = 1e-12;            // state normalization
inline constexpr double kSupportThreshold = 1e-12;   // Born-probability support cut

}  // namespace urm

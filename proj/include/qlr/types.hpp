#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace qlr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

/// Numerical tolerances for dense double-precision algebra at d <= 64.
/// Every check that uses one of these accepts an override.
struct Tolerances {
  double herm = 1e-10;   // hermiticity deviation
  double trace = 1e-10;  // trace normalization
  double psd = 1e-10;    // allowed negative eigenvalue magnitude
  double rank = 1e-12;   // full-rank threshold on min eigenvalue
  double spec = 1e-9;    // kernel / spectral classification
};

inline const Tolerances kDefaultTol{};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not match.
struct DimensionError : Error {
  using Error::Error;
};

/// A documented precondition of an operation was violated.
struct PreconditionError : Error {
  using Error::Error;
};

/// The computation cannot be completed reliably (singular solve,
/// defective spectrum, tolerance blow-up).
struct NumericalError : Error {
  using Error::Error;
};

}  // namespace qlr

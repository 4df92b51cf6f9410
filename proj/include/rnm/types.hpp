#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace rnm {

using Real = double;
using Complex = std::complex<double>;

using VecX = Eigen::VectorXd;
using VecXc = Eigen::VectorXcd;
using MatX = Eigen::MatrixXd;
using MatXc = Eigen::MatrixXcd;

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid argument or non-finite evaluation.
struct DomainError : Error {
  using Error::Error;
};

// Requested feature not available for this potential/region combination.
struct UnsupportedError : Error {
  using Error::Error;
};

// Quadrature failed to converge or a tolerance check failed.
struct QuadratureError : Error {
  using Error::Error;
};

// An assumption the method relies on was violated (containment, positivity,
// injectivity).
struct HypothesisError : Error {
  using Error::Error;
};

// Evaluation at or too close to a pole / branch point.
struct PoleError : Error {
  using Error::Error;
};

// Moment matrix not numerically positive definite.
struct ConditioningError : Error {
  int pivot;
  ConditioningError(const std::string& msg, int pivot_index)
      : Error(msg), pivot(pivot_index) {}
};

// Config parsing / validation failure (CLI exit code 2).
struct ConfigError : Error {
  using Error::Error;
};

// Numerical failure in a solver or sampler (CLI exit code 3).
struct NumericalError : Error {
  using Error::Error;
};

}  // namespace rnm

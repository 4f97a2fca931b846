#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace hermclust {

using Index = std::int64_t;
using Complex = std::complex<double>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorXd = Vector<double>;
using VectorXc = Vector<Complex>;
using MatrixXd = Matrix<double>;
using MatrixXc = Matrix<Complex>;

/// Label carried by vertices of total degree zero; they never enter a spectral stage.
inline constexpr int kIsolatedLabel = -1;

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad caller input: malformed files, out-of-range ids, violated preconditions.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An iterative routine ran out of iterations before meeting its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

/// Dense materialization was requested above the size guard.
class SizeGuardError : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace hermclust

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>

namespace eprfw {

using complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Matrix4 = Eigen::Matrix4d;
using Vector4 = Eigen::Vector4d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr complex kI{0.0, 1.0};

/// Pauli matrices; index 0 is the identity.
inline const Matrix2c& pauli(int k) {
  static const Matrix2c table[4] = {
      (Matrix2c() << 1, 0, 0, 1).finished(),
      (Matrix2c() << 0, 1, 1, 0).finished(),
      (Matrix2c() << 0, -kI, kI, 0).finished(),
      (Matrix2c() << 1, 0, 0, -1).finished(),
  };
  return table[k];
}

/// Minkowski metric diag(-1, +1, +1, +1). It is its own inverse.
inline const Matrix4& minkowski() {
  static const Matrix4 eta = Eigen::Vector4d(-1.0, 1.0, 1.0, 1.0).asDiagonal();
  return eta;
}

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
///
/// The argument is scaled by 2^-s until its 1-norm is at most 1/2, the series
/// is summed until the next term no longer changes the sum in double
/// precision, and the result is squared s times. Intended for the small
/// fixed-size matrices used throughout this library.
template <typename Derived>
typename Derived::PlainObject expm(const Eigen::MatrixBase<Derived>& a) {
  using Plain = typename Derived::PlainObject;
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  }
  const Plain scaled = a / std::ldexp(1.0, squarings);

  Plain result = Plain::Identity(a.rows(), a.cols());
  Plain term = Plain::Identity(a.rows(), a.cols());
  for (int k = 1; k <= 40; ++k) {
    term = (term * scaled) / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() <= 1e-18 * result.cwiseAbs().maxCoeff()) {
      break;
    }
  }
  for (int i = 0; i < squarings; ++i) {
    result = (result * result).eval();
  }
  return result;
}

/// Largest entrywise magnitude of a - b.
template <typename A, typename B>
double max_abs_diff(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace eprfw

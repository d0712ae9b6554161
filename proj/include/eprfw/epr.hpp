#pragma once

// Two-particle spin states, their evolution under per-particle transport
// operators, and CHSH evaluation.
//
// Product basis order is (|uu>, |ud>, |du>, |dd>) with the particle sent
// toward +Phi as the first factor.

#include "eprfw/errors.hpp"
#include "eprfw/kinematics.hpp"
#include "eprfw/linalg.hpp"
#include "eprfw/transport.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace eprfw {

inline const double kTsirelson = 2.0 * std::sqrt(2.0);

/// Amplitudes of a (possibly unnormalized) two-qubit pure state.
struct TwoQubitState {
  Eigen::Vector4cd amp = Eigen::Vector4cd::Zero();

  double norm() const { return amp.norm(); }
  complex inner(const TwoQubitState& other) const { return amp.dot(other.amp); }  // <this|other>
};

struct BellBasis {
  TwoQubitState psi_plus;
  TwoQubitState psi_minus;
  TwoQubitState phi_plus;
  TwoQubitState phi_minus;

  /// In the order used by bell_decomposition: (psi+, psi-, phi+, phi-).
  std::array<const TwoQubitState*, 4> ordered() const {
    return {&psi_plus, &psi_minus, &phi_plus, &phi_minus};
  }
};

inline BellBasis bell_states() {
  const double r = 1.0 / std::sqrt(2.0);
  BellBasis b;
  b.psi_plus.amp << 0.0, r, r, 0.0;
  b.psi_minus.amp << 0.0, r, -r, 0.0;
  b.phi_plus.amp << r, 0.0, 0.0, r;
  b.phi_minus.amp << r, 0.0, 0.0, -r;
  return b;
}

/// Singlet emitted at the source.
inline TwoQubitState initial_state() { return bell_states().psi_minus; }

/// (xi_plus (x) xi_minus) |initial>.
inline TwoQubitState evolve_pair(const TwoQubitState& initial, const SpinHalfOperator& xi_plus,
                                 const SpinHalfOperator& xi_minus) {
  Matrix4c kron;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      kron.block<2, 2>(2 * i, 2 * j) = xi_plus.m(i, j) * xi_minus.m;
    }
  }
  return {kron * initial.amp};
}

/// Closed-form operators for the pair sent toward +Phi and -Phi.
struct PairTransport {
  SpinHalfOperator plus;
  SpinHalfOperator minus;
};

inline PairTransport pair_transport_closed_form(const StringGeometry& geom, double rho, double xi,
                                                double Phi) {
  const CircularWorldline w_plus(geom, rho, xi, Direction::positive);
  const CircularWorldline w_minus(geom, rho, xi, Direction::negative);
  return {transport_closed_form(transport_params(w_plus, Phi)),
          transport_closed_form(transport_params(w_minus, Phi))};
}

/// Final state in the observers' frames:
///
///   cos(theta) psi- + sin(theta) (sinh(xi) phi- + cosh(xi) phi+),  theta = alpha Phi cosh(xi)
///
/// Not normalized for xi > 0; norm^2 = cos^2(theta) + sin^2(theta) cosh(2 xi).
inline TwoQubitState final_state_closed_form(double alpha, double xi, double Phi) {
  const double theta = wigner_angle(alpha, xi, Phi);
  const BellBasis b = bell_states();
  const double s = std::sin(theta);
  TwoQubitState out;
  out.amp = std::cos(theta) * b.psi_minus.amp +
            s * (std::sinh(xi) * b.phi_minus.amp + std::cosh(xi) * b.phi_plus.amp);
  return out;
}

/// Coefficients against (psi+, psi-, phi+, phi-).
using BellCoefficients = std::array<complex, 4>;

inline BellCoefficients bell_decomposition(const TwoQubitState& s) {
  const BellBasis b = bell_states();
  const auto basis = b.ordered();
  BellCoefficients out;
  for (std::size_t k = 0; k < 4; ++k) {
    out[k] = basis[k]->inner(s);
  }
  return out;
}

/// max_k |a_k - e^{i chi} b_k| with the phase chi fixed by the
/// largest-magnitude coefficient of a.
inline double distance_up_to_global_phase(const TwoQubitState& a, const TwoQubitState& b) {
  Eigen::Index k = 0;
  a.amp.cwiseAbs().maxCoeff(&k);
  complex phase(1.0, 0.0);
  if (std::abs(a.amp[k]) > 0.0 && std::abs(b.amp[k]) > 0.0) {
    const complex ratio = a.amp[k] / b.amp[k];
    phase = ratio / std::abs(ratio);
  }
  return (a.amp - phase * b.amp).cwiseAbs().maxCoeff();
}

/// A +-1-valued spin observable.
class MeasurementSetting {
public:
  explicit MeasurementSetting(const Matrix2c& op) : op_(op) {
    if (max_abs_diff(op, op.adjoint()) > 1e-12) {
      throw DomainError("measurement operator is not Hermitian");
    }
    if (max_abs_diff(op * op, Matrix2c::Identity()) > 1e-12) {
      throw DomainError("measurement operator does not square to the identity");
    }
  }

  const Matrix2c& op() const { return op_; }

private:
  Matrix2c op_;
};

struct ChshSettings {
  MeasurementSetting a;
  MeasurementSetting a_prime;
  MeasurementSetting b;
  MeasurementSetting b_prime;
};

/// a = (s1 + s3)/sqrt2, a' = (-s1 + s3)/sqrt2 at +Phi; b = s3, b' = s1 at -Phi.
inline ChshSettings chsh_settings() {
  const double r = 1.0 / std::sqrt(2.0);
  return {MeasurementSetting(r * (pauli(1) + pauli(3))),
          MeasurementSetting(r * (-pauli(1) + pauli(3))), MeasurementSetting(pauli(3)),
          MeasurementSetting(pauli(1))};
}

/// <s|A (x) B|s> / <s|s>.
inline double correlator(const TwoQubitState& s, const MeasurementSetting& A,
                         const MeasurementSetting& B) {
  const double n2 = s.amp.squaredNorm();
  if (!(n2 > 0.0)) {
    throw DomainError("correlator of a zero-norm state");
  }
  Matrix4c ab;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      ab.block<2, 2>(2 * i, 2 * j) = A.op()(i, j) * B.op();
    }
  }
  return s.amp.dot(ab * s.amp).real() / n2;
}

inline double chsh_value(const TwoQubitState& s, const ChshSettings& x) {
  return std::abs(correlator(s, x.a, x.b) + correlator(s, x.a_prime, x.b) +
                  correlator(s, x.a, x.b_prime) - correlator(s, x.a_prime, x.b_prime));
}

inline double chsh_direct(const TwoQubitState& s) { return chsh_value(s, chsh_settings()); }

/// sqrt(2) |-cos(2 theta) - cos^2(theta) + ((eta1^2 + eta2^2)/gamma^2) sin^2(theta)|
/// with (eta1^2 + eta2^2)/gamma^2 = -cosh(2 xi).
inline double chsh_closed_form(double theta, double xi) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double ratio = -std::cosh(2.0 * xi);
  return std::sqrt(2.0) * std::abs(-std::cos(2.0 * theta) - c * c + ratio * s * s);
}

/// Which observer turns its axes by +theta. `forward`: the observer at +Phi
/// uses R(+theta) and the one at -Phi uses R(-theta), where
/// R(t) = exp(-i t sigma^2 / 2) acts on settings as A -> R A R^dagger.
enum class RestorationAssignment { forward, reversed };

/// The assignment that restores maximal violation at rest (fixed by test).
inline constexpr RestorationAssignment kRestorationAssignment = RestorationAssignment::forward;

inline Matrix2c rotation_about_2_axis(double t) {
  return std::cos(0.5 * t) * Matrix2c::Identity() - kI * std::sin(0.5 * t) * pauli(2);
}

inline ChshSettings restored_settings(double theta,
                                      RestorationAssignment assignment = kRestorationAssignment) {
  const double s = assignment == RestorationAssignment::forward ? 1.0 : -1.0;
  const Matrix2c r_plus = rotation_about_2_axis(s * theta);
  const Matrix2c r_minus = rotation_about_2_axis(-s * theta);
  const ChshSettings base = chsh_settings();
  auto turn = [](const Matrix2c& r, const MeasurementSetting& m) {
    const Matrix2c op = r * m.op() * r.adjoint();
    return MeasurementSetting(0.5 * (op + op.adjoint()));
  };
  return {turn(r_plus, base.a), turn(r_plus, base.a_prime), turn(r_minus, base.b),
          turn(r_minus, base.b_prime)};
}

struct BellReport {
  double alpha = 0.0;
  double xi = 0.0;
  double Phi = 0.0;
  double theta = 0.0;
  double norm = 0.0;
  double chsh_direct = 0.0;
  double chsh_closed = 0.0;
  double chsh_restored = 0.0;
  double restored_residual = 0.0;       // |chsh_restored - 2 sqrt 2|
  double closed_form_discrepancy = 0.0; // |chsh_direct - chsh_closed|
  BellCoefficients bell_coefficients{};
};

/// Evolves the singlet with the closed-form operators and evaluates CHSH
/// three ways.
inline BellReport bell_report(const StringGeometry& geom, double rho, double xi, double Phi) {
  const PairTransport ops = pair_transport_closed_form(geom, rho, xi, Phi);
  const TwoQubitState final_state = evolve_pair(initial_state(), ops.plus, ops.minus);

  BellReport r;
  r.alpha = geom.alpha();
  r.xi = xi;
  r.Phi = Phi;
  r.theta = wigner_angle(geom.alpha(), xi, Phi);
  r.norm = final_state.norm();
  r.chsh_direct = chsh_direct(final_state);
  r.chsh_closed = chsh_closed_form(r.theta, xi);
  r.chsh_restored = chsh_value(final_state, restored_settings(r.theta));
  r.restored_residual = std::abs(r.chsh_restored - kTsirelson);
  r.closed_form_discrepancy = std::abs(r.chsh_direct - r.chsh_closed);
  r.bell_coefficients = bell_decomposition(final_state);
  return r;
}

}  // namespace eprfw

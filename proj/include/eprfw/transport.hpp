#pragma once

// Fermi-Walker transport of spinors along a worldline.
//
// The transport operator is the path-ordered exponential
//
//   Xi = P exp( -(i/2) \int Omega_{mu ab} S^{ab} dx^mu )
//
// where S^{ab} are spin generators of the Lorentz algebra. For a circular
// orbit the integrand is constant and the 2x2 operator has the closed form
//
//   Xi = cosh(gamma/2) I + (sinh(gamma/2) / gamma) Gamma,
//   Gamma = eta1 sigma^1 + eta2 (i sigma^2),  gamma^2 = eta1^2 - eta2^2.
//
// Weyl-basis conventions: the gamma matrices are the standard chiral ones,
// gamma^0 = [[0, 1], [1, 0]] and gamma^k = [[0, s^k], [-s^k, 0]], which
// satisfy {gamma^a, gamma^b} = -2 eta^{ab} for eta = diag(-1, 1, 1, 1). The
// spin generators are S^{ab} = Sigma^{ab} / 2 with Sigma^{ab} = (i/2)[gamma^a, gamma^b].
// With these choices the particle orbiting toward +phi is carried by the
// right-handed block and its mirror image (orbiting toward -phi) by the
// left-handed block; each block is exactly the 2x2 closed form above.

#include "eprfw/errors.hpp"
#include "eprfw/geometry.hpp"
#include "eprfw/kinematics.hpp"
#include "eprfw/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>

namespace eprfw {

enum class Chirality { left, right };
enum class Representation { spin_half, dirac };

template <int Dim>
using SpinMatrix = Eigen::Matrix<complex, Dim, Dim>;

/// Antisymmetric family G[a][b] of Lorentz-algebra generators.
template <int Dim>
using Generators = std::array<std::array<SpinMatrix<Dim>, 4>, 4>;

using Spinor = Eigen::Vector2cd;

inline Spinor spin_up() { return {1.0, 0.0}; }
inline Spinor spin_down() { return {0.0, 1.0}; }

struct SpinHalfOperator {
  Matrix2c m = Matrix2c::Identity();

  complex det() const { return m.determinant(); }
  /// max |m^dagger m - I|.
  double unitarity_defect() const { return max_abs_diff(m.adjoint() * m, Matrix2c::Identity()); }
  friend SpinHalfOperator operator*(const SpinHalfOperator& x, const SpinHalfOperator& y) {
    return {x.m * y.m};
  }
};

struct DiracOperator {
  Matrix4c m = Matrix4c::Identity();

  complex det() const { return m.determinant(); }
};

/// Chiral-basis gamma matrices, {gamma^a, gamma^b} = -2 eta^{ab}.
inline const std::array<Matrix4c, 4>& dirac_gamma_matrices() {
  static const std::array<Matrix4c, 4> gammas = [] {
    std::array<Matrix4c, 4> g;
    for (int a = 0; a < 4; ++a) {
      g[a].setZero();
      const Matrix2c& s = pauli(a);
      const double lower_sign = (a == 0) ? 1.0 : -1.0;
      g[a].topRightCorner<2, 2>() = s;
      g[a].bottomLeftCorner<2, 2>() = lower_sign * s;
    }
    return g;
  }();
  return gammas;
}

/// Sigma^{ab} = (i/2)[gamma^a, gamma^b]. Block diagonal in the chiral basis.
inline Generators<4> dirac_sigma() {
  const auto& g = dirac_gamma_matrices();
  Generators<4> out;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      out[a][b] = 0.5 * kI * (g[a] * g[b] - g[b] * g[a]);
    }
  }
  return out;
}

/// 2x2 spin generators of one chirality: rotations S^{jk} = (1/2) eps^{jkl} sigma^l
/// (Hermitian) and boosts S^{0k} = +-(i/2) sigma^k (anti-Hermitian; + is right-handed).
inline Generators<2> spin_half_generators(Chirality chirality = Chirality::right) {
  Generators<2> out;
  for (auto& row : out) {
    for (auto& m : row) {
      m.setZero();
    }
  }
  const double boost_sign = chirality == Chirality::right ? 1.0 : -1.0;
  for (int k = 1; k <= 3; ++k) {
    out[0][k] = boost_sign * 0.5 * kI * pauli(k);
    out[k][0] = -out[0][k];
  }
  // (j, k, l) cyclic.
  constexpr int cyc[3][3] = {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}};
  for (const auto& jkl : cyc) {
    out[jkl[0]][jkl[1]] = 0.5 * pauli(jkl[2]);
    out[jkl[1]][jkl[0]] = -0.5 * pauli(jkl[2]);
  }
  return out;
}

/// The generator family of a representation: Sigma^{ab} for Dirac, the
/// right-handed 2x2 images for spin one-half.
template <Representation R>
auto lorentz_generators() {
  if constexpr (R == Representation::dirac) {
    return dirac_sigma();
  } else {
    return spin_half_generators(Chirality::right);
  }
}

/// Generators entering the transport exponent for a representation.
inline Generators<4> dirac_spin_generators() {
  Generators<4> s = dirac_sigma();
  for (auto& row : s) {
    for (auto& m : row) {
      m *= 0.5;
    }
  }
  return s;
}

/// Chirality whose 2x2 block carries a particle orbiting in `d`.
inline Chirality chirality_for(Direction d) {
  return d == Direction::positive ? Chirality::right : Chirality::left;
}

/// -(i/2) Omega_{ab} S^{ab} for a lowered frame-index matrix Omega_{ab}.
template <int Dim>
SpinMatrix<Dim> spin_generator(const Matrix4& omega_lowered, const Generators<Dim>& s) {
  SpinMatrix<Dim> out = SpinMatrix<Dim>::Zero();
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      if (omega_lowered(a, b) != 0.0) {
        out += omega_lowered(a, b) * s[a][b];
      }
    }
  }
  return complex(0.0, -0.5) * out;
}

// ---------------------------------------------------------------------------
// Closed form

struct TransportParams {
  double eta1 = 0.0;
  double eta2 = 0.0;
  complex gamma{0.0, 0.0};  // principal root of eta1^2 - eta2^2
  double theta = 0.0;       // |gamma|

  static TransportParams from_etas(double eta1, double eta2) {
    TransportParams p;
    p.eta1 = eta1;
    p.eta2 = eta2;
    p.gamma = std::sqrt(complex(eta1 * eta1 - eta2 * eta2, 0.0));
    p.theta = std::abs(p.gamma);
    return p;
  }

  /// Gamma = [[0, eta1 + eta2], [eta1 - eta2, 0]].
  Matrix2c generator() const {
    Matrix2c g;
    g << 0.0, eta1 + eta2, eta1 - eta2, 0.0;
    return g;
  }
};

/// Wigner rotation angle alpha Phi cosh(xi).
inline double wigner_angle(double alpha, double xi, double Phi) {
  return alpha * Phi * std::cosh(xi);
}

/// eta1 = -d alpha Phi sinh(xi) cosh(xi), eta2 = -d alpha Phi cosh^2(xi), with
/// d = +1 for the particle sent toward +Phi and d = -1 for its partner.
inline TransportParams transport_params(const CircularWorldline& wl, double Phi) {
  if (!(Phi >= 0.0)) {
    throw ArgumentError("Phi must be non-negative");
  }
  const double d = sign(wl.direction());
  const double a_phi = wl.geometry().alpha() * Phi;
  const double ch = std::cosh(wl.xi());
  const double sh = std::sinh(wl.xi());
  TransportParams p;
  p.eta1 = -d * a_phi * sh * ch;
  p.eta2 = -d * a_phi * ch * ch;
  p.theta = wigner_angle(wl.geometry().alpha(), wl.xi(), Phi);
  p.gamma = complex(0.0, p.theta);
  return p;
}

inline SpinHalfOperator transport_closed_form(const TransportParams& p) {
  const double g2 = p.eta1 * p.eta1 - p.eta2 * p.eta2;
  double ch = 0.0;  // cosh(gamma/2)
  double sh = 0.0;  // sinh(gamma/2) / gamma
  if (std::abs(g2) < 1e-12) {
    ch = 1.0 + g2 / 8.0 + g2 * g2 / 384.0;
    sh = 0.5 + g2 / 48.0 + g2 * g2 / 3840.0;
  } else if (g2 < 0.0) {
    // gamma = i theta: cosh(gamma/2) = cos(theta/2), sinh(gamma/2)/gamma = sin(theta/2)/theta
    const double theta = std::sqrt(-g2);
    ch = std::cos(0.5 * theta);
    sh = std::sin(0.5 * theta) / theta;
  } else {
    const double g = std::sqrt(g2);
    ch = std::cosh(0.5 * g);
    sh = std::sinh(0.5 * g) / g;
  }
  return {ch * Matrix2c::Identity() + sh * p.generator()};
}

// ---------------------------------------------------------------------------
// Path-ordered integration

/// A path parameterized by s in [0, Phi] that reports the total connection
/// contracted with its tangent, Omega_mu^a_b dx^mu/ds, at each s.
template <typename P>
concept TransportPath = requires(const P& p, double s) {
  { p.connection_along(s) } -> std::convertible_to<Matrix4>;
  { p.direction() } -> std::same_as<Direction>;
};

/// Circular orbit parameterized by the swept azimuth s = |phi|.
struct CircularOrbitPath {
  CircularWorldline worldline;
  /// Multiplies the spin connection. 1 in normal use; -1 is a fault injection
  /// hook used by the mutation check.
  double spin_connection_scale = 1.0;

  Direction direction() const { return worldline.direction(); }

  Matrix4 connection_along(double s) const {
    const double d = sign(worldline.direction());
    const SpacetimePoint pt = worldline.point_at(d * s);
    const StringGeometry& geom = worldline.geometry();
    const ConnectionOneForm omega =
        spin_connection_scale * spin_connection_at(geom, pt) +
        fw_connection_at(geom, pt, proper_acceleration(worldline));

    // dx^mu/ds = U^mu / |U^phi|. At rest the time leg drops out: the
    // Fermi-Walker components scale as sinh^2(xi) while dt/ds ~ 1/sinh(xi).
    Vector4 tangent(0.0, 0.0, 0.0, d);
    const Vector4 u = four_velocity(worldline);
    if (u[coord::phi] != 0.0) {
      tangent = u / std::abs(u[coord::phi]);
    }
    return omega.contract(tangent);
  }
};

/// Ordered product of one-step exponentials exp(h A(s_k + h/2)), later steps
/// to the left.
template <int Dim, TransportPath Path>
SpinMatrix<Dim> path_ordered_transport(const Path& path, double Phi, std::size_t steps,
                                       const Generators<Dim>& generators) {
  if (steps == 0) {
    throw ArgumentError("step count must be at least 1");
  }
  if (!(Phi >= 0.0)) {
    throw ArgumentError("Phi must be non-negative");
  }
  SpinMatrix<Dim> result = SpinMatrix<Dim>::Identity();
  if (Phi == 0.0) {
    return result;
  }
  const double h = Phi / static_cast<double>(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    const double s_mid = (static_cast<double>(k) + 0.5) * h;
    const Matrix4 omega_lowered = minkowski() * path.connection_along(s_mid);
    const SpinMatrix<Dim> step = expm((h * spin_generator(omega_lowered, generators)).eval());
    result = (step * result).eval();
  }
  return result;
}

template <TransportPath Path>
SpinHalfOperator transport_numeric_spin_half(const Path& path, double Phi, std::size_t steps) {
  return {path_ordered_transport<2>(path, Phi, steps,
                                    spin_half_generators(chirality_for(path.direction())))};
}

template <TransportPath Path>
DiracOperator transport_numeric_dirac(const Path& path, double Phi, std::size_t steps) {
  return {path_ordered_transport<4>(path, Phi, steps, dirac_spin_generators())};
}

/// Numeric transport along a circular orbit. Returns SpinHalfOperator or
/// DiracOperator depending on R.
template <Representation R>
auto transport_numeric(const CircularWorldline& wl, double Phi, std::size_t steps) {
  const CircularOrbitPath path{wl};
  if constexpr (R == Representation::dirac) {
    return transport_numeric_dirac(path, Phi, steps);
  } else {
    return transport_numeric_spin_half(path, Phi, steps);
  }
}

/// Selected 2x2 diagonal block of a chiral-basis Dirac operator. Left-handed
/// is the upper block.
inline SpinHalfOperator chiral_block(const DiracOperator& d, Chirality which, double tol = 1e-8) {
  const double off = std::max(d.m.topRightCorner<2, 2>().cwiseAbs().maxCoeff(),
                              d.m.bottomLeftCorner<2, 2>().cwiseAbs().maxCoeff());
  if (off > tol) {
    throw StructuralError("not block diagonal: off-block magnitude " + std::to_string(off));
  }
  if (which == Chirality::left) {
    return {d.m.topLeftCorner<2, 2>()};
  }
  return {d.m.bottomRightCorner<2, 2>()};
}

inline Spinor apply_to_spinor(const SpinHalfOperator& op, const Spinor& s) { return op.m * s; }

/// Signed rotation angle of a rotation about the 2-axis,
/// [[cos(t/2), -sin(t/2)], [sin(t/2), cos(t/2)]] -> t, in (-2 pi, 2 pi].
inline double rotation_angle_about_2_axis(const SpinHalfOperator& op) {
  return 2.0 * std::atan2(op.m(1, 0).real(), op.m(0, 0).real());
}

/// theta in [0, 2 pi] from tr(Xi) = 2 cos(theta / 2); valid for any transport
/// operator with an imaginary gamma.
inline double precession_angle_from_trace(const SpinHalfOperator& op) {
  const double half_trace = std::clamp(0.5 * op.m.trace().real(), -1.0, 1.0);
  return 2.0 * std::acos(half_trace);
}

}  // namespace eprfw

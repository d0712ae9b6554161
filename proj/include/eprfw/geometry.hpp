#pragma once

// Cosmic-string spacetime
//
//   ds^2 = -c^2 dt^2 + drho^2 + dz^2 + alpha^2 rho^2 dphi^2
//
// in coordinates (t, rho, z, phi), together with its rest-frame tetrad and
// the connection one-forms built on it.

#include "eprfw/errors.hpp"
#include "eprfw/linalg.hpp"

#include <array>
#include <cmath>
#include <string>

namespace eprfw {

/// Coordinate indices, in storage order.
namespace coord {
inline constexpr int t = 0;
inline constexpr int rho = 1;
inline constexpr int z = 2;
inline constexpr int phi = 3;
}  // namespace coord

/// Deficit factor and speed of light of a straight cosmic string.
class StringGeometry {
public:
  explicit StringGeometry(double alpha = 1.0, double c = 1.0) : alpha_(alpha), c_(c) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
      throw DomainError("alpha must satisfy 0 < alpha <= 1, got " + std::to_string(alpha));
    }
    if (!(c > 0.0)) {
      throw DomainError("c must be positive, got " + std::to_string(c));
    }
  }

  double alpha() const { return alpha_; }
  double c() const { return c_; }

private:
  double alpha_;
  double c_;
};

/// Event in (t, rho, z, phi). phi is kept unwrapped.
struct SpacetimePoint {
  double t = 0.0;
  double rho = 1.0;
  double z = 0.0;
  double phi = 0.0;

  Vector4 coordinates() const { return {t, rho, z, phi}; }
  static SpacetimePoint from_coordinates(const Vector4& x) { return {x[0], x[1], x[2], x[3]}; }
};

struct MetricTensor {
  Matrix4 g = Matrix4::Zero();
};

/// e(a, mu) = e^a_mu and einv(mu, a) = e^mu_a.
struct Tetrad {
  Matrix4 e = Matrix4::Zero();
  Matrix4 einv = Matrix4::Zero();
};

/// gamma[lambda](mu, nu) = Gamma^lambda_{mu nu}.
struct ChristoffelSymbols {
  std::array<Matrix4, 4> gamma{Matrix4::Zero(), Matrix4::Zero(), Matrix4::Zero(), Matrix4::Zero()};

  double operator()(int lambda, int mu, int nu) const { return gamma[lambda](mu, nu); }
};

/// Mixed-index one-form X_mu^a_b stored as components[mu](a, b).
struct ConnectionOneForm {
  std::array<Matrix4, 4> components{Matrix4::Zero(), Matrix4::Zero(), Matrix4::Zero(), Matrix4::Zero()};

  double operator()(int mu, int a, int b) const { return components[mu](a, b); }

  /// X_mu^{ab} = X_mu^a_c eta^{cb}.
  Matrix4 raised(int mu) const { return components[mu] * minkowski(); }

  /// X_{mu ab} = eta_{ac} X_mu^c_b.
  Matrix4 lowered(int mu) const { return minkowski() * components[mu]; }

  /// X_mu^a_b v^mu.
  Matrix4 contract(const Vector4& v) const {
    Matrix4 out = Matrix4::Zero();
    for (int mu = 0; mu < 4; ++mu) {
      out += v[mu] * components[mu];
    }
    return out;
  }

  friend ConnectionOneForm operator+(const ConnectionOneForm& x, const ConnectionOneForm& y) {
    ConnectionOneForm out;
    for (int mu = 0; mu < 4; ++mu) {
      out.components[mu] = x.components[mu] + y.components[mu];
    }
    return out;
  }

  friend ConnectionOneForm operator*(double s, const ConnectionOneForm& x) {
    ConnectionOneForm out;
    for (int mu = 0; mu < 4; ++mu) {
      out.components[mu] = s * x.components[mu];
    }
    return out;
  }
};

/// r[rho][sigma](mu, nu) = R^rho_{sigma mu nu}.
struct RiemannTensor {
  std::array<std::array<Matrix4, 4>, 4> r{};

  double max_abs() const {
    double m = 0.0;
    for (const auto& row : r) {
      for (const auto& block : row) {
        m = std::max(m, block.cwiseAbs().maxCoeff());
      }
    }
    return m;
  }
};

/// Largest magnitude over all components.
inline double max_abs(const ConnectionOneForm& x) {
  double m = 0.0;
  for (const auto& c : x.components) {
    m = std::max(m, c.cwiseAbs().maxCoeff());
  }
  return m;
}

namespace detail {
inline void require_off_axis(const SpacetimePoint& pt) {
  if (!(pt.rho > 0.0)) {
    throw DomainError("point on string axis: rho must be positive, got " + std::to_string(pt.rho));
  }
}
}  // namespace detail

inline MetricTensor metric_at(const StringGeometry& geom, const SpacetimePoint& pt) {
  detail::require_off_axis(pt);
  const double c = geom.c();
  const double ar = geom.alpha() * pt.rho;
  MetricTensor m;
  m.g.diagonal() << -c * c, 1.0, 1.0, ar * ar;
  return m;
}

/// Static frame with non-rotating spatial axes. The time leg is e^0_t = c so
/// that the frame reconstructs g_tt = -c^2; it is 1 in the default units.
inline Tetrad tetrad_at(const StringGeometry& geom, const SpacetimePoint& pt) {
  detail::require_off_axis(pt);
  const double c = geom.c();
  const double ar = geom.alpha() * pt.rho;
  Tetrad tet;
  tet.e.diagonal() << c, 1.0, 1.0, ar;
  tet.einv.diagonal() << 1.0 / c, 1.0, 1.0, 1.0 / ar;
  return tet;
}

/// d[mu](nu, b) = partial_mu e^nu_b. Only partial_rho e^phi_3 is nonzero.
inline std::array<Matrix4, 4> inverse_tetrad_derivative_at(const StringGeometry& geom,
                                                          const SpacetimePoint& pt) {
  detail::require_off_axis(pt);
  std::array<Matrix4, 4> d{Matrix4::Zero(), Matrix4::Zero(), Matrix4::Zero(), Matrix4::Zero()};
  d[coord::rho](coord::phi, 3) = -1.0 / (geom.alpha() * pt.rho * pt.rho);
  return d;
}

/// Levi-Civita connection. Nonzero: Gamma^rho_{phi phi} = -alpha^2 rho and
/// Gamma^phi_{rho phi} = Gamma^phi_{phi rho} = 1/rho.
inline ChristoffelSymbols christoffel_at(const StringGeometry& geom, const SpacetimePoint& pt) {
  detail::require_off_axis(pt);
  const double a = geom.alpha();
  ChristoffelSymbols chr;
  chr.gamma[coord::rho](coord::phi, coord::phi) = -a * a * pt.rho;
  chr.gamma[coord::phi](coord::rho, coord::phi) = 1.0 / pt.rho;
  chr.gamma[coord::phi](coord::phi, coord::rho) = 1.0 / pt.rho;
  return chr;
}

/// Spin connection from a tetrad, the derivative of its inverse and a
/// Levi-Civita connection:
///
///   omega_mu^a_b = e^a_nu (partial_mu e^nu_b + Gamma^nu_{mu lambda} e^lambda_b)
///
/// The overall sign is the one that yields omega_phi^1_3 = -alpha and
/// omega_phi^3_1 = +alpha for the string frame. Those are the values that add
/// with the Fermi-Walker term to the tabulated total connection (for example
/// Omega_phi^1_3 = -alpha (1 - rho a^rho / c^2)). Writing the expression with
/// a leading minus flips both entries.
inline ConnectionOneForm spin_connection(const Tetrad& tet, const std::array<Matrix4, 4>& d_einv,
                                         const ChristoffelSymbols& chr) {
  ConnectionOneForm omega;
  for (int mu = 0; mu < 4; ++mu) {
    Matrix4 g_mu;  // (nu, lambda) -> Gamma^nu_{mu lambda}
    for (int nu = 0; nu < 4; ++nu) {
      for (int lambda = 0; lambda < 4; ++lambda) {
        g_mu(nu, lambda) = chr(nu, mu, lambda);
      }
    }
    omega.components[mu] = tet.e * (d_einv[mu] + g_mu * tet.einv);
  }
  return omega;
}

inline ConnectionOneForm spin_connection_at(const StringGeometry& geom, const SpacetimePoint& pt) {
  return spin_connection(tetrad_at(geom, pt), inverse_tetrad_derivative_at(geom, pt),
                         christoffel_at(geom, pt));
}

/// Fermi-Walker term for a frame carried with proper acceleration `accel`
/// (coordinate components a^nu):
///
///   tau_mu^a_b = (a^nu / c^2) (e^a_nu e_{b mu} - e^a_mu e_{b nu}),  e_{b mu} = eta_{bc} e^c_mu
inline ConnectionOneForm fw_connection_at(const StringGeometry& geom, const SpacetimePoint& pt,
                                          const Vector4& accel) {
  const Tetrad tet = tetrad_at(geom, pt);
  const double c2 = geom.c() * geom.c();
  const Matrix4 e_low = minkowski() * tet.e;   // (b, mu) -> e_{b mu}
  const Vector4 a_up = tet.e * accel / c2;     // a^nu e^a_nu / c^2
  const Vector4 a_down = e_low * accel / c2;   // a^nu e_{b nu} / c^2
  ConnectionOneForm tau;
  for (int mu = 0; mu < 4; ++mu) {
    tau.components[mu] = a_up * e_low.col(mu).transpose() - tet.e.col(mu) * a_down.transpose();
  }
  return tau;
}

/// Omega = omega + tau.
inline ConnectionOneForm total_connection_at(const StringGeometry& geom, const SpacetimePoint& pt,
                                             const Vector4& accel) {
  return spin_connection_at(geom, pt) + fw_connection_at(geom, pt, accel);
}

/// Riemann tensor from central differences of a Christoffel field.
///
///   R^r_{s m n} = d_m G^r_{n s} - d_n G^r_{m s} + G^r_{m l} G^l_{n s} - G^r_{n l} G^l_{m s}
template <typename ChristoffelField>
RiemannTensor riemann_from(ChristoffelField&& field, const SpacetimePoint& pt, double h) {
  const ChristoffelSymbols g0 = field(pt);
  std::array<ChristoffelSymbols, 4> dg;
  for (int k = 0; k < 4; ++k) {
    Vector4 xp = pt.coordinates();
    Vector4 xm = pt.coordinates();
    xp[k] += h;
    xm[k] -= h;
    const ChristoffelSymbols gp = field(SpacetimePoint::from_coordinates(xp));
    const ChristoffelSymbols gm = field(SpacetimePoint::from_coordinates(xm));
    for (int l = 0; l < 4; ++l) {
      dg[k].gamma[l] = (gp.gamma[l] - gm.gamma[l]) / (2.0 * h);
    }
  }

  RiemannTensor out;
  for (int r = 0; r < 4; ++r) {
    for (int s = 0; s < 4; ++s) {
      Matrix4& block = out.r[r][s];
      for (int m = 0; m < 4; ++m) {
        for (int n = 0; n < 4; ++n) {
          double v = dg[m](r, n, s) - dg[n](r, m, s);
          for (int l = 0; l < 4; ++l) {
            v += g0(r, m, l) * g0(l, n, s) - g0(r, n, l) * g0(l, m, s);
          }
          block(m, n) = v;
        }
      }
    }
  }
  return out;
}

/// Off-axis curvature, computed from finite differences of christoffel_at.
inline RiemannTensor riemann_at(const StringGeometry& geom, const SpacetimePoint& pt, double h = 1e-4) {
  detail::require_off_axis(pt);
  if (!(pt.rho - h > 0.0)) {
    throw DomainError("finite-difference stencil reaches the string axis");
  }
  return riemann_from([&geom](const SpacetimePoint& p) { return christoffel_at(geom, p); }, pt, h);
}

}  // namespace eprfw

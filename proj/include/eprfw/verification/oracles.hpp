#pragma once

// Independent numerical oracles. Nothing here is used by the library's
// primary code paths; they exist to check those paths.

#include "eprfw/epr.hpp"
#include "eprfw/geometry.hpp"
#include "eprfw/kinematics.hpp"
#include "eprfw/linalg.hpp"
#include "eprfw/transport.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <cstddef>
#include <functional>

namespace eprfw::oracle {

/// Levi-Civita connection from central differences of metric_at.
inline ChristoffelSymbols fd_christoffel(const StringGeometry& geom, const SpacetimePoint& pt,
                                         double h = 1e-5) {
  const Matrix4 g = metric_at(geom, pt).g;
  const Matrix4 ginv = g.inverse();
  std::array<Matrix4, 4> dg;  // dg[k](m, n) = d_k g_{mn}
  for (int k = 0; k < 4; ++k) {
    Vector4 xp = pt.coordinates();
    Vector4 xm = pt.coordinates();
    xp[k] += h;
    xm[k] -= h;
    dg[k] = (metric_at(geom, SpacetimePoint::from_coordinates(xp)).g -
             metric_at(geom, SpacetimePoint::from_coordinates(xm)).g) /
            (2.0 * h);
  }
  ChristoffelSymbols chr;
  for (int l = 0; l < 4; ++l) {
    for (int m = 0; m < 4; ++m) {
      for (int n = 0; n < 4; ++n) {
        double v = 0.0;
        for (int k = 0; k < 4; ++k) {
          v += 0.5 * ginv(l, k) * (dg[m](k, n) + dg[n](k, m) - dg[k](m, n));
        }
        chr.gamma[l](m, n) = v;
      }
    }
  }
  return chr;
}

/// partial_mu e^nu_b from central differences of the numerically inverted tetrad.
inline std::array<Matrix4, 4> fd_inverse_tetrad_derivative(const StringGeometry& geom,
                                                          const SpacetimePoint& pt,
                                                          double h = 1e-5) {
  std::array<Matrix4, 4> d;
  for (int k = 0; k < 4; ++k) {
    Vector4 xp = pt.coordinates();
    Vector4 xm = pt.coordinates();
    xp[k] += h;
    xm[k] -= h;
    d[k] = (tetrad_at(geom, SpacetimePoint::from_coordinates(xp)).e.inverse() -
            tetrad_at(geom, SpacetimePoint::from_coordinates(xm)).e.inverse()) /
           (2.0 * h);
  }
  return d;
}

/// Spin connection through the generic pipeline with every derivative taken
/// by finite differences.
inline ConnectionOneForm fd_spin_connection(const StringGeometry& geom, const SpacetimePoint& pt,
                                            double h = 1e-5) {
  Tetrad tet = tetrad_at(geom, pt);
  tet.einv = tet.e.inverse();
  return spin_connection(tet, fd_inverse_tetrad_derivative(geom, pt, h), fd_christoffel(geom, pt, h));
}

/// a^mu = dU^mu/dtau + Gamma^mu_{nu lambda} U^nu U^lambda along the orbit,
/// with Christoffels and dU/dtau both from finite differences.
inline Vector4 covariant_acceleration(const CircularWorldline& wl, double h = 1e-5) {
  const Vector4 u = four_velocity(wl);
  auto position = [&](double tau) { return wl.point_at(u[coord::phi] * tau); };
  // The orbit's velocity field is stationary; difference it anyway.
  auto velocity_at = [&](double tau) {
    const SpacetimePoint p = position(tau);
    return four_velocity(CircularWorldline(wl.geometry(), p.rho, wl.xi(), wl.direction()));
  };
  const Vector4 du = (velocity_at(h) - velocity_at(-h)) / (2.0 * h);
  const ChristoffelSymbols chr = fd_christoffel(wl.geometry(), position(0.0), h);
  Vector4 a = du;
  for (int mu = 0; mu < 4; ++mu) {
    a[mu] += u.dot(chr.gamma[mu] * u);
  }
  return a;
}

/// Parallel transport of frame components once around the circle of radius
/// rho: dV^a/dphi = -omega_phi^a_b V^b, integrated as an ordered product.
inline Matrix4 frame_holonomy(const StringGeometry& geom, double rho, double Phi = 2.0 * kPi,
                              std::size_t steps = 4096) {
  Matrix4 h_total = Matrix4::Identity();
  const double h = Phi / static_cast<double>(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    const double phi = (static_cast<double>(k) + 0.5) * h;
    const Matrix4 w = spin_connection_at(geom, {0.0, rho, 0.0, phi}).components[coord::phi];
    const Matrix4 step = (-h * w).exp();
    h_total = (step * h_total).eval();
  }
  return h_total;
}

/// Rotation in the (1, 3) frame plane by angle d: e1 -> cos d e1 + sin d e3.
inline Matrix4 frame_rotation_13(double d) {
  Matrix4 r = Matrix4::Identity();
  r(1, 1) = std::cos(d);
  r(3, 3) = std::cos(d);
  r(3, 1) = std::sin(d);
  r(1, 3) = -std::sin(d);
  return r;
}

/// Pade-based matrix exponential (Eigen), independent of eprfw::expm.
template <typename M>
M reference_expm(const M& a) {
  return a.exp();
}

/// Orbit whose deficit factor and rapidity vary along the path:
/// alpha(s) = alpha0 (1 + eps sin s), xi(s) = xi0 (1 + eps cos s). The local
/// generators at different s do not commute, so the ordered product is a
/// genuine test of the integrator.
struct VariableCoefficientPath {
  double alpha0 = 0.5;
  double xi0 = 0.6931471805599453;  // asinh(0.75)
  double rho = 2.0;
  double c = 1.0;
  double eps = 0.3;
  Direction dir = Direction::positive;

  Direction direction() const { return dir; }

  Matrix4 connection_along(double s) const {
    const StringGeometry local(alpha0 * (1.0 + eps * std::sin(s)), c);
    const CircularWorldline wl(local, rho, xi0 * (1.0 + eps * std::cos(s)), dir);
    return CircularOrbitPath{wl}.connection_along(s);
  }
};

/// Tabulated nonzero components for the string frame on a circular orbit with
/// radial acceleration a_rho. The t-leg entries carry 1/c because the time
/// coordinate here is t rather than ct; they equal -a_rho/c^2 in units c = 1.
inline ConnectionOneForm tabulated_spin_connection(double alpha) {
  ConnectionOneForm w;
  w.components[coord::phi](3, 1) = alpha;
  w.components[coord::phi](1, 3) = -alpha;
  return w;
}

inline ConnectionOneForm tabulated_fw_connection(double alpha, double rho, double a_rho, double c) {
  ConnectionOneForm tau;
  const double k = a_rho / (c * c);
  tau.components[coord::t](0, 1) = -a_rho / c;
  tau.components[coord::t](1, 0) = -a_rho / c;
  tau.components[coord::z](1, 2) = k;
  tau.components[coord::z](2, 1) = -k;
  tau.components[coord::phi](1, 3) = alpha * rho * k;
  tau.components[coord::phi](3, 1) = -alpha * rho * k;
  return tau;
}

inline ConnectionOneForm tabulated_total_connection(double alpha, double rho, double a_rho,
                                                    double c) {
  ConnectionOneForm o;
  const double k = a_rho / (c * c);
  o.components[coord::t](0, 1) = -a_rho / c;
  o.components[coord::t](1, 0) = -a_rho / c;
  o.components[coord::z](1, 2) = k;
  o.components[coord::z](2, 1) = -k;
  o.components[coord::phi](1, 3) = -alpha * (1.0 - rho * k);
  o.components[coord::phi](3, 1) = alpha * (1.0 - rho * k);
  return o;
}

/// Largest |X_mu^{ab} + X_mu^{ba}|.
inline double antisymmetry_defect(const ConnectionOneForm& x) {
  double m = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    const Matrix4 r = x.raised(mu);
    m = std::max(m, (r + r.transpose()).cwiseAbs().maxCoeff());
  }
  return m;
}

/// CHSH by brute-force trace against the density matrix |s><s| / <s|s>,
/// built from explicit Kronecker products.
inline double chsh_by_trace(const TwoQubitState& s, const Matrix2c& a, const Matrix2c& ap,
                            const Matrix2c& b, const Matrix2c& bp) {
  const Matrix4c rho = s.amp * s.amp.adjoint() / s.amp.squaredNorm();
  auto kron = [](const Matrix2c& x, const Matrix2c& y) {
    Matrix4c k;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        for (int p = 0; p < 2; ++p) {
          for (int q = 0; q < 2; ++q) {
            k(2 * i + p, 2 * j + q) = x(i, j) * y(p, q);
          }
        }
      }
    }
    return k;
  };
  auto e = [&](const Matrix2c& x, const Matrix2c& y) { return (rho * kron(x, y)).trace().real(); };
  return std::abs(e(a, b) + e(ap, b) + e(a, bp) - e(ap, bp));
}

}  // namespace eprfw::oracle

#pragma once

// Circular worldlines of constant radius and rapidity around the string axis.

#include "eprfw/errors.hpp"
#include "eprfw/geometry.hpp"

#include <cmath>
#include <string>

namespace eprfw {

/// Sense of orbital motion: sign of dphi/dt.
enum class Direction : int { positive = +1, negative = -1 };

inline double sign(Direction d) { return static_cast<double>(static_cast<int>(d)); }

/// Rapidity for a speed given as a fraction of c.
inline double rapidity_from_speed(double v_over_c) {
  if (!(v_over_c >= 0.0 && v_over_c < 1.0)) {
    throw DomainError("v/c must lie in [0, 1), got " + std::to_string(v_over_c));
  }
  return std::atanh(v_over_c);
}

inline double speed_from_rapidity(double xi) { return std::tanh(xi); }

class CircularWorldline {
public:
  CircularWorldline(StringGeometry geom, double rho, double xi,
                    Direction direction = Direction::positive)
      : geom_(geom), rho_(rho), xi_(xi), direction_(direction) {
    if (!(rho > 0.0)) {
      throw DomainError("point on string axis: orbit radius must be positive, got " +
                        std::to_string(rho));
    }
    if (!(xi >= 0.0) || !std::isfinite(xi)) {
      throw DomainError("rapidity must be finite and non-negative, got " + std::to_string(xi));
    }
  }

  const StringGeometry& geometry() const { return geom_; }
  double rho() const { return rho_; }
  double xi() const { return xi_; }
  Direction direction() const { return direction_; }

  /// Event on the orbit at azimuth phi (t = z = 0).
  SpacetimePoint point_at(double phi) const { return {0.0, rho_, 0.0, phi}; }

private:
  StringGeometry geom_;
  double rho_;
  double xi_;
  Direction direction_;
};

/// U^mu = dx^mu / dtau: U^t = cosh(xi), U^phi = +-(c / (alpha rho)) sinh(xi).
inline Vector4 four_velocity(const CircularWorldline& wl) {
  const double c = wl.geometry().c();
  const double ar = wl.geometry().alpha() * wl.rho();
  return {std::cosh(wl.xi()), 0.0, 0.0, sign(wl.direction()) * c * std::sinh(wl.xi()) / ar};
}

/// Centripetal proper acceleration, a^rho = -(c^2 / rho) sinh^2(xi).
inline Vector4 proper_acceleration(const CircularWorldline& wl) {
  const double c = wl.geometry().c();
  const double s = std::sinh(wl.xi());
  return {0.0, -c * c * s * s / wl.rho(), 0.0, 0.0};
}

/// Proper time to sweep an azimuth Phi: alpha rho Phi / (c sinh xi).
inline double proper_time_total(const CircularWorldline& wl, double Phi) {
  if (wl.xi() == 0.0) {
    throw DomainError("particle at rest never reaches the observer");
  }
  if (!(Phi >= 0.0)) {
    throw ArgumentError("Phi must be non-negative");
  }
  return wl.geometry().alpha() * wl.rho() * Phi / (wl.geometry().c() * std::sinh(wl.xi()));
}

/// Four-momentum in the local frame: (m c cosh xi, 0, 0, +-m c sinh xi).
inline Vector4 four_momentum_frame(const CircularWorldline& wl, double mass) {
  if (!(mass > 0.0)) {
    throw DomainError("mass must be positive");
  }
  const double mc = mass * wl.geometry().c();
  return {mc * std::cosh(wl.xi()), 0.0, 0.0, sign(wl.direction()) * mc * std::sinh(wl.xi())};
}

}  // namespace eprfw

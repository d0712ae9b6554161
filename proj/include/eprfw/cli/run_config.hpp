#pragma once

#include "eprfw/errors.hpp"
#include "eprfw/geometry.hpp"
#include "eprfw/kinematics.hpp"
#include "eprfw/linalg.hpp"

#include <charconv>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace eprfw::cli {

enum class OutputFormat { csv, json };

/// `--sweep var:start:stop:count`. var is one of alpha, xi, beta, phi.
struct SweepSpec {
  std::string variable;
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 1;

  std::vector<double> values() const {
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) {
      v[i] = count == 1 ? start
                        : start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    if (count > 1) {
      v.back() = stop;
    }
    return v;
  }
};

struct RunConfig {
  double alpha = 0.5;
  std::optional<double> xi;
  std::optional<double> beta;  // v / c
  double rho = 2.0;
  double phi = kPi;
  double c = 1.0;
  std::vector<SweepSpec> sweeps;
  std::size_t steps = 4096;
  std::string out;  // empty: stdout
  OutputFormat format = OutputFormat::csv;
  bool degrees = false;
  bool inject_fault = false;  // verify only: flip the spin-connection sign
};

/// One evaluation point after sweeps and unit conversion.
struct SweepPoint {
  double alpha = 0.0;
  double xi = 0.0;
  double phi = 0.0;
};

namespace detail {
inline double parse_double(std::string_view s, const std::string& what) {
  // std::from_chars for double is available in libstdc++ 11.
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ArgumentError("invalid number '" + std::string(s) + "' in " + what);
  }
  return v;
}
}  // namespace detail

inline SweepSpec parse_sweep(const std::string& text) {
  std::vector<std::string_view> parts;
  std::string_view rest(text);
  while (true) {
    const auto pos = rest.find(':');
    parts.push_back(rest.substr(0, pos));
    if (pos == std::string_view::npos) {
      break;
    }
    rest.remove_prefix(pos + 1);
  }
  if (parts.size() != 4) {
    throw ArgumentError("sweep must be <var>:<start>:<stop>:<count>, got '" + text + "'");
  }
  SweepSpec s;
  s.variable = std::string(parts[0]);
  if (s.variable != "alpha" && s.variable != "xi" && s.variable != "beta" && s.variable != "phi") {
    throw ArgumentError("sweep: unknown variable '" + s.variable + "' (alpha, xi, beta, phi)");
  }
  s.start = detail::parse_double(parts[1], "sweep start");
  s.stop = detail::parse_double(parts[2], "sweep stop");
  const double count = detail::parse_double(parts[3], "sweep count");
  if (!(count >= 1.0) || count != static_cast<double>(static_cast<std::size_t>(count))) {
    throw ArgumentError("sweep: count must be a positive integer, got '" + std::string(parts[3]) + "'");
  }
  s.count = static_cast<std::size_t>(count);
  return s;
}

/// Throws DomainError or ArgumentError naming the offending field.
inline void validate(const RunConfig& cfg) {
  if (cfg.xi && cfg.beta) {
    throw ArgumentError("xi: give at most one of --xi and --beta");
  }
  StringGeometry(cfg.alpha, cfg.c);  // alpha and c ranges
  if (!(cfg.rho > 0.0)) {
    throw DomainError("rho: point on string axis (rho must be positive)");
  }
  if (cfg.xi && !(*cfg.xi >= 0.0)) {
    throw DomainError("xi: rapidity must be non-negative");
  }
  if (cfg.beta) {
    rapidity_from_speed(*cfg.beta);
  }
  if (cfg.steps < 1) {
    throw ArgumentError("steps: must be at least 1");
  }
  for (const SweepSpec& s : cfg.sweeps) {
    if (s.count < 1) {
      throw ArgumentError("sweep: count must be at least 1");
    }
  }
}

/// Evaluation points in deterministic order: the cartesian product of all
/// sweeps, the last given sweep varying fastest.
inline std::vector<SweepPoint> expand(const RunConfig& cfg) {
  validate(cfg);
  const double to_rad = cfg.degrees ? kPi / 180.0 : 1.0;
  SweepPoint base;
  base.alpha = cfg.alpha;
  base.xi = cfg.beta ? rapidity_from_speed(*cfg.beta) : cfg.xi.value_or(0.0);
  base.phi = cfg.phi * to_rad;

  std::vector<SweepPoint> points{base};
  for (const SweepSpec& s : cfg.sweeps) {
    std::vector<SweepPoint> next;
    next.reserve(points.size() * s.count);
    for (const SweepPoint& p : points) {
      for (double v : s.values()) {
        SweepPoint q = p;
        if (s.variable == "alpha") {
          q.alpha = v;
        } else if (s.variable == "xi") {
          q.xi = v;
        } else if (s.variable == "beta") {
          q.xi = rapidity_from_speed(v);
        } else {
          q.phi = v * to_rad;
        }
        next.push_back(q);
      }
    }
    points = std::move(next);
  }
  for (const SweepPoint& p : points) {
    StringGeometry(p.alpha, cfg.c);
    if (!(p.xi >= 0.0)) {
      throw DomainError("xi: rapidity must be non-negative");
    }
    if (!(p.phi >= 0.0)) {
      throw DomainError("phi: observer angle must be non-negative");
    }
  }
  return points;
}

}  // namespace eprfw::cli

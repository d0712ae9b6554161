#pragma once

// Subcommands of the eprfw executable. Each renders its result into a string
// so callers (and tests) decide where it goes.

#include "eprfw/cli/output.hpp"
#include "eprfw/cli/run_config.hpp"
#include "eprfw/epr.hpp"
#include "eprfw/geometry.hpp"
#include "eprfw/kinematics.hpp"
#include "eprfw/transport.hpp"
#include "eprfw/verification/oracles.hpp"
#include "eprfw/verification/suite.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace eprfw::cli {

inline constexpr const char* kVersion = "1.0.0";

inline nlohmann::ordered_json metadata(const RunConfig& cfg, const std::string& command) {
  nlohmann::ordered_json m;
  m["version"] = kVersion;
  m["command"] = command;
  nlohmann::ordered_json c;
  c["alpha"] = cfg.alpha;
  if (cfg.beta) {
    c["beta"] = *cfg.beta;
  } else {
    c["xi"] = cfg.xi.value_or(0.0);
  }
  c["rho"] = cfg.rho;
  c["phi"] = cfg.phi;
  c["c"] = cfg.c;
  c["steps"] = cfg.steps;
  c["degrees"] = cfg.degrees;
  c["sweeps"] = nlohmann::ordered_json::array();
  for (const SweepSpec& s : cfg.sweeps) {
    c["sweeps"].push_back({{"variable", s.variable}, {"start", s.start}, {"stop", s.stop},
                           {"count", s.count}});
  }
  m["config"] = std::move(c);
  return m;
}

inline std::string render(const Table& t, const RunConfig& cfg, const std::string& command) {
  std::ostringstream os;
  if (cfg.format == OutputFormat::json) {
    write_json(os, t, metadata(cfg, command));
  } else {
    write_csv(os, t);
  }
  return os.str();
}

/// One row per component: closed-form value next to an independent oracle.
struct GeometryReport {
  std::vector<std::string> quantity;
  std::vector<double> value;
  std::vector<double> oracle;

  void add(std::string name, double v, double o) {
    quantity.push_back(std::move(name));
    value.push_back(v);
    oracle.push_back(o);
  }
};

inline GeometryReport geometry_report(const RunConfig& cfg) {
  const std::vector<SweepPoint> pts = expand(cfg);
  const SweepPoint& p = pts.front();
  const StringGeometry geom(p.alpha, cfg.c);
  const SpacetimePoint pt{0.0, cfg.rho, 0.0, 0.0};
  const CircularWorldline wl(geom, cfg.rho, p.xi);
  const Vector4 acc = proper_acceleration(wl);

  GeometryReport r;
  const Matrix4 g = metric_at(geom, pt).g;
  const Tetrad tet = tetrad_at(geom, pt);
  const Matrix4 rebuilt = tet.e.transpose() * minkowski() * tet.e;
  const char* names[4] = {"t", "rho", "z", "phi"};
  for (int m = 0; m < 4; ++m) {
    r.add(std::string("g_") + names[m] + names[m], g(m, m), rebuilt(m, m));
  }
  const Matrix4 inv = tet.e.inverse();
  for (int a = 0; a < 4; ++a) {
    r.add("e^" + std::to_string(a) + "_" + names[a], tet.e(a, a), std::sqrt(std::abs(g(a, a))));
    r.add(std::string("e^") + names[a] + "_" + std::to_string(a), tet.einv(a, a), inv(a, a));
  }
  const ChristoffelSymbols chr = christoffel_at(geom, pt);
  const ChristoffelSymbols chr_fd = oracle::fd_christoffel(geom, pt);
  r.add("Gamma^rho_phiphi", chr(1, 3, 3), chr_fd(1, 3, 3));
  r.add("Gamma^phi_rhophi", chr(3, 1, 3), chr_fd(3, 1, 3));

  const ConnectionOneForm w = spin_connection_at(geom, pt);
  const ConnectionOneForm w_fd = oracle::fd_spin_connection(geom, pt);
  r.add("omega_phi^1_3", w(3, 1, 3), w_fd(3, 1, 3));
  r.add("omega_phi^3_1", w(3, 3, 1), w_fd(3, 3, 1));

  const ConnectionOneForm tau = fw_connection_at(geom, pt, acc);
  const ConnectionOneForm tau_tab =
      oracle::tabulated_fw_connection(geom.alpha(), cfg.rho, acc[coord::rho], cfg.c);
  const ConnectionOneForm total = total_connection_at(geom, pt, acc);
  const ConnectionOneForm total_tab =
      oracle::tabulated_total_connection(geom.alpha(), cfg.rho, acc[coord::rho], cfg.c);
  struct Entry {
    const char* name;
    int mu, a, b;
  };
  const Entry tau_entries[] = {{"tau_t^0_1", 0, 0, 1},   {"tau_t^1_0", 0, 1, 0},
                               {"tau_z^1_2", 2, 1, 2},   {"tau_z^2_1", 2, 2, 1},
                               {"tau_phi^1_3", 3, 1, 3}, {"tau_phi^3_1", 3, 3, 1}};
  for (const Entry& e : tau_entries) {
    r.add(e.name, tau(e.mu, e.a, e.b), tau_tab(e.mu, e.a, e.b));
  }
  const Entry total_entries[] = {{"Omega_t^0_1", 0, 0, 1},
                                 {"Omega_z^1_2", 2, 1, 2},
                                 {"Omega_phi^1_3", 3, 1, 3}};
  for (const Entry& e : total_entries) {
    r.add(e.name, total(e.mu, e.a, e.b), total_tab(e.mu, e.a, e.b));
  }
  r.add("max_abs_Riemann", riemann_at(geom, pt, std::min(1e-4, 0.5 * cfg.rho)).max_abs(), 0.0);
  return r;
}

inline std::string cmd_geometry(const RunConfig& cfg) {
  const GeometryReport r = geometry_report(cfg);
  if (cfg.format == OutputFormat::json) {
    nlohmann::ordered_json doc;
    doc["metadata"] = metadata(cfg, "geometry");
    doc["records"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < r.quantity.size(); ++i) {
      doc["records"].push_back({{"quantity", r.quantity[i]},
                                {"value", r.value[i]},
                                {"oracle", r.oracle[i]},
                                {"abs_error", std::abs(r.value[i] - r.oracle[i])}});
    }
    return doc.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "quantity,value,oracle,abs_error\n";
  for (std::size_t i = 0; i < r.quantity.size(); ++i) {
    os << r.quantity[i] << ',' << format_number(r.value[i]) << ',' << format_number(r.oracle[i])
       << ',' << format_number(std::abs(r.value[i] - r.oracle[i])) << '\n';
  }
  return os.str();
}

inline Table transport_table(const RunConfig& cfg) {
  const std::vector<SweepPoint> pts = expand(cfg);
  Table t;
  t.columns = {"alpha",    "xi",       "Phi",      "direction", "theta",         "eta1",
               "eta2",     "xi00_re",  "xi00_im",  "xi01_re",   "xi01_im",       "xi10_re",
               "xi10_im",  "xi11_re",  "xi11_im",  "det_re",    "det_im",        "unitarity_defect",
               "steps",    "numeric_error"};
  const auto rows = parallel_map<std::vector<std::vector<double>>>(pts.size(), [&](std::size_t i) {
    const SweepPoint& p = pts[i];
    std::vector<std::vector<double>> out;
    for (Direction d : {Direction::positive, Direction::negative}) {
      const CircularWorldline wl(StringGeometry(p.alpha, cfg.c), cfg.rho, p.xi, d);
      const TransportParams tp = transport_params(wl, p.phi);
      const SpinHalfOperator x = transport_closed_form(tp);
      const SpinHalfOperator n = transport_numeric<Representation::spin_half>(wl, p.phi, cfg.steps);
      const complex det = x.det();
      out.push_back({p.alpha, p.xi, p.phi, sign(d), tp.theta, tp.eta1, tp.eta2,
                     x.m(0, 0).real(), x.m(0, 0).imag(), x.m(0, 1).real(), x.m(0, 1).imag(),
                     x.m(1, 0).real(), x.m(1, 0).imag(), x.m(1, 1).real(), x.m(1, 1).imag(),
                     det.real(), det.imag(), x.unitarity_defect(), static_cast<double>(cfg.steps),
                     max_abs_diff(n.m, x.m)});
    }
    return out;
  });
  for (const auto& group : rows) {
    for (const auto& row : group) {
      t.rows.push_back(row);
    }
  }
  return t;
}

inline std::string cmd_transport(const RunConfig& cfg) {
  return render(transport_table(cfg), cfg, "transport");
}

inline Table bell_table(const RunConfig& cfg) {
  const std::vector<SweepPoint> pts = expand(cfg);
  Table t;
  t.columns = {"alpha", "xi", "Phi", "theta", "norm", "chsh_direct", "chsh_closed", "chsh_restored",
               "restored_residual"};
  t.rows = parallel_map<std::vector<double>>(pts.size(), [&](std::size_t i) {
    const SweepPoint& p = pts[i];
    const BellReport r = bell_report(StringGeometry(p.alpha, cfg.c), cfg.rho, p.xi, p.phi);
    return std::vector<double>{r.alpha, r.xi, r.Phi, r.theta, r.norm, r.chsh_direct,
                               r.chsh_closed, r.chsh_restored, r.restored_residual};
  });
  return t;
}

inline std::string cmd_bell(const RunConfig& cfg) { return render(bell_table(cfg), cfg, "bell"); }

struct VerifyOutcome {
  std::string text;
  bool passed = false;
};

inline VerifyOutcome cmd_verify(const RunConfig& cfg) {
  verify::Options opt;
  opt.steps = cfg.steps;
  opt.inject_spin_connection_sign_flip = cfg.inject_fault;
  const verify::Report rep = verify::run(opt);

  VerifyOutcome out;
  out.passed = rep.all_passed();
  std::ostringstream os;
  if (cfg.format == OutputFormat::json) {
    nlohmann::ordered_json doc;
    doc["metadata"] = metadata(cfg, "verify");
    doc["passed"] = out.passed;
    doc["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : rep.checks) {
      nlohmann::ordered_json j;
      j["name"] = c.name;
      j["kind"] = c.finding ? "finding" : "check";
      j["comparison"] = c.comparison == verify::Comparison::at_most ? "at_most" : "at_least";
      j["tolerance"] = c.finding ? nlohmann::ordered_json() : nlohmann::ordered_json(c.tolerance);
      j["observed"] = c.observed;
      j["passed"] = c.passed();
      doc["checks"].push_back(std::move(j));
    }
    os << doc.dump(2) << '\n';
  } else {
    os << "name,kind,comparison,tolerance,observed,passed\n";
    for (const auto& c : rep.checks) {
      os << c.name << ',' << (c.finding ? "finding" : "check") << ','
         << (c.comparison == verify::Comparison::at_most ? "at_most" : "at_least") << ','
         << (c.finding ? std::string() : format_number(c.tolerance)) << ','
         << format_number(c.observed) << ',' << (c.passed() ? "true" : "false") << '\n';
    }
  }
  out.text = os.str();
  return out;
}

}  // namespace eprfw::cli

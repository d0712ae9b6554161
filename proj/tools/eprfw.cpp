// eprfw: command-line front end for the spin-transport library.

#include "eprfw/cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2, kIo = 3 };

}  // namespace

int main(int argc, char** argv) {
  using namespace eprfw;
  cli::RunConfig cfg;

  CLI::App app{"Spin transport and EPR correlations around a cosmic string", "eprfw"};
  app.set_version_flag("--version", cli::kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file (# comments); flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);

  double xi = 0.0;
  double beta = 0.0;
  std::vector<std::string> sweeps;
  std::string format = "csv";

  app.add_option("--alpha", cfg.alpha, "deficit parameter, 0 < alpha <= 1")->capture_default_str();
  auto* xi_opt = app.add_option("--xi", xi, "rapidity (default 0)");
  auto* beta_opt = app.add_option("--beta", beta, "speed v/c, alternative to --xi");
  xi_opt->excludes(beta_opt);
  app.add_option("--rho", cfg.rho, "orbit radius")->capture_default_str();
  app.add_option("--phi", cfg.phi, "observer angle Phi")->capture_default_str();
  app.add_option("--c", cfg.c, "speed of light")->capture_default_str();
  app.add_option("--sweep", sweeps, "var:start:stop:count, var in alpha|xi|beta|phi (repeatable)")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  app.add_option("--steps", cfg.steps, "integrator steps")->capture_default_str();
  app.add_option("--out", cfg.out, "output path (default stdout)");
  app.add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_flag("--degrees", cfg.degrees, "angles given in degrees");
  app.add_flag("--inject-fault", cfg.inject_fault)->group("");

  auto* geometry = app.add_subcommand("geometry", "metric, tetrad and connection components");
  auto* transport = app.add_subcommand("transport", "spin transport operators");
  auto* bell = app.add_subcommand("bell", "final state and CHSH values");
  auto* verify = app.add_subcommand("verify", "run the self-verification suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::FileError& e) {
    std::cerr << "eprfw: " << e.what() << '\n';
    return kIo;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  if (xi_opt->count() > 0) {
    cfg.xi = xi;
  }
  if (beta_opt->count() > 0) {
    cfg.beta = beta;
  }
  cfg.format = format == "json" ? cli::OutputFormat::json : cli::OutputFormat::csv;

  try {
    for (const std::string& s : sweeps) {
      cfg.sweeps.push_back(cli::parse_sweep(s));
    }
    cli::validate(cfg);
    if (cfg.inject_fault && !verify->parsed()) {
      throw ArgumentError("inject-fault: only valid with verify");
    }

    if (geometry->parsed()) {
      cli::emit(cli::cmd_geometry(cfg), cfg.out, std::cout);
    } else if (transport->parsed()) {
      cli::emit(cli::cmd_transport(cfg), cfg.out, std::cout);
    } else if (bell->parsed()) {
      cli::emit(cli::cmd_bell(cfg), cfg.out, std::cout);
    } else {
      const cli::VerifyOutcome v = cli::cmd_verify(cfg);
      cli::emit(v.text, cfg.out, std::cout);
      if (!v.passed) {
        std::cerr << "eprfw: verification failed\n";
        return kCheckFailed;
      }
    }
  } catch (const cli::IoError& e) {
    std::cerr << "eprfw: " << e.what() << '\n';
    return kIo;
  } catch (const DomainError& e) {
    std::cerr << "eprfw: " << e.what() << '\n';
    return kUsage;
  } catch (const ArgumentError& e) {
    std::cerr << "eprfw: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

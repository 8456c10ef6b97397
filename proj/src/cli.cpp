// SPDX-License-Identifier: Apache-2.0

#include "mhdrt/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "mhdrt/growth.hpp"
#include "mhdrt/report.hpp"
#include "mhdrt/variational.hpp"
#include "mhdrt/verify.hpp"

namespace mhdrt {
namespace {

// Flag values shared by every subcommand; turned into the validated domain
// types only after parsing so violations surface as domain errors.
struct CommonOpts {
  double rho_plus = 2.0;
  double rho_minus = 1.0;
  double mu_plus = 0.3;
  double mu_minus = 0.1;
  double g = 1.0;
  std::string orientation = "vertical";
  double b = 0.0;
  int n = 32;
  double grading = 0.0;
  std::string config;
};

// CLI11 only processes a config file on the app that owns the parse, never
// on a subcommand, so the flat key=value file is expanded into ordinary
// tokens up front.  They are inserted right after the subcommand name;
// explicit flags come later in the token stream and win under the
// take-last option policy.
std::vector<std::string> expand_config_tokens(const std::vector<std::string>& args) {
  static const char* subcommands[] = {"critical", "dispersion", "evolve"};
  if (args.empty() || std::find(std::begin(subcommands), std::end(subcommands), args.front()) ==
                          std::end(subcommands))
    return args;
  const auto opt = std::find_if(args.begin(), args.end(), [](const std::string& a) {
    return a == "--config" || a.rfind("--config=", 0) == 0;
  });
  if (opt == args.end()) return args;
  std::string path;
  if (*opt == "--config") {
    if (std::next(opt) == args.end()) return args;  // CLI11 reports the missing value
    path = *std::next(opt);
  } else {
    path = opt->substr(std::string("--config=").size());
  }

  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  const auto strip = [](const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    line = strip(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    const std::string key = eq == std::string::npos ? std::string() : strip(line.substr(0, eq));
    if (key.empty()) throw IoError("config line is not key=value: " + line);
    tokens.push_back("--" + key);
    tokens.push_back(strip(line.substr(eq + 1)));
  }

  std::vector<std::string> expanded;
  expanded.reserve(args.size() + tokens.size());
  expanded.push_back(args.front());
  expanded.insert(expanded.end(), tokens.begin(), tokens.end());
  expanded.insert(expanded.end(), std::next(args.begin()), args.end());
  return expanded;
}

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  cmd->add_option("--rho-plus", o.rho_plus, "density above the interface");
  cmd->add_option("--rho-minus", o.rho_minus, "density below the interface");
  cmd->add_option("--mu-plus", o.mu_plus, "viscosity above the interface");
  cmd->add_option("--mu-minus", o.mu_minus, "viscosity below the interface");
  cmd->add_option("--g", o.g, "gravitational acceleration");
  cmd->add_option("--orientation", o.orientation, "field direction")
      ->check(CLI::IsMember({"vertical", "horizontal"}));
  cmd->add_option("--B", o.b, "field magnitude");
  cmd->add_option("--n", o.n, "mesh elements per side");
  cmd->add_option("--grading", o.grading, "interface/wall mesh grading in [0,1]");
  cmd->add_option("--config", o.config, "flat key=value configuration file; flags override it");
}

FluidParams make_params(const CommonOpts& o) {
  return FluidParams(o.rho_plus, o.rho_minus, o.mu_plus, o.mu_minus, o.g);
}

MagneticConfig make_mag(const CommonOpts& o) {
  return MagneticConfig(
      o.orientation == "vertical" ? Orientation::Vertical : Orientation::Horizontal, o.b);
}

RunConfig make_config(const CommonOpts& o, const GridSpec& grid, double dt, double t_end,
                      unsigned seed) {
  return RunConfig{make_params(o), make_mag(o), o.n, o.grading, grid, dt, t_end, seed};
}

int run_critical(const CommonOpts& o, const std::string& report_path) {
  const FluidParams params = make_params(o);
  const MagneticConfig mag = make_mag(o);
  LinearSpace p1(build_mesh(o.n, o.grading));
  HermiteSpace hermite(build_mesh(o.n, o.grading));

  if (mag.magnitude == 0.0) {
    std::cout << "|B|_c = " << format_double(critical_magnetic_number(params, p1)) << "\n";
    return 0;
  }

  const CriticalValues cv = compute_critical_values(params, mag, p1, hermite);
  std::cout << "|B|_c = " << format_double(cv.b_critical) << "\n";
  if (mag.magnitude >= cv.b_critical) {
    std::cout << "|B| >= |B|_c: every frequency is stabilized\n";
  } else if (mag.orientation == Orientation::Vertical) {
    std::cout << "|xi|_vc = " << format_double(cv.xi_vc) << "\n";
  } else {
    std::cout << "|xi|_hc = " << format_double(cv.xi_hc) << "\n";
    if (cv.xi_hc_oracle_value)
      std::cout << "|xi|_hc oracle = " << format_double(*cv.xi_hc_oracle_value) << "\n";
  }
  if (!report_path.empty()) {
    Report report{make_config(o, GridSpec{}, 0.01, 10.0, 0), cv, {}, {}, {}, {}};
    write_report(report, report_path);
    std::cout << "wrote " << report_path << "\n";
  }
  return 0;
}

int run_dispersion(const CommonOpts& o, const GridSpec& grid, const std::string& csv_path,
                   const std::string& svg_path, const std::string& report_path) {
  const FluidParams params = make_params(o);
  const MagneticConfig mag = make_mag(o);
  HermiteSpace space(build_mesh(o.n, o.grading));
  const DispersionCurve curve = dispersion_sweep(params, mag, make_grid(grid), space);

  int unstable = 0;
  int failed = 0;
  for (const GrowthResult& r : curve.samples) {
    if (r.failure) ++failed;
    else if (r.status == Stability::Unstable) ++unstable;
  }

  write_dispersion_csv(curve, csv_path);
  write_dispersion_svg(curve, svg_path);
  std::cout << curve.samples.size() << " samples: " << unstable << " unstable, " << failed
            << " failed, lambda_max = " << format_double(curve.lambda_max) << "\n";
  std::cout << "wrote " << csv_path << ", " << svg_path;

  if (!report_path.empty()) {
    Report report{make_config(o, grid, 0.01, 10.0, 0), {}, curve, {}, {}, {}};
    try {
      LinearSpace p1(build_mesh(o.n, o.grading));
      report.critical = compute_critical_values(params, mag, p1, space);
    } catch (const StableConfigurationError&) {
      // [rho] <= 0: there are no critical values; the sweep is still valid.
    }
    if (mag.orientation == Orientation::Vertical && mag.magnitude > 0.0) {
      report.vertical_bound = growth_bound(params, mag);
      bool within = true;
      for (const GrowthResult& r : curve.samples)
        if (!r.failure && r.status == Stability::Unstable)
          within = within && r.lambda <= *report.vertical_bound;
      report.bound_satisfied = within;
    }
    write_report(report, report_path);
    std::cout << ", " << report_path;
  }
  std::cout << "\n";
  return 0;
}

int run_evolve(const CommonOpts& o, const Frequency& xi, double dt, double t_end,
               const std::string& init, unsigned seed, const std::string& csv_path,
               const std::string& svg_path) {
  const FluidParams params = make_params(o);
  const MagneticConfig mag = make_mag(o);
  HermiteSpace space(build_mesh(o.n, o.grading));

  Vector a0 = Vector::Zero(space.dof_count());
  Vector v0 = Vector::Zero(space.dof_count());
  if (init == "eigenmode") {
    const GrowthResult g = solve_growth_rate(params, mag, xi, space);
    if (g.status != Stability::Unstable)
      throw NoModeError("configuration is stable at this frequency; no growing mode");
    a0 = g.psi;
    v0 = g.lambda * g.psi;
    std::cout << "eigenmode rate lambda = " << format_double(g.lambda) << "\n";
  } else if (init == "bump") {
    a0 = space.interpolate([](double x) { return (1.0 - x * x) * (1.0 - x * x); },
                           [](double x) { return -4.0 * x * (1.0 - x * x); });
  } else {
    std::mt19937 gen(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int i = 0; i < space.dof_count(); ++i) {
      a0[i] = normal(gen);
      v0[i] = normal(gen);
    }
  }

  const ModeTrajectory traj = evolve_mode(params, mag, xi, space, a0, v0, dt, t_end);
  write_trajectory_csv(traj, space, csv_path);
  write_energy_svg(traj, svg_path);
  std::cout << traj.times.size() - 1 << " steps to t = " << format_double(traj.times.back())
            << ", final norm " << format_double(traj.norm.back()) << "\n";
  try {
    std::cout << "fitted exponent = " << format_double(fit_growth_exponent(traj)) << "\n";
  } catch (const PreconditionError&) {
    // norm reached zero or too few samples; nothing to fit
  }
  std::cout << "wrote " << csv_path << ", " << svg_path << "\n";
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args) {
  CLI::App app{"linear stability of a viscous two-fluid MHD column"};
  app.require_subcommand(1);

  CommonOpts copt;
  std::string report_path;
  CLI::App* critical = app.add_subcommand("critical", "critical field and frequencies");
  add_common(critical, copt);
  critical->add_option("--report", report_path, "also write a JSON report");

  CommonOpts dopt;
  GridSpec grid{0.5, 8.0, 33, false, 0.0};
  std::string csv_path = "dispersion.csv";
  std::string svg_path = "dispersion.svg";
  std::string dreport_path;
  CLI::App* dispersion = app.add_subcommand("dispersion", "growth-rate sweep over |xi|");
  add_common(dispersion, dopt);
  dispersion->add_option("--xi-min", grid.xi_min, "first wave number");
  dispersion->add_option("--xi-max", grid.xi_max, "last wave number");
  dispersion->add_option("--xi-count", grid.count, "number of grid points");
  dispersion->add_flag("--log", grid.log_spacing, "logarithmic grid spacing");
  dispersion->add_option("--xi2", grid.xi2, "fixed cross-field wave-number component");
  dispersion->add_option("--csv", csv_path, "dispersion CSV path");
  dispersion->add_option("--svg", svg_path, "dispersion plot path");
  dispersion->add_option("--report", dreport_path, "also write a JSON report");

  CommonOpts eopt;
  double xi1 = 2.0;
  double xi2 = 0.0;
  double dt = 0.01;
  double t_end = 10.0;
  std::string init = "eigenmode";
  unsigned seed = 12345;
  std::string traj_path = "trajectory.csv";
  std::string energy_path = "energy.svg";
  CLI::App* evolve = app.add_subcommand("evolve", "integrate one Fourier mode in time");
  add_common(evolve, eopt);
  evolve->add_option("--xi1", xi1, "wave-number component along the field");
  evolve->add_option("--xi2", xi2, "cross-field wave-number component");
  evolve->add_option("--dt", dt, "time step");
  evolve->add_option("--t-end", t_end, "final time");
  evolve->add_option("--init", init, "initial data")
      ->check(CLI::IsMember({"eigenmode", "bump", "random"}));
  evolve->add_option("--seed", seed, "seed for random initial data");
  evolve->add_option("--csv", traj_path, "trajectory CSV path");
  evolve->add_option("--svg", energy_path, "energy plot path");

  unsigned vseed = 12345;
  CLI::App* verify = app.add_subcommand("verify", "run the acceptance property suite");
  verify->add_option("--seed", vseed, "seed for the randomized properties");

  std::vector<std::string> expanded;
  try {
    expanded = expand_config_tokens(args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;  // a bad config file is a usage error, like CLI11's own FileError
  }

  std::vector<const char*> argv;
  argv.reserve(expanded.size() + 1);
  argv.push_back("mhdrt");
  for (const std::string& a : expanded) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(critical)) return run_critical(copt, report_path);
    if (app.got_subcommand(dispersion))
      return run_dispersion(dopt, grid, csv_path, svg_path, dreport_path);
    if (app.got_subcommand(evolve))
      return run_evolve(eopt, Frequency(xi1, xi2), dt, t_end, init, seed, traj_path,
                        energy_path);
    const std::vector<CriterionResult> verdicts = run_acceptance(std::cout, vseed);
    for (const CriterionResult& r : verdicts)
      if (!r.passed) return 1;
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace mhdrt

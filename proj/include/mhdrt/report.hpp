// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "mhdrt/evolve.hpp"
#include "mhdrt/growth.hpp"
#include "mhdrt/variational.hpp"

namespace mhdrt {

// Wave-number grid of a sweep: `count` magnitudes from xi_min to xi_max
// (inclusive), linearly or logarithmically spaced, along the first axis
// with an optional fixed across-field component xi2.
struct GridSpec {
  double xi_min = 0.0;
  double xi_max = 0.0;
  int count = 0;
  bool log_spacing = false;
  double xi2 = 0.0;
};

std::vector<Frequency> make_grid(const GridSpec& grid);

// Everything a run needs, echoed verbatim into reports so a run can be
// reproduced from its output alone.
struct RunConfig {
  FluidParams params;
  MagneticConfig mag;
  int n_per_side = 32;
  double grading = 0.0;
  GridSpec grid;
  double dt = 0.01;
  double t_end = 10.0;
  unsigned seed = 12345;
  double phi_tol = 1e-10;     // |Phi - 1| acceptance
  double pencil_tol = 1e-8;   // relative pencil-residual acceptance

  void validate() const;
};

struct CriterionResult {
  int index = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Report {
  RunConfig config;
  std::optional<CriticalValues> critical;
  DispersionCurve curve;  // may be empty for critical-value runs
  std::optional<double> vertical_bound;
  std::optional<bool> bound_satisfied;
  std::vector<CriterionResult> verdicts;
};

// One double, 17 significant digits, locale-independent; round-trips
// exactly.  Non-finite values map to the JSON literal "null".
std::string format_double(double v);

// header: xi1,xi2,xi_mag,status,lambda,s_star,psi0,iterations
// One row per sample; lambda/s_star/psi0 are empty for stable and failed
// rows; status is "stable", "unstable" or "error".
void write_dispersion_csv(const DispersionCurve& curve, std::ostream& out);
void write_dispersion_csv(const DispersionCurve& curve, const std::string& path);

// header: t,norm,energy,dissipation,psi0
void write_trajectory_csv(const ModeTrajectory& traj, const HermiteSpace& space,
                          std::ostream& out);
void write_trajectory_csv(const ModeTrajectory& traj, const HermiteSpace& space,
                          const std::string& path);

// JSON report, schema "mhd-rt/1", fixed field order, 17-digit floats.
// Requires critical values or at least one sample.
void write_report(const Report& report, std::ostream& out);
void write_report(const Report& report, const std::string& path);

// Dispersion plot: growth rate against |xi| with one marker per sample
// (stable samples sit on the zero line).  Self-contained SVG.
void write_dispersion_svg(const DispersionCurve& curve, std::ostream& out);
void write_dispersion_svg(const DispersionCurve& curve, const std::string& path);

// Mode-energy history plot.
void write_energy_svg(const ModeTrajectory& traj, std::ostream& out);
void write_energy_svg(const ModeTrajectory& traj, const std::string& path);

}  // namespace mhdrt

// SPDX-License-Identifier: Apache-2.0

#include "mhdrt/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace mhdrt {

std::vector<Frequency> make_grid(const GridSpec& grid) {
  if (grid.count < 2) throw PreconditionError("sweep grids need at least 2 samples");
  if (!(grid.xi_min <= grid.xi_max))
    throw PreconditionError("grid bounds must satisfy xi_min <= xi_max");
  if (grid.log_spacing && !(grid.xi_min > 0.0))
    throw PreconditionError("log-spaced grids need xi_min > 0");
  std::vector<Frequency> freqs;
  freqs.reserve(static_cast<std::size_t>(grid.count));
  for (int i = 0; i < grid.count; ++i) {
    const double t = static_cast<double>(i) / (grid.count - 1);
    const double xi1 = grid.log_spacing
                           ? grid.xi_min * std::pow(grid.xi_max / grid.xi_min, t)
                           : grid.xi_min + t * (grid.xi_max - grid.xi_min);
    freqs.emplace_back(xi1, grid.xi2);
  }
  return freqs;
}

void RunConfig::validate() const {
  if (!(phi_tol > 0.0) || !(pencil_tol > 0.0))
    throw PreconditionError("tolerances must be positive");
  if (n_per_side < 4) throw InvalidMeshError("mesh needs at least 4 elements per side");
  if (!(grading >= 0.0) || !(grading <= 1.0))
    throw InvalidMeshError("grading must lie in [0,1]");
}

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  return out;
}

const char* status_label(const GrowthResult& r) {
  if (r.failure) return "error";
  return r.status == Stability::Unstable ? "unstable" : "stable";
}

void json_string(std::ostream& out, const std::string& s) {
  out << '"';
  for (char c : s) {
    switch (c) {
      case '"': out << "\\\""; break;
      case '\\': out << "\\\\"; break;
      case '\n': out << "\\n"; break;
      case '\r': out << "\\r"; break;
      case '\t': out << "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out << buf;
        } else {
          out << c;
        }
    }
  }
  out << '"';
}

}  // namespace

void write_dispersion_csv(const DispersionCurve& curve, std::ostream& out) {
  out << "xi1,xi2,xi_mag,status,lambda,s_star,psi0,iterations\n";
  for (const GrowthResult& r : curve.samples) {
    out << format_double(r.xi.xi1) << ',' << format_double(r.xi.xi2) << ','
        << format_double(r.xi.magnitude()) << ',' << status_label(r) << ',';
    const bool has_mode = !r.failure && r.status == Stability::Unstable;
    if (has_mode)
      out << format_double(r.lambda) << ',' << format_double(r.s_star) << ','
          << format_double(r.psi0);
    else
      out << ",,";
    out << ',' << r.iterations << '\n';
  }
}

void write_dispersion_csv(const DispersionCurve& curve, const std::string& path) {
  auto out = open_output(path);
  write_dispersion_csv(curve, out);
}

void write_trajectory_csv(const ModeTrajectory& traj, const HermiteSpace& space,
                          std::ostream& out) {
  out << "t,norm,energy,dissipation,psi0\n";
  const int i0 = space.interface_value_dof();
  for (std::size_t n = 0; n < traj.times.size(); ++n) {
    out << format_double(traj.times[n]) << ',' << format_double(traj.norm[n]) << ','
        << format_double(traj.energy[n]) << ',' << format_double(traj.dissipation[n]) << ','
        << format_double(traj.displacement[n][i0]) << '\n';
  }
}

void write_trajectory_csv(const ModeTrajectory& traj, const HermiteSpace& space,
                          const std::string& path) {
  auto out = open_output(path);
  write_trajectory_csv(traj, space, out);
}

void write_report(const Report& report, std::ostream& out) {
  if (!report.critical && report.curve.samples.empty())
    throw PreconditionError("report has neither critical values nor samples");
  const RunConfig& c = report.config;
  out << "{\n";
  out << "  \"schema\": \"mhd-rt/1\",\n";
  out << "  \"config\": {\n";
  out << "    \"rho_plus\": " << format_double(c.params.rho_plus) << ",\n";
  out << "    \"rho_minus\": " << format_double(c.params.rho_minus) << ",\n";
  out << "    \"mu_plus\": " << format_double(c.params.mu_plus) << ",\n";
  out << "    \"mu_minus\": " << format_double(c.params.mu_minus) << ",\n";
  out << "    \"g\": " << format_double(c.params.g) << ",\n";
  out << "    \"orientation\": \""
      << (c.mag.orientation == Orientation::Vertical ? "vertical" : "horizontal")
      << "\",\n";
  out << "    \"b\": " << format_double(c.mag.magnitude) << ",\n";
  out << "    \"n_per_side\": " << c.n_per_side << ",\n";
  out << "    \"grading\": " << format_double(c.grading) << ",\n";
  out << "    \"xi_min\": " << format_double(c.grid.xi_min) << ",\n";
  out << "    \"xi_max\": " << format_double(c.grid.xi_max) << ",\n";
  out << "    \"xi_count\": " << c.grid.count << ",\n";
  out << "    \"log_spacing\": " << (c.grid.log_spacing ? "true" : "false") << ",\n";
  out << "    \"xi2\": " << format_double(c.grid.xi2) << ",\n";
  out << "    \"dt\": " << format_double(c.dt) << ",\n";
  out << "    \"t_end\": " << format_double(c.t_end) << ",\n";
  out << "    \"seed\": " << c.seed << ",\n";
  out << "    \"phi_tol\": " << format_double(c.phi_tol) << ",\n";
  out << "    \"pencil_tol\": " << format_double(c.pencil_tol) << "\n";
  out << "  },\n";
  if (report.critical) {
    const CriticalValues& cv = *report.critical;
    out << "  \"critical\": {\n";
    out << "    \"b_critical\": " << format_double(cv.b_critical) << ",\n";
    out << "    \"xi_vc\": " << format_double(cv.xi_vc) << ",\n";
    out << "    \"xi_hc\": " << format_double(cv.xi_hc) << ",\n";
    out << "    \"xi_hc_oracle\": "
        << (cv.xi_hc_oracle_value ? format_double(*cv.xi_hc_oracle_value) : "null") << "\n";
    out << "  },\n";
  } else {
    out << "  \"critical\": null,\n";
  }
  out << "  \"lambda_max\": " << format_double(report.curve.lambda_max) << ",\n";
  out << "  \"vertical_bound\": "
      << (report.vertical_bound ? format_double(*report.vertical_bound) : "null") << ",\n";
  out << "  \"bound_satisfied\": "
      << (report.bound_satisfied ? (*report.bound_satisfied ? "true" : "false") : "null")
      << ",\n";
  out << "  \"samples\": [";
  for (std::size_t i = 0; i < report.curve.samples.size(); ++i) {
    const GrowthResult& r = report.curve.samples[i];
    out << (i == 0 ? "\n" : ",\n");
    out << "    {\"xi1\": " << format_double(r.xi.xi1)
        << ", \"xi2\": " << format_double(r.xi.xi2)
        << ", \"xi_mag\": " << format_double(r.xi.magnitude()) << ", \"status\": \""
        << status_label(r) << "\"";
    if (!r.failure && r.status == Stability::Unstable) {
      out << ", \"lambda\": " << format_double(r.lambda)
          << ", \"s_star\": " << format_double(r.s_star)
          << ", \"psi0\": " << format_double(r.psi0)
          << ", \"phi_gap\": " << format_double(r.phi_gap)
          << ", \"pencil_residual\": " << format_double(r.pencil_residual);
    } else {
      out << ", \"lambda\": null, \"s_star\": null, \"psi0\": null"
          << ", \"phi_gap\": null, \"pencil_residual\": null";
    }
    out << ", \"iterations\": " << r.iterations;
    if (r.failure) {
      out << ", \"error\": ";
      json_string(out, *r.failure);
    }
    out << "}";
  }
  out << (report.curve.samples.empty() ? "]" : "\n  ]") << ",\n";
  out << "  \"verdicts\": [";
  for (std::size_t i = 0; i < report.verdicts.size(); ++i) {
    const CriterionResult& v = report.verdicts[i];
    out << (i == 0 ? "\n" : ",\n");
    out << "    {\"index\": " << v.index << ", \"name\": ";
    json_string(out, v.name);
    out << ", \"passed\": " << (v.passed ? "true" : "false") << ", \"detail\": ";
    json_string(out, v.detail);
    out << "}";
  }
  out << (report.verdicts.empty() ? "]" : "\n  ]") << "\n";
  out << "}\n";
}

void write_report(const Report& report, const std::string& path) {
  auto out = open_output(path);
  write_report(report, out);
}

namespace {

struct PlotFrame {
  double x0, x1, y0, y1;        // data ranges
  double px0, px1, py0, py1;    // pixel ranges (y inverted)

  double px(double x) const { return px0 + (x - x0) / (x1 - x0) * (px1 - px0); }
  double py(double y) const { return py0 - (y - y0) / (y1 - y0) * (py0 - py1); }
};

std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

void svg_header(std::ostream& out, const char* title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"440\" "
         "viewBox=\"0 0 720 440\">\n";
  out << "<title>" << title << "</title>\n";
  out << "<rect width=\"720\" height=\"440\" fill=\"white\"/>\n";
}

void svg_axes(std::ostream& out, const PlotFrame& f, const char* xlabel, const char* ylabel) {
  out << "<g stroke=\"black\" fill=\"none\">\n";
  out << "<line x1=\"" << f.px0 << "\" y1=\"" << f.py0 << "\" x2=\"" << f.px1 << "\" y2=\""
      << f.py0 << "\"/>\n";
  out << "<line x1=\"" << f.px0 << "\" y1=\"" << f.py0 << "\" x2=\"" << f.px0 << "\" y2=\""
      << f.py1 << "\"/>\n";
  out << "</g>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double tx = f.x0 + (f.x1 - f.x0) * i / 4.0;
    const double ty = f.y0 + (f.y1 - f.y0) * i / 4.0;
    out << "<text x=\"" << f.px(tx) << "\" y=\"" << f.py0 + 18.0
        << "\" text-anchor=\"middle\">" << fmt_tick(tx) << "</text>\n";
    out << "<text x=\"" << f.px0 - 8.0 << "\" y=\"" << f.py(ty) + 4.0
        << "\" text-anchor=\"end\">" << fmt_tick(ty) << "</text>\n";
  }
  out << "<text x=\"" << 0.5 * (f.px0 + f.px1) << "\" y=\"" << f.py0 + 38.0
      << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
  out << "<text x=\"16\" y=\"" << 0.5 * (f.py0 + f.py1)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << 0.5 * (f.py0 + f.py1) << ")\">" << ylabel << "</text>\n";
  out << "</g>\n";
}

}  // namespace

void write_dispersion_svg(const DispersionCurve& curve, std::ostream& out) {
  if (curve.samples.empty()) throw PreconditionError("nothing to plot");
  double xmin = curve.samples.front().xi.magnitude();
  double xmax = xmin;
  for (const GrowthResult& r : curve.samples) {
    xmin = std::min(xmin, r.xi.magnitude());
    xmax = std::max(xmax, r.xi.magnitude());
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  const double ymax = curve.lambda_max > 0.0 ? 1.08 * curve.lambda_max : 1.0;
  PlotFrame f{xmin, xmax, 0.0, ymax, 70.0, 700.0, 390.0, 30.0};

  svg_header(out, "growth rate dispersion");
  svg_axes(out, f, "|xi|", "lambda");
  out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  bool first = true;
  for (const GrowthResult& r : curve.samples) {
    if (r.failure) continue;
    const double y = r.status == Stability::Unstable ? r.lambda : 0.0;
    out << (first ? "" : " ") << f.px(r.xi.magnitude()) << ',' << f.py(y);
    first = false;
  }
  out << "\"/>\n";
  for (const GrowthResult& r : curve.samples) {
    const double y = (!r.failure && r.status == Stability::Unstable) ? r.lambda : 0.0;
    const char* fill = r.failure ? "#d62728"
                                 : (r.status == Stability::Unstable ? "#1f77b4" : "#7f7f7f");
    out << "<circle cx=\"" << f.px(r.xi.magnitude()) << "\" cy=\"" << f.py(y)
        << "\" r=\"3\" fill=\"" << fill << "\"/>\n";
  }
  out << "</svg>\n";
}

void write_dispersion_svg(const DispersionCurve& curve, const std::string& path) {
  auto out = open_output(path);
  write_dispersion_svg(curve, out);
}

void write_energy_svg(const ModeTrajectory& traj, std::ostream& out) {
  if (traj.times.empty()) throw PreconditionError("nothing to plot");
  double ymin = traj.energy.front();
  double ymax = ymin;
  for (double e : traj.energy) {
    ymin = std::min(ymin, e);
    ymax = std::max(ymax, e);
  }
  if (ymax == ymin) {
    ymax += 1.0;
    ymin -= 1.0;
  }
  PlotFrame f{traj.times.front(), traj.times.back(), ymin, ymax, 70.0, 700.0, 390.0, 30.0};
  svg_header(out, "mode energy history");
  svg_axes(out, f, "t", "energy");
  out << "<polyline fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"1.5\" points=\"";
  for (std::size_t n = 0; n < traj.times.size(); ++n)
    out << (n == 0 ? "" : " ") << f.px(traj.times[n]) << ',' << f.py(traj.energy[n]);
  out << "\"/>\n";
  out << "</svg>\n";
}

void write_energy_svg(const ModeTrajectory& traj, const std::string& path) {
  auto out = open_output(path);
  write_energy_svg(traj, out);
}

}  // namespace mhdrt

// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace mhdrt {

// Base class of every domain error thrown by the toolkit.  The CLI maps
// these to exit code 1; anything else escaping is a bug.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidMeshError : public Error { public: using Error::Error; };
class DegenerateFrequencyError : public Error { public: using Error::Error; };
class OrientationMismatchError : public Error { public: using Error::Error; };
class StableConfigurationError : public Error { public: using Error::Error; };
class SupercriticalFieldError : public Error { public: using Error::Error; };
class MassMatrixError : public Error { public: using Error::Error; };
class ConvergenceFailureError : public Error { public: using Error::Error; };
class UnboundedWindowError : public Error { public: using Error::Error; };
class NoModeError : public Error { public: using Error::Error; };
class PreconditionError : public Error { public: using Error::Error; };
class IoError : public Error { public: using Error::Error; };

// Densities, viscosities and gravity of the two-fluid column on (-1,1).
// The heavy-on-top case has rho_plus > rho_minus; the reverse is
// constructible so solvers can report it as spectrally stable instead of
// rejecting the input.
struct FluidParams {
  double rho_plus;   // density above the interface
  double rho_minus;  // density below
  double mu_plus;    // dynamic viscosity above
  double mu_minus;   // dynamic viscosity below
  double g;          // gravitational acceleration, > 0

  FluidParams(double rho_p, double rho_m, double mu_p, double mu_m, double gravity)
      : rho_plus(rho_p), rho_minus(rho_m), mu_plus(mu_p), mu_minus(mu_m), g(gravity) {
    if (!(rho_plus > 0.0) || !(rho_minus > 0.0))
      throw PreconditionError("densities must be positive");
    if (!(mu_plus >= 0.0) || !(mu_minus >= 0.0))
      throw PreconditionError("viscosities must be nonnegative");
    if (!(g > 0.0)) throw PreconditionError("gravity must be positive");
  }

  // [rho] = rho_plus - rho_minus, the jump across the interface
  double density_jump() const { return rho_plus - rho_minus; }
  bool rayleigh_taylor() const { return density_jump() > 0.0; }
  double rho(bool upper) const { return upper ? rho_plus : rho_minus; }
  double mu(bool upper) const { return upper ? mu_plus : mu_minus; }
};

// Direction of the uniform background field: along gravity (vertical) or
// within the interface plane (horizontal, taken along the first axis).
enum class Orientation { Vertical, Horizontal };

struct MagneticConfig {
  Orientation orientation;
  double magnitude;  // |B| >= 0

  MagneticConfig(Orientation o, double b) : orientation(o), magnitude(b) {
    if (!(magnitude >= 0.0)) throw PreconditionError("field magnitude must be nonnegative");
  }

  double b_sq() const { return magnitude * magnitude; }
};

// Horizontal wave vector of a normal mode; xi2 = 0 in the planar case.
struct Frequency {
  double xi1;
  double xi2;

  explicit Frequency(double x1, double x2 = 0.0) : xi1(x1), xi2(x2) {}

  double magnitude_sq() const { return xi1 * xi1 + xi2 * xi2; }
  double magnitude() const { return std::sqrt(magnitude_sq()); }
};

}  // namespace mhdrt

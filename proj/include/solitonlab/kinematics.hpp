#pragma once

#include <cmath>

#include "solitonlab/constants.hpp"

namespace solitonlab {

/// A real quantity that may diverge, e.g. the phase velocity of a particle at rest.
/// Reading value() on the unbounded variant throws DomainError.
class ExtendedReal {
 public:
  static ExtendedReal finite(double v) { return ExtendedReal(false, v); }
  static ExtendedReal unbounded() { return ExtendedReal(true, 0.0); }

  bool is_unbounded() const noexcept { return unbounded_; }
  double value() const;

 private:
  ExtendedReal(bool u, double v) : unbounded_(u), value_(v) {}
  bool unbounded_;
  double value_;
};

/// Every derived quantity of the zigzagging electron at axial velocity v.
///
/// inv_gamma is sqrt(1 - beta^2), the reciprocal of the usual Lorentz
/// factor. lambda_guide is the 2 w cos(phi) guide wavelength; lambda_phase is
/// V_phase / f_wave. The two disagree for v > 0 and are both kept.
struct KinematicState {
  double v;
  double beta;
  double inv_gamma;
  double phi;  // zigzag angle, sin(phi) = beta
  double f0;
  double f_clock;
  double f_wave;
  double f_zigzag;
  ExtendedReal V_phase;
  double w;
  double lambda_guide;
  ExtendedReal lambda_phase;
  double t_zigzag;
  double L_zigzag;
};

/// h / (2 m0 c). Throws ConfigError for m0 <= 0.
double guide_width(double m0, const PhysicalConstants& k);

/// Throws DomainError unless 0 <= v < c, ConfigError unless m0 > 0.
KinematicState kinematic_state(double v, double m0, const PhysicalConstants& k);

/// v = c sin(phi).
inline double velocity_from_angle(double phi, double c) { return c * std::sin(phi); }

}  // namespace solitonlab

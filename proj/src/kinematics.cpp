#include "solitonlab/kinematics.hpp"

#include <cmath>
#include <sstream>

#include "solitonlab/errors.hpp"

namespace solitonlab {

double ExtendedReal::value() const {
  if (unbounded_) throw DomainError("quantity is unbounded (particle at rest)");
  return value_;
}

double guide_width(double m0, const PhysicalConstants& k) {
  if (!(m0 > 0.0)) throw ConfigError("guide_width: mass must be positive");
  return k.h / (2.0 * m0 * k.c);
}

KinematicState kinematic_state(double v, double m0, const PhysicalConstants& k) {
  if (!(v >= 0.0) || !(v < k.c)) {
    std::ostringstream msg;
    msg << "kinematic_state: velocity " << v << " m/s outside [0, c)";
    throw DomainError(msg.str());
  }
  KinematicState s{.v = v,
                   .beta = v / k.c,
                   .inv_gamma = 0,
                   .phi = 0,
                   .f0 = m0 * k.c * k.c / k.h,
                   .f_clock = 0,
                   .f_wave = 0,
                   .f_zigzag = 0,
                   .V_phase = ExtendedReal::unbounded(),
                   .w = guide_width(m0, k),
                   .lambda_guide = 0,
                   .lambda_phase = ExtendedReal::unbounded(),
                   .t_zigzag = 0,
                   .L_zigzag = 0};
  s.inv_gamma = std::sqrt((1.0 - s.beta) * (1.0 + s.beta));
  s.phi = std::asin(s.beta);
  s.f_clock = s.f0 * s.inv_gamma;
  s.f_zigzag = s.f_clock;
  s.f_wave = s.f0 / s.inv_gamma;
  if (v > 0.0) {
    s.V_phase = ExtendedReal::finite(k.c / s.beta);
    s.lambda_phase = ExtendedReal::finite(s.V_phase.value() / s.f_wave);
  }
  // cos(phi) equals inv_gamma; use the latter so the identities are exact.
  s.lambda_guide = 2.0 * s.w * s.inv_gamma;
  s.t_zigzag = s.inv_gamma / s.f0;
  s.L_zigzag = 2.0 * s.w * s.beta / s.inv_gamma;
  return s;
}

}  // namespace solitonlab

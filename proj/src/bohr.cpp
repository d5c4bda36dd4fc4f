#include "solitonlab/bohr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "solitonlab/errors.hpp"

namespace solitonlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double extra_arc_time(double v, double period, double c) { return v * v / (c * c - v * v) * period; }

}  // namespace

BohrOrbit bohr_orbit(int N, const PhysicalConstants& k) {
  if (N < 1) throw ConfigError("bohr_orbit: N must be a positive integer");
  const double m = k.m0;
  BohrOrbit o{};
  o.N = N;
  o.velocity = k.e2_coulomb / (N * k.hbar);
  o.radius = N * k.hbar / (m * o.velocity);
  o.period = kTwoPi * o.radius / o.velocity;
  o.angular_momentum = m * o.velocity * o.radius;
  o.energy = -0.5 * m * o.velocity * o.velocity;
  o.tau = extra_arc_time(o.velocity, o.period, k.c);
  o.orbit_length = kTwoPi * o.radius;
  o.de_broglie_wavelength = k.h / (m * o.velocity);
  o.above_nonrelativistic_limit = o.velocity > 0.01 * k.c;
  return o;
}

double clock_phase(double z, double v, double m0, const PhysicalConstants& k) {
  const double beta = v / k.c;
  const double f_clock = m0 * k.c * k.c / k.h * std::sqrt((1.0 - beta) * (1.0 + beta));
  return f_clock * z / v;
}

double wave_phase(double z, double t, double v, double m0, const PhysicalConstants& k) {
  const double beta = v / k.c;
  const double f_wave = m0 * k.c * k.c / k.h / std::sqrt((1.0 - beta) * (1.0 + beta));
  return f_wave * (t - v * z / (k.c * k.c));
}

PhaseAccordance bohr_phase_accordance(int N, const PhysicalConstants& k) {
  const BohrOrbit orbit = bohr_orbit(N, k);
  const double v = orbit.velocity;
  const double beta = v / k.c;
  const double gamma = std::sqrt((1.0 - beta) * (1.0 + beta));
  const double f_clock = k.m0 * k.c * k.c / k.h * gamma;

  PhaseAccordance p{};
  p.tau = orbit.tau;
  p.tau_over_period = orbit.tau / orbit.period;
  p.nonrelativistic_gap = (f_clock * orbit.tau - N) / N;

  // Orbit obeying m0 v^2 T / gamma = N h: same speed, radius shrunk by gamma.
  const double radius = orbit.radius * gamma;
  const double period = kTwoPi * radius / v;
  p.quantization_residual = f_clock * extra_arc_time(v, period, k.c) - N;

  constexpr int kSamples = 100;
  double worst = 0.0;
  for (int i = 1; i <= kSamples; ++i) {
    const double z = orbit.orbit_length * i / kSamples;
    const double clock = clock_phase(z, v, k.m0, k);
    const double wave = wave_phase(z, z / v, v, k.m0, k);
    worst = std::max(worst, std::abs(wave - clock) / std::abs(clock));
  }
  p.phase_mismatch = worst;
  return p;
}

PhotonRelations photon_relations(double f, double f0, const PhysicalConstants& k) {
  if (!(f > 0.0) || !(f0 > 0.0)) throw DomainError("photon_relations: f and f0 must be positive");
  const double fz = f0 * f0 / f;
  return {fz, k.h * fz};
}

}  // namespace solitonlab

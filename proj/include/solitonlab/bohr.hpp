#pragma once

#include "solitonlab/constants.hpp"

namespace solitonlab {

/// Circular Bohr orbit from m v^2 r = e^2 and m v r = N hbar (nonrelativistic).
struct BohrOrbit {
  int N;
  double radius;
  double velocity;
  double period;
  double angular_momentum;
  double energy;  // -m v^2 / 2
  double tau;     // extra arc time v^2 / (c^2 - v^2) T
  double orbit_length;
  double de_broglie_wavelength;
  bool above_nonrelativistic_limit;  // v > 0.01 c
};

/// Throws ConfigError for N < 1.
BohrOrbit bohr_orbit(int N, const PhysicalConstants& k);

struct PhaseAccordance {
  double tau;
  double tau_over_period;
  /// f_clock tau - N on the orbit that satisfies the relativistic condition
  /// m0 v^2 T / gamma = N h (same v = e^2 / (N hbar), radius scaled by gamma).
  double quantization_residual;
  /// (f_clock tau - N) / N evaluated on the nonrelativistic bohr_orbit; about alpha^2 / (2 N^2).
  double nonrelativistic_gap;
  /// max relative mismatch of clock and wave phase over sampled path points
  double phase_mismatch;
};

PhaseAccordance bohr_phase_accordance(int N, const PhysicalConstants& k);

/// Phase (in cycles) of the internal clock after travelling z at velocity v: f_clock z / v.
double clock_phase(double z, double v, double m0, const PhysicalConstants& k);

/// Phase (in cycles) of the guide wave at (z, t): f_wave (t - z / V_phase) = (f0 / gamma)(t - v z / c^2).
double wave_phase(double z, double t, double v, double m0, const PhysicalConstants& k);

struct PhotonRelations {
  double f_zigzag;
  double E_zigzag;
};

/// f_zigzag = f0^2 / f and E = h f0^2 / f. Throws DomainError for non-positive inputs.
PhotonRelations photon_relations(double f, double f0, const PhysicalConstants& k);

}  // namespace solitonlab

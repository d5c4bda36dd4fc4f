#pragma once

namespace solitonlab {

/// SI constants backing the electron model. Values are CODATA 2018.
struct PhysicalConstants {
  double c;           // m/s
  double h;           // J s
  double hbar;        // J s
  double m0;          // kg, electron rest mass
  double e2_coulomb;  // J m, e^2/(4 pi eps0)
  double eV;          // J
};

PhysicalConstants electron_constants();

/// Natural units of a particle of mass m0: hbar = m0 = c = 1, so that the
/// rest angular frequency m0 c^2 / hbar is also 1.
struct UnitScale {
  double length;  // m, reduced Compton wavelength hbar/(m0 c)
  double time;    // s, hbar/(m0 c^2)
  double energy;  // J, m0 c^2

  static UnitScale natural(const PhysicalConstants& k);

  double to_si_length(double x) const { return x * length; }
  double to_normalized_length(double x) const { return x / length; }
  double to_si_time(double t) const { return t * time; }
  double to_normalized_time(double t) const { return t / time; }
  double to_si_energy(double e) const { return e * energy; }
  double to_normalized_energy(double e) const { return e / energy; }
};

}  // namespace solitonlab

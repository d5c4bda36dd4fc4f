#include "solitonlab/constants.hpp"

#include <numbers>

namespace solitonlab {

PhysicalConstants electron_constants() {
  constexpr double c = 299792458.0;
  constexpr double h = 6.62607015e-34;
  constexpr double e = 1.602176634e-19;
  constexpr double eps0 = 8.8541878128e-12;
  PhysicalConstants k{};
  k.c = c;
  k.h = h;
  k.hbar = h / (2.0 * std::numbers::pi);
  k.m0 = 9.1093837015e-31;
  k.e2_coulomb = e * e / (4.0 * std::numbers::pi * eps0);
  k.eV = e;
  return k;
}

UnitScale UnitScale::natural(const PhysicalConstants& k) {
  UnitScale u{};
  u.length = k.hbar / (k.m0 * k.c);
  u.time = k.hbar / (k.m0 * k.c * k.c);
  u.energy = k.m0 * k.c * k.c;
  return u;
}

}  // namespace solitonlab

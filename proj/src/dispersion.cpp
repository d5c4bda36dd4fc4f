#include "solitonlab/dispersion.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "solitonlab/errors.hpp"

namespace solitonlab {

namespace {

void check_common(double f0, double c, double hbar) {
  if (!(f0 > 0.0)) throw ConfigError("dispersion branch: f0 must be positive");
  if (!(c > 0.0)) throw ConfigError("dispersion branch: c must be positive");
  if (!(hbar > 0.0)) throw ConfigError("dispersion branch: hbar must be positive");
}

}  // namespace

DispersionBranch DispersionBranch::klein_gordon(double f0, double c) {
  check_common(f0, c, 1.0);
  return {DispersionKind::KleinGordon, f0, 0.0, c, 1.0};
}

DispersionBranch DispersionBranch::schrodinger(double f0, double potential_V, double c,
                                               double hbar) {
  check_common(f0, c, hbar);
  return {DispersionKind::SchrodingerApprox, f0, potential_V, c, hbar};
}

double DispersionBranch::omega0() const { return 2.0 * std::numbers::pi * f0; }

double omega(const DispersionBranch& b, double k) {
  const double w0 = b.omega0();
  const double ck = b.c * k;
  switch (b.kind) {
    case DispersionKind::KleinGordon:
      return std::hypot(w0, ck);
    case DispersionKind::SchrodingerApprox:
      return w0 + b.potential_V / b.hbar + ck * ck / (2.0 * w0);
  }
  return 0.0;
}

double group_velocity(const DispersionBranch& b, double k) {
  switch (b.kind) {
    case DispersionKind::KleinGordon:
      return b.c * b.c * k / omega(b, k);
    case DispersionKind::SchrodingerApprox:
      return b.c * b.c * k / b.omega0();
  }
  return 0.0;
}

double evanescent_kappa(double f, double f0_eff, double c) {
  if (!(f < f0_eff)) {
    std::ostringstream msg;
    msg << "evanescent_kappa: f = " << f << " is not below the cutoff " << f0_eff;
    throw DomainError(msg.str());
  }
  if (!(c > 0.0)) throw ConfigError("evanescent_kappa: c must be positive");
  return 2.0 * std::numbers::pi * std::sqrt((f0_eff - f) * (f0_eff + f)) / c;
}

}  // namespace solitonlab

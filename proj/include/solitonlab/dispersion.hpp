#pragma once

namespace solitonlab {

enum class DispersionKind { KleinGordon, SchrodingerApprox };

/// One branch of the dispersion hierarchy. Wavenumbers are angular (rad per
/// length) and omega() returns angular frequency; f0 is an ordinary frequency.
/// Units are whatever the caller uses consistently (SI or normalized).
struct DispersionBranch {
  DispersionKind kind;
  double f0;
  double potential_V;  // SchrodingerApprox only
  double c;
  double hbar;

  static DispersionBranch klein_gordon(double f0, double c = 1.0);
  static DispersionBranch schrodinger(double f0, double potential_V = 0.0, double c = 1.0,
                                      double hbar = 1.0);

  double omega0() const;
};

/// KleinGordon: sqrt(omega0^2 + (ck)^2).
/// SchrodingerApprox: omega0 + V/hbar + (ck)^2 / (2 omega0).
double omega(const DispersionBranch& branch, double k);

/// Analytic d omega / dk: c^2 k / omega(k) for KleinGordon, c^2 k / omega0 for
/// the parabolic branch (which exceeds c once ck > omega0).
double group_velocity(const DispersionBranch& branch, double k);

/// Decay rate 2 pi sqrt(f0_eff^2 - f^2) / c of the below-cutoff branch.
/// Throws DomainError when f >= f0_eff.
double evanescent_kappa(double f, double f0_eff, double c);

}  // namespace solitonlab

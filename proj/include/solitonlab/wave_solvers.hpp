#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "solitonlab/grid.hpp"
#include "solitonlab/run_report.hpp"

namespace solitonlab {

enum class Scheme { LinearSchrodinger, NLS, KleinGordon };

const char* scheme_name(Scheme s);

/// Integrator settings, in normalized units.
///
/// LinearSchrodinger: i psi_t + (1/2) psi_zz - V psi = 0   (hbar = m = 1)
/// NLS:               i phi_t + phi_zz + 2 |phi|^2 phi = 0  (V must be zero)
/// KleinGordon:       psi_tt = c^2 psi_zz - omega0^2 psi
struct SolverConfig {
  Scheme scheme = Scheme::LinearSchrodinger;
  double dt = 1e-3;
  double t_final = 1.0;
  std::size_t snapshot_every = 0;  // 0: initial and final only
  std::vector<double> potential;   // empty means V = 0
  double c = 1.0;                  // KleinGordon
  double omega0 = 1.0;             // KleinGordon
  std::optional<std::size_t> probe_index;

  /// Every violated guard, one message each. Empty means runnable on grid.
  std::vector<std::string> diagnostics(const Grid1D& grid) const;
  void validate(const Grid1D& grid) const;
};

/// Largest KleinGordon leapfrog step allowed: min(0.9 dz / c, the exact
/// leapfrog limit 2 / sqrt(4 c^2 / dz^2 + omega0^2)).
double klein_gordon_dt_limit(const Grid1D& grid, double c, double omega0);

/// Strang split-step: half potential phase, exact kinetic exp(-i k^2 dt / 2), half potential phase.
RunReport evolve_linear_schrodinger(const ComplexField& psi0, const SolverConfig& config);

/// Strang split-step: half kinetic steps exp(-i k^2 dt / 2) around the exact
/// nonlinear sub-flow exp(2 i |phi|^2 dt).
RunReport evolve_nls(const ComplexField& psi0, const SolverConfig& config);

/// Second-order leapfrog with the three-point Laplacian. The conserved
/// quantity reported is the scheme's exact discrete energy
/// sum dz [ |psi^{n+1} - psi^n|^2 / dt^2 + Re <psi^{n+1}, (-c^2 D2 + omega0^2) psi^n> ].
RunReport evolve_klein_gordon(const ComplexField& psi0, const ComplexField& dpsi0_dt,
                              const SolverConfig& config);

/// a exp[i v z / 2 + i (a^2 - v^2 / 4) t] sech[a (z - v t - z0)].
Complex nls_breather_exact(double z, double t, double a, double v, double z0);

}  // namespace solitonlab

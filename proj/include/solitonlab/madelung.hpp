#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "solitonlab/constants.hpp"
#include "solitonlab/grid.hpp"
#include "solitonlab/run_report.hpp"

namespace solitonlab {

inline constexpr double kDefaultNodeThreshold = 1e-6;

/// Polar form psi = R exp(i S / hbar). S is in action units and unwrapped
/// outward from the amplitude peak.
struct MadelungField {
  Grid1D grid;
  std::vector<double> R;
  std::vector<double> S;
  double hbar = 1.0;
};

/// A diagnostic that is only meaningful where R is above threshold.
/// Off-support entries of values are zero.
struct SupportProfile {
  std::vector<double> values;
  std::vector<std::uint8_t> on_support;

  double max_abs() const;
};

/// Throws NodeError (with the node locations) when |psi| drops below
/// node_threshold * max|psi| between two above-threshold regions.
MadelungField decompose(const ComplexField& psi, double node_threshold = kDefaultNodeThreshold,
                        double hbar = 1.0);
ComplexField recompose(const MadelungField& field);

/// Q = -(hbar^2 / 2m) R_zz / R with a spectral second derivative of R.
SupportProfile quantum_potential(const MadelungField& field, double mass,
                                 double support_threshold = kDefaultNodeThreshold);

/// Which Hamilton-Jacobi equation to evaluate.
enum class HamiltonJacobiForm {
  Quantum,    // S_t + S_z^2 / 2m + V - (hbar^2 / 2m) R_zz / R
  Classical,  // S_t + S_z^2 / 2m + V
};

/// Pointwise left-hand side with S_t supplied analytically.
SupportProfile hj_residual(const MadelungField& field, std::span<const double> dS_dt,
                           std::span<const double> potential, double mass, HamiltonJacobiForm form,
                           double support_threshold = kDefaultNodeThreshold);

/// Residual at the midpoint of two snapshots taken `interval` apart: S_t by a
/// centered difference (phase differences wrapped, so independent unwrapping
/// offsets cancel) and spatial terms averaged over the pair.
SupportProfile hj_residual(const MadelungField& earlier, const MadelungField& later,
                           double interval, std::span<const double> potential, double mass,
                           HamiltonJacobiForm form,
                           double support_threshold = kDefaultNodeThreshold);

/// d(R^2)/dt + d/dz(R^2 S_z / m) at the midpoint of a snapshot pair.
SupportProfile continuity_residual(const MadelungField& earlier, const MadelungField& later,
                                   double interval, double mass,
                                   double support_threshold = kDefaultNodeThreshold);

/// S_z on the support, from the spectral derivative of the recomposed field
/// with its mean carrier removed. Exposed for tests and reports.
SupportProfile phase_gradient(const MadelungField& field,
                              double support_threshold = kDefaultNodeThreshold);

/// Settings for the quantum-potential-cancelling evolution.
///
/// The envelope is R0 = r sech(a (z - center)) with S0 = m v_e (z - center).
/// The potential is tabulated; its end-to-end linear trend is treated as a
/// uniform force so that V = g z is representable on the periodic grid.
struct QFreeConfig {
  double r = 1.0;
  double a = 1.0;
  double v_e = 0.0;
  double center = 0.0;
  double mass = 1.0;
  double hbar = 1.0;
  std::vector<double> potential;  // empty means V = 0
  double dt = 1e-3;
  double t_final = 1.0;
  std::size_t snapshot_every = 0;

  std::vector<std::string> diagnostics(const Grid1D& grid) const;
  void validate(const Grid1D& grid) const;
};

MadelungField qfree_envelope(const QFreeConfig& config, const Grid1D& grid);

/// Integrates S_t = -(S_z^2 / 2m + V) and (R^2)_t + (R^2 S_z / m)_z = 0 with
/// spectral space derivatives and classical RK4 in time. S is carried as a
/// uniform background momentum plus a periodic remainder. Throws CflViolation
/// if dt exceeds 0.5 dz / max|S_z / m| at any step.
RunReport evolve_qfree(const MadelungField& initial, const QFreeConfig& config);

struct SolitonAmplitude {
  double si;          // m
  double normalized;  // in units of hbar / (m0 c)
};

/// r = c h / (4 (m0 c^2 + V)), V in joules. Throws DomainError if m0 c^2 + V <= 0.
SolitonAmplitude soliton_amplitude(double V, const PhysicalConstants& k);

}  // namespace solitonlab

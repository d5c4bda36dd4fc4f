#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "solitonlab/constants.hpp"
#include "solitonlab/kernels.hpp"

namespace solitonlab {

/// Rectangular barrier met by a free electron, SI units.
struct BarrierSpec {
  double V0;  // J
  double L;   // m
  double E;   // J, kinetic energy
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  double gap_offset = 0.0;  // shift of the narrowed guide, as a fraction of w

  std::vector<std::string> diagnostics() const;
  void validate() const;
};

/// The hidden-phase reading of a barrier:
///   inside, the cutoff rises to f0' = f0 + V0 / h and the guide narrows to
///   w' = c / (2 f0'); the gap of width w' sits centered (plus gap_offset w)
///   in the incoming guide of width w. A uniformly distributed zigzag phase
///   maps to a transverse position through a triangle wave; landing in the
///   gap transmits, otherwise the electron is reflected. Below the shifted
///   cutoff (f_wave < f0'), gap hits tunnel with probability exp(-2 kappa L).
struct BarrierModel {
  double f0;
  double f0_barrier;
  double f_wave;
  double w;
  double w_barrier;
  double gap_lo;
  double gap_hi;
  bool propagating;
  double kappa;  // rad/m, zero when propagating
  double tunnel_probability;

  kernels::TrialModel trial_model(std::uint64_t seed) const;
  bool operator==(const BarrierModel&) const = default;
};

BarrierModel barrier_model(const BarrierSpec& spec, const PhysicalConstants& k);

struct MonteCarloReport {
  std::uint64_t transmitted;
  std::uint64_t reflected;
  std::uint64_t tunneled;
  double transmission_fraction;  // (transmitted + tunneled) / trials
  double standard_error;         // binomial, sqrt(p (1 - p) / K)
  double geometric_gap_fraction;
  double linear_T;
  std::uint64_t seed;
  BarrierModel model;

  bool operator==(const MonteCarloReport&) const = default;
};

/// parallel_trials <= 1 runs the serial reference; larger values the OpenMP kernel.
MonteCarloReport run_barrier_monte_carlo(const BarrierSpec& spec, const PhysicalConstants& k,
                                         int parallel_trials = 1);

/// Transmission coefficient of the rectangular barrier under the linear
/// Schrodinger equation, by 2x2 transfer matrices in the (psi, psi') basis.
double rectangular_barrier_transmission(double E, double V0, double L, double mass, double hbar);

double linear_barrier_transmission(const BarrierSpec& spec, const PhysicalConstants& k);

}  // namespace solitonlab

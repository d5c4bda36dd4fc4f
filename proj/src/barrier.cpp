#include "solitonlab/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "solitonlab/dispersion.hpp"
#include "solitonlab/errors.hpp"
#include "solitonlab/kinematics.hpp"

namespace solitonlab {

std::vector<std::string> BarrierSpec::diagnostics() const {
  std::vector<std::string> out;
  auto positive = [&out](double x, const char* name) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      std::ostringstream msg;
      msg << name << " must be a positive number (got " << x << ")";
      out.push_back(msg.str());
    }
  };
  positive(V0, "barrier.V0");
  positive(L, "barrier.L");
  positive(E, "barrier.E");
  if (trials < 1) out.emplace_back("barrier.trials must be >= 1");
  if (!std::isfinite(gap_offset) || std::abs(gap_offset) > 0.5) {
    out.emplace_back("barrier.gap_offset must lie in [-0.5, 0.5]");
  }
  return out;
}

void BarrierSpec::validate() const {
  const auto problems = diagnostics();
  if (!problems.empty()) throw ConfigError(problems.front());
}

kernels::TrialModel BarrierModel::trial_model(std::uint64_t seed) const {
  return {w, gap_lo, gap_hi, propagating, tunnel_probability, seed};
}

BarrierModel barrier_model(const BarrierSpec& spec, const PhysicalConstants& k) {
  spec.validate();
  BarrierModel m{};
  const double rest = k.m0 * k.c * k.c;
  m.f0 = rest / k.h;
  m.f0_barrier = m.f0 + spec.V0 / k.h;
  m.f_wave = (rest + spec.E) / k.h;
  m.w = guide_width(k.m0, k);
  m.w_barrier = k.c / (2.0 * m.f0_barrier);
  const double center = 0.5 * m.w + spec.gap_offset * m.w;
  m.gap_lo = std::max(0.0, center - 0.5 * m.w_barrier);
  m.gap_hi = std::min(m.w, center + 0.5 * m.w_barrier);
  m.propagating = m.f_wave >= m.f0_barrier;
  if (m.propagating) {
    m.kappa = 0.0;
    m.tunnel_probability = 1.0;
  } else {
    m.kappa = evanescent_kappa(m.f_wave, m.f0_barrier, k.c);
    m.tunnel_probability = std::exp(-2.0 * m.kappa * spec.L);
  }
  return m;
}

MonteCarloReport run_barrier_monte_carlo(const BarrierSpec& spec, const PhysicalConstants& k,
                                         int parallel_trials) {
  const BarrierModel model = barrier_model(spec, k);
  const auto trial_model = model.trial_model(spec.seed);
  const kernels::TrialCounts counts =
      parallel_trials > 1 ? kernels::count_trials_parallel(trial_model, spec.trials, parallel_trials)
                          : kernels::count_trials_serial(trial_model, spec.trials);

  MonteCarloReport r{};
  r.transmitted = counts.transmitted;
  r.reflected = counts.reflected;
  r.tunneled = counts.tunneled;
  const double K = static_cast<double>(spec.trials);
  r.transmission_fraction = static_cast<double>(counts.transmitted + counts.tunneled) / K;
  r.standard_error = std::sqrt(r.transmission_fraction * (1.0 - r.transmission_fraction) / K);
  r.geometric_gap_fraction = (model.gap_hi - model.gap_lo) / model.w;
  r.linear_T = linear_barrier_transmission(spec, k);
  r.seed = spec.seed;
  r.model = model;
  return r;
}

double rectangular_barrier_transmission(double E, double V0, double L, double mass, double hbar) {
  if (!(E > 0.0) || !(L >= 0.0) || !(mass > 0.0) || !(hbar > 0.0)) {
    throw ConfigError("rectangular_barrier_transmission: need E > 0, L >= 0, mass > 0, hbar > 0");
  }
  using C = std::complex<double>;
  const double k = std::sqrt(2.0 * mass * E) / hbar;
  const C q = std::sqrt(C(2.0 * mass * (E - V0), 0.0)) / hbar;
  const C qL = q * L;

  // Transfer matrix of the barrier in the (psi, psi') basis; det = 1.
  C m11, m12, m21;
  if (std::abs(qL) < 1e-6) {
    const C x2 = qL * qL;
    m11 = 1.0 - x2 / 2.0 + x2 * x2 / 24.0;
    m12 = L * (1.0 - x2 / 6.0 + x2 * x2 / 120.0);
    m21 = -q * q * L * (1.0 - x2 / 6.0);
  } else {
    m11 = std::cos(qL);
    m12 = std::sin(qL) / q;
    m21 = -q * std::sin(qL);
  }
  const C m22 = m11;
  const C ik(0.0, k);
  // Incoming e^{ikz} + r e^{-ikz} on the left, a e^{ik(z-L)} on the right.
  const C r = (ik * m11 - k * k * m12 - m21 - ik * m22) / (-ik * m11 - k * k * m12 + m21 - ik * m22);
  const C a = m11 * (1.0 + r) + ik * m12 * (1.0 - r);
  return std::norm(a);
}

double linear_barrier_transmission(const BarrierSpec& spec, const PhysicalConstants& k) {
  spec.validate();
  return rectangular_barrier_transmission(spec.E, spec.V0, spec.L, k.m0, k.hbar);
}

}  // namespace solitonlab

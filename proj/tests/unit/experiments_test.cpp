#include <doctest.h>

#include <cmath>

#include "oracle_values.hpp"
#include "solitonlab/barrier.hpp"
#include "solitonlab/bohr.hpp"
#include "solitonlab/dichotomy.hpp"
#include "solitonlab/errors.hpp"
#include "solitonlab/kernels.hpp"
#include "solitonlab/kinematics.hpp"

using namespace solitonlab;
using doctest::Approx;

namespace {

BarrierSpec electron_barrier(double V0_rest, double E_rest, std::uint64_t trials) {
  const auto k = electron_constants();
  const double rest = k.m0 * k.c * k.c;
  BarrierSpec s;
  s.V0 = V0_rest * rest;
  s.E = E_rest * rest;
  s.L = 1e-12;
  s.trials = trials;
  s.seed = 7;
  return s;
}

}  // namespace

TEST_CASE("triangle-wave transverse position") {
  using kernels::transverse_position;
  CHECK(transverse_position(0.0, 2.0) == 0.0);
  CHECK(transverse_position(0.25, 2.0) == Approx(1.0));
  CHECK(transverse_position(0.5, 2.0) == Approx(2.0));
  CHECK(transverse_position(0.75, 2.0) == Approx(1.0));
  for (double p = 0.0; p < 1.0; p += 0.01) {
    const double x = transverse_position(p, 2.0);
    CHECK(x >= 0.0);
    CHECK(x <= 2.0);
  }
}

TEST_CASE("barrier geometry") {
  const auto k = electron_constants();
  const auto m = barrier_model(electron_barrier(0.25, 0.5, 1), k);
  CHECK(m.w == Approx(oracle::guide_width_electron_m).epsilon(1e-12));
  CHECK(m.w_barrier == Approx(m.w / 1.25).epsilon(1e-12));
  CHECK(m.gap_hi - m.gap_lo == Approx(m.w_barrier).epsilon(1e-12));
  CHECK((m.gap_lo + m.gap_hi) / 2 == Approx(m.w / 2).epsilon(1e-12));
  CHECK(m.propagating);
  CHECK(m.tunnel_probability == 1.0);

  const auto below = barrier_model(electron_barrier(0.5, 0.25, 1), k);
  CHECK_FALSE(below.propagating);
  CHECK(below.kappa > 0.0);
  CHECK(below.tunnel_probability == Approx(std::exp(-2 * below.kappa * 1e-12)));

  auto shifted = electron_barrier(0.25, 0.5, 1);
  shifted.gap_offset = 0.5;
  const auto edge = barrier_model(shifted, k);
  CHECK(edge.gap_hi == Approx(edge.w));
  CHECK(edge.gap_hi - edge.gap_lo == Approx(edge.w_barrier / 2));
}

TEST_CASE("barrier monte carlo is reproducible and thread-count independent") {
  const auto k = electron_constants();
  const auto spec = electron_barrier(0.25, 0.5, 200000);
  const auto serial = run_barrier_monte_carlo(spec, k, 1);
  CHECK(run_barrier_monte_carlo(spec, k, 1) == serial);
  for (int threads : {2, 3, 8}) CHECK(run_barrier_monte_carlo(spec, k, threads) == serial);
  const auto model = serial.model.trial_model(spec.seed);
  CHECK(kernels::count_trials_parallel(model, 12345, 0) == kernels::count_trials_serial(model, 12345));
  CHECK(serial.transmitted + serial.reflected + serial.tunneled == spec.trials);
  CHECK(std::abs(serial.transmission_fraction - serial.geometric_gap_fraction) <= 4 * serial.standard_error);
  auto other = spec;
  other.seed = 8;
  CHECK_FALSE(run_barrier_monte_carlo(other, k, 1).transmitted == serial.transmitted);
}

TEST_CASE("vanishing barrier transmits everything") {
  const auto k = electron_constants();
  const auto r = run_barrier_monte_carlo(electron_barrier(1e-12, 0.5, 10000), k);
  CHECK(r.transmission_fraction == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("below the shifted cutoff every transmission is a tunnel event") {
  const auto k = electron_constants();
  const auto r = run_barrier_monte_carlo(electron_barrier(0.5, 0.25, 100000), k);
  CHECK(r.transmitted == 0);
  CHECK(r.tunneled > 0);
  const double expected = r.geometric_gap_fraction * r.model.tunnel_probability;
  CHECK(std::abs(r.transmission_fraction - expected) <= 4 * r.standard_error + 1e-12);
}

TEST_CASE("barrier spec guards") {
  const auto k = electron_constants();
  auto s = electron_barrier(0.25, 0.5, 10);
  s.trials = 0;
  CHECK_THROWS_AS(run_barrier_monte_carlo(s, k), ConfigError);
  s = electron_barrier(0.25, 0.5, 10);
  s.L = -1.0;
  CHECK_FALSE(s.diagnostics().empty());
  s = electron_barrier(0.25, 0.5, 10);
  s.gap_offset = 0.6;
  CHECK_FALSE(s.diagnostics().empty());
}

TEST_CASE("rectangular barrier transmission matches the closed form") {
  for (const auto& c : oracle::barrier_cases) {
    CHECK(rectangular_barrier_transmission(c.E, c.V0, c.L, 1.0, 1.0) == Approx(c.T).epsilon(1e-12));
  }
  const double at = rectangular_barrier_transmission(1.0, 1.0, 1.0, 1.0, 1.0);
  CHECK(rectangular_barrier_transmission(1.0 - 1e-9, 1.0, 1.0, 1.0, 1.0) == Approx(at).epsilon(1e-8));
  CHECK(rectangular_barrier_transmission(1.0 + 1e-9, 1.0, 1.0, 1.0, 1.0) == Approx(at).epsilon(1e-8));
  CHECK(rectangular_barrier_transmission(5.0, 1e-14, 1.0, 1.0, 1.0) == Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(rectangular_barrier_transmission(-1.0, 1.0, 1.0, 1.0, 1.0), ConfigError);
  CHECK_THROWS_AS(rectangular_barrier_transmission(1.0, 1.0, -1.0, 1.0, 1.0), ConfigError);
}

TEST_CASE("bohr ground state") {
  const auto k = electron_constants();
  const auto o = bohr_orbit(1, k);
  CHECK(o.radius == Approx(oracle::bohr_radius_m).epsilon(1e-9));
  CHECK(o.energy / k.eV == Approx(oracle::bohr_energy_eV).epsilon(1e-9));
  CHECK(o.velocity / k.c == Approx(oracle::alpha).epsilon(1e-9));
  CHECK(o.angular_momentum == Approx(k.hbar).epsilon(1e-12));
  CHECK(o.orbit_length == Approx(o.de_broglie_wavelength).epsilon(1e-12));
  CHECK_FALSE(o.above_nonrelativistic_limit);
  CHECK_THROWS_AS(bohr_orbit(0, k), ConfigError);
}

TEST_CASE("bohr phase accordance") {
  const auto k = electron_constants();
  const auto p1 = bohr_phase_accordance(1, k);
  CHECK(p1.tau_over_period == Approx(oracle::tau_over_T_N1).epsilon(1e-9));
  CHECK(p1.nonrelativistic_gap == Approx(oracle::nonrel_gap_N1).epsilon(1e-6));
  for (int N = 1; N <= 20; ++N) {
    const auto p = bohr_phase_accordance(N, k);
    CHECK(std::abs(p.quantization_residual) <= 1e-9);
    CHECK(p.phase_mismatch <= 1e-9);
    CHECK(p.nonrelativistic_gap * N * N == Approx(oracle::alpha * oracle::alpha / 2).epsilon(1e-3));
  }
}

TEST_CASE("clock and wave phases agree along the trajectory") {
  const auto k = electron_constants();
  const double v = 0.6 * k.c;
  for (double t : {1e-20, 3e-19, 1e-18}) {
    const double z = v * t;
    CHECK(clock_phase(z, v, k.m0, k) == Approx(wave_phase(z, t, v, k.m0, k)).epsilon(1e-12));
  }
}

TEST_CASE("photon relations") {
  const auto k = electron_constants();
  const auto p = photon_relations(2e20, 1e20, k);
  CHECK(p.f_zigzag == Approx(5e19));
  CHECK(p.E_zigzag == Approx(k.h * 5e19));
  CHECK(photon_relations(1e20, 1e20, k).f_zigzag == Approx(1e20));
  CHECK_THROWS_AS(photon_relations(0.0, 1e20, k), DomainError);
  CHECK_THROWS_AS(photon_relations(1e20, -1.0, k), DomainError);
}

TEST_CASE("dichotomy at zero time is trivially shape-preserving") {
  DichotomySettings s;
  s.n = 1024;
  s.half_width = 40.96;
  s.t_final = 0.0;
  const auto r = run_dispersion_vs_soliton(s);
  REQUIRE(r.widths.size() == 1);
  CHECK(r.widths[0].linear == 1.0);
  CHECK(r.widths[0].nls == 1.0);
  CHECK(r.widths[0].qfree == 1.0);
  CHECK(r.linear.verdict == Verdict::ShapePreserved);
}

TEST_CASE("dichotomy separates the laws") {
  DichotomySettings s;
  s.n = 2048;
  s.half_width = 81.92;
  s.t_final = 4.0;
  s.snapshot_every = 400;
  const auto r = run_dispersion_vs_soliton(s);
  CHECK(r.linear.verdict == Verdict::Dispersed);
  CHECK(r.nls.verdict == Verdict::ShapePreserved);
  CHECK(r.qfree.verdict == Verdict::ShapePreserved);
  CHECK(r.linear.final_ratio > 2.0);

  s.amplitude = 2.0;
  CHECK(run_dispersion_vs_soliton(s).nls.verdict == Verdict::Dispersed);
}

TEST_CASE("dichotomy guards") {
  DichotomySettings s;
  s.tolerance = -1.0;
  CHECK_THROWS_AS(run_dispersion_vs_soliton(s), ConfigError);
}

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracle_values.hpp"
#include "solitonlab/errors.hpp"
#include "solitonlab/spectral.hpp"
#include "solitonlab/wave_solvers.hpp"

using namespace solitonlab;
using doctest::Approx;

namespace {

ComplexField breather(const Grid1D& g, double a, double v, double z0 = 0.0) {
  std::vector<Complex> values(g.n());
  for (std::size_t j = 0; j < g.n(); ++j) values[j] = nls_breather_exact(g.z(j), 0.0, a, v, z0);
  return ComplexField(g, values);
}

double l2_to_exact(const ComplexField& psi, double t, double a, double v, double z0 = 0.0) {
  const Grid1D& g = psi.grid();
  double err = 0.0;
  for (std::size_t j = 0; j < g.n(); ++j) {
    Complex exact(0.0, 0.0);
    for (int m = -2; m <= 2; ++m) exact += nls_breather_exact(g.z(j) + m * g.length(), t, a, v, z0);
    err += std::norm(psi[j] - exact);
  }
  return std::sqrt(err * g.dz());
}

SolverConfig config_for(Scheme scheme, double dt, double t_final, std::size_t every = 0) {
  SolverConfig c;
  c.scheme = scheme;
  c.dt = dt;
  c.t_final = t_final;
  c.snapshot_every = every;
  return c;
}

}  // namespace

TEST_CASE("breather closed form") {
  CHECK(std::abs(nls_breather_exact(2.0, 0.0, 1.0, 0.0, 2.0) - Complex(1.0, 0.0)) < 1e-15);
  for (double z : {-1.5, 0.0, 0.7}) {
    const Complex value = nls_breather_exact(z, std::numbers::pi, 1.0, 0.0, 0.0);
    CHECK(std::abs(value + 1.0 / std::cosh(z)) < 1e-15);
  }
}

TEST_CASE("breather satisfies the NLS under spectral differentiation") {
  const Grid1D g(1024, -40.96, 40.96);
  SpectralWorkspace ws(g);
  const double t = 0.4, h = 1e-3;
  std::vector<Complex> phi(g.n()), dphi_dt(g.n()), dzz(g.n());
  for (std::size_t j = 0; j < g.n(); ++j) {
    const double z = g.z(j);
    auto at = [&](double s) { return nls_breather_exact(z, s, 1.0, 0.0, 0.0); };
    phi[j] = at(t);
    dphi_dt[j] = (-at(t + 2 * h) + 8.0 * at(t + h) - 8.0 * at(t - h) + at(t - 2 * h)) / (12.0 * h);
  }
  ws.derivative(phi, dzz, 2);
  double worst = 0.0;
  for (std::size_t j = 0; j < g.n(); ++j) {
    const Complex r = Complex(0.0, 1.0) * dphi_dt[j] + dzz[j] + 2.0 * std::norm(phi[j]) * phi[j];
    worst = std::max(worst, std::abs(r));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("linear plane wave picks up the exact phase") {
  const Grid1D g(128, 0.0, 8.0 * std::numbers::pi);
  PacketSpec spec;
  spec.kind = PacketKind::PlaneWave;
  spec.k0 = 1.25;
  const auto psi0 = build_packet(spec, g);
  const auto run = evolve_linear_schrodinger(psi0, config_for(Scheme::LinearSchrodinger, 0.01, 3.0));
  const Complex phase = std::polar(1.0, -1.25 * 1.25 * 3.0 / 2.0);
  double worst = 0.0;
  for (std::size_t j = 0; j < g.n(); ++j) worst = std::max(worst, std::abs(run.final_state()[j] - psi0[j] * phase));
  CHECK(worst <= 1e-10);
}

TEST_CASE("free gaussian doubles its width by t = sqrt(3)") {
  const Grid1D g(1024, -40.96, 40.96);
  PacketSpec spec;
  spec.kind = PacketKind::Gaussian;
  const auto run = evolve_linear_schrodinger(build_packet(spec, g),
                                             config_for(Scheme::LinearSchrodinger, 1e-3, std::sqrt(3.0)));
  CHECK(run.series.back().obs.rms_width / run.series.front().obs.rms_width == Approx(2.0).epsilon(1e-9));
}

TEST_CASE("sech packet disperses under the linear equation") {
  const Grid1D g(4096, -128.0, 128.0);
  const auto run = evolve_linear_schrodinger(build_packet(PacketSpec{}, g),
                                             config_for(Scheme::LinearSchrodinger, 1e-3, 5.0, 250));
  for (std::size_t i = 1; i < run.series.size(); ++i) {
    CHECK(run.series[i].obs.rms_width > run.series[i - 1].obs.rms_width);
  }
  const double ratio = run.series.back().obs.rms_width / run.series.front().obs.rms_width;
  CHECK(ratio > 2.0);
  CHECK(ratio == Approx(oracle::sech_linear_width_ratio_t5).epsilon(1e-4));
}

TEST_CASE("norm is conserved by both split-step schemes") {
  const Grid1D g(512, -20.48, 20.48);
  for (Scheme s : {Scheme::LinearSchrodinger, Scheme::NLS}) {
    const auto run = s == Scheme::NLS ? evolve_nls(breather(g, 1.0, 1.0), config_for(s, 1e-3, 2.0))
                                      : evolve_linear_schrodinger(breather(g, 1.0, 1.0), config_for(s, 1e-3, 2.0));
    const auto* norm = run.metric("norm");
    REQUIRE(norm != nullptr);
    CHECK(norm->max_step_drift <= 1e-12);
    CHECK(norm->max_total_drift <= 1e-9);
  }
}

TEST_CASE("stationary breather to t = 1") {
  const Grid1D g(512, -20.48, 20.48);
  const auto run = evolve_nls(breather(g, 1.0, 0.0), config_for(Scheme::NLS, 1e-3, 1.0));
  CHECK(l2_to_exact(run.final_state(), 1.0, 1.0, 0.0) <= 1e-6);
}

TEST_CASE("moving breather keeps speed and width") {
  const Grid1D g(512, -20.48, 20.48);
  const auto run = evolve_nls(breather(g, 1.0, 1.0, -5.0), config_for(Scheme::NLS, 1e-3, 10.0, 1000));
  const double w0 = run.series.front().obs.rms_width;
  for (const auto& s : run.series) {
    CHECK(std::abs(s.obs.rms_width / w0 - 1.0) <= 0.01);
    if (s.t > 0.0) CHECK((s.obs.peak_position + 5.0 - (s.obs.peak_position > 15.0 ? g.length() : 0.0)) / s.t == Approx(1.0).epsilon(0.01));
  }
}

TEST_CASE("moving breather matches the stationary one in the co-moving frame") {
  const Grid1D g(512, -20.48, 20.48);
  const double t = 4.0;  // v t = 50 dz, an exact grid shift
  const auto moving = evolve_nls(breather(g, 1.0, 1.0), config_for(Scheme::NLS, 1e-3, t));
  const auto still = evolve_nls(breather(g, 1.0, 0.0), config_for(Scheme::NLS, 1e-3, t));
  double worst = 0.0;
  for (std::size_t j = 0; j < g.n(); ++j) {
    const std::size_t shifted = (j + 50) % g.n();
    worst = std::max(worst, std::abs(std::abs(moving.final_state()[shifted]) - std::abs(still.final_state()[j])));
  }
  CHECK(worst <= 1e-5);
}

TEST_CASE("mismatched amplitude is not a soliton") {
  const Grid1D g(1024, -40.96, 40.96);
  PacketSpec spec;
  spec.amplitude = 2.0;
  spec.sech_scale = 1.0;
  const auto run = evolve_nls(build_packet(spec, g), config_for(Scheme::NLS, 1e-3, 2.0, 100));
  double worst = 0.0;
  for (const auto& s : run.series) worst = std::max(worst, std::abs(s.obs.rms_width / run.series.front().obs.rms_width - 1.0));
  CHECK(worst > 0.01);
}

TEST_CASE("NLS rejects a potential") {
  const Grid1D g(512, -20.48, 20.48);
  auto c = config_for(Scheme::NLS, 1e-3, 1.0);
  c.potential.assign(g.n(), 0.01);
  CHECK_FALSE(c.diagnostics(g).empty());
  CHECK_THROWS_AS(evolve_nls(breather(g, 1.0, 0.0), c), ConfigError);
}

TEST_CASE("solver guards") {
  const Grid1D g(512, -20.48, 20.48);
  const auto psi = breather(g, 1.0, 0.0);
  SUBCASE("non-positive dt") {
    CHECK_THROWS_AS(evolve_linear_schrodinger(psi, config_for(Scheme::LinearSchrodinger, -1e-3, 1.0)), ConfigError);
  }
  SUBCASE("t_final below dt") {
    CHECK_THROWS_AS(evolve_linear_schrodinger(psi, config_for(Scheme::LinearSchrodinger, 1e-2, 1e-3)), ConfigError);
  }
  SUBCASE("potential length") {
    auto c = config_for(Scheme::LinearSchrodinger, 1e-3, 1.0);
    c.potential.assign(10, 0.0);
    CHECK_THROWS_AS(evolve_linear_schrodinger(psi, c), ConfigError);
  }
  SUBCASE("split-step accuracy guard") {
    auto c = config_for(Scheme::LinearSchrodinger, 0.1, 1.0);
    c.potential.assign(g.n(), 2.0);
    CHECK_THROWS_AS(evolve_linear_schrodinger(psi, c), ConfigError);
  }
  SUBCASE("scheme mismatch") {
    CHECK_THROWS_AS(evolve_linear_schrodinger(psi, config_for(Scheme::NLS, 1e-3, 1.0)), ConfigError);
  }
}

TEST_CASE("snapshot cadence") {
  const Grid1D g(64, -16.0, 16.0);
  PacketSpec spec;
  spec.kind = PacketKind::Gaussian;
  const auto run = evolve_linear_schrodinger(build_packet(spec, g), config_for(Scheme::LinearSchrodinger, 0.1, 1.0, 3));
  REQUIRE(run.snapshots.size() == 5);
  const double expected[] = {0.0, 0.3, 0.6, 0.9, 1.0};
  for (std::size_t i = 0; i < 5; ++i) CHECK(run.snapshots[i].t == Approx(expected[i]).epsilon(1e-12));
  CHECK(run.series.size() == run.snapshots.size());
  CHECK(run.steps == 10);
}

TEST_CASE("Klein-Gordon uniform field oscillates at omega0") {
  const Grid1D g(64, 0.0, 10.0);
  std::vector<Complex> psi(g.n(), Complex(1.0, 0.0)), rate(g.n(), Complex(0.0, -2.0));
  auto c = config_for(Scheme::KleinGordon, 0.01, 20.0);
  c.omega0 = 2.0;
  c.probe_index = 7;
  const auto run = evolve_klein_gordon(ComplexField(g, psi), ComplexField(g, rate), c);
  for (const auto& p : run.probe) CHECK(std::abs(p.value - std::polar(1.0, -2.0 * p.t)) < 1e-3);
}

TEST_CASE("Klein-Gordon energy is conserved over 1e4 steps") {
  const Grid1D g(1024, 0.0, 8.0 * std::numbers::pi);
  PacketSpec spec;
  spec.kind = PacketKind::PlaneWave;
  spec.k0 = 0.75;
  const auto psi = build_packet(spec, g);
  std::vector<Complex> rate(g.n());
  for (std::size_t j = 0; j < g.n(); ++j) rate[j] = Complex(0.0, -1.25) * psi[j];
  const auto run = evolve_klein_gordon(psi, ComplexField(g, rate), config_for(Scheme::KleinGordon, 0.02, 200.0));
  CHECK(run.steps == 10000);
  const auto* energy = run.metric("energy");
  REQUIRE(energy != nullptr);
  CHECK(energy->max_total_drift <= 1e-6);
}

TEST_CASE("Klein-Gordon step bound") {
  const Grid1D g(256, 0.0, 25.6);
  const double limit = klein_gordon_dt_limit(g, 1.0, 1.0);
  CHECK(limit == Approx(0.09).epsilon(1e-12));
  std::vector<Complex> psi(g.n(), Complex(1.0, 0.0));
  auto c = config_for(Scheme::KleinGordon, 1.1 * limit, 1.0);
  CHECK_FALSE(c.diagnostics(g).empty());
  CHECK_THROWS_AS(evolve_klein_gordon(ComplexField(g, psi), ComplexField(g, psi), c), ConfigError);
}

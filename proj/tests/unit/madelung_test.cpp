#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "solitonlab/constants.hpp"
#include "solitonlab/errors.hpp"
#include "solitonlab/kinematics.hpp"
#include "solitonlab/madelung.hpp"
#include "solitonlab/wave_solvers.hpp"

using namespace solitonlab;
using doctest::Approx;

namespace {

double sech(double x) { return 1.0 / std::cosh(x); }

ComplexField sample(const Grid1D& g, auto&& f) {
  std::vector<Complex> v(g.n());
  for (std::size_t j = 0; j < g.n(); ++j) v[j] = f(g.z(j));
  return ComplexField(g, v);
}

double max_on_support(const SupportProfile& p, auto&& expected, const Grid1D& g) {
  double worst = 0.0;
  for (std::size_t j = 0; j < g.n(); ++j) {
    if (p.on_support[j]) worst = std::max(worst, std::abs(p.values[j] - expected(g.z(j))));
  }
  return worst;
}

}  // namespace

TEST_CASE("plane wave decomposes into unit amplitude and linear phase") {
  const Grid1D g(128, 0.0, 8.0 * std::numbers::pi);
  const double k = 1.75;
  const auto f = decompose(sample(g, [&](double z) { return std::polar(1.0, k * z); }));
  for (std::size_t j = 0; j < g.n(); ++j) {
    CHECK(f.R[j] == Approx(1.0).epsilon(1e-14));
    CHECK(f.S[j] - f.S[0] == Approx(k * (g.z(j) - g.z(0))).epsilon(1e-12));
  }
}

TEST_CASE("breather polar form") {
  const Grid1D g(512, -20.48, 20.48);
  const double a = 1.3, t = 0.2;
  const auto f = decompose(sample(g, [&](double z) { return nls_breather_exact(z, t, a, 0.0, 0.0); }));
  for (std::size_t j = 0; j < g.n(); ++j) {
    CHECK(f.R[j] == Approx(a * sech(a * g.z(j))).epsilon(1e-13));
    if (f.R[j] > 1e-6 * a) CHECK(f.S[j] == Approx(a * a * t).epsilon(1e-12));
  }
}

TEST_CASE("recompose inverts decompose") {
  const Grid1D g(256, -12.8, 12.8);
  const auto psi = sample(g, [](double z) { return std::exp(-z * z / 8.0) * std::polar(1.0, 0.3 * z * z - 2.0 * z); });
  const auto back = recompose(decompose(psi, 1e-12));
  for (std::size_t j = 0; j < g.n(); ++j) CHECK(std::abs(back[j] - psi[j]) <= 1e-12);
}

TEST_CASE("phase is unwrapped and hbar scales it") {
  const Grid1D g(256, -12.8, 12.8);
  const auto psi = sample(g, [](double z) { return sech(z / 3.0) * std::polar(1.0, 0.5 * z * z); });
  const auto f = decompose(psi, 1e-6, 2.0);
  for (std::size_t j = 1; j < g.n(); ++j) {
    if (f.R[j] > 1e-5 && f.R[j - 1] > 1e-5) CHECK(std::abs(f.S[j] - f.S[j - 1]) < std::numbers::pi);
  }
  const auto peak = static_cast<std::size_t>(std::max_element(f.R.begin(), f.R.end()) - f.R.begin());
  CHECK(f.S[peak + 40] - f.S[peak] == Approx(2.0 * 0.5 * (std::pow(g.z(peak + 40), 2) - std::pow(g.z(peak), 2))).epsilon(1e-10));
}

TEST_CASE("nodes are reported with their positions") {
  const Grid1D g(256, -12.8, 12.8);
  const auto psi = sample(g, [](double z) { return Complex(sech(z) * std::tanh(z - 0.1), 0.0); });
  try {
    decompose(psi, 1e-2);
    FAIL("expected a node error");
  } catch (const NodeError& e) {
    REQUIRE_FALSE(e.node_positions().empty());
    CHECK(std::abs(e.node_positions().front() - 0.1) <= 2.0 * g.dz());
  }
}

TEST_CASE("quantum potential of a sech envelope") {
  const Grid1D g(1024, -40.96, 40.96);
  const auto f = decompose(sample(g, [](double z) { return Complex(sech(z), 0.0); }));
  const auto Q = quantum_potential(f, 1.0, 1e-4);
  CHECK(max_on_support(Q, [](double z) { return -0.5 * (1.0 - 2.0 * sech(z) * sech(z)); }, g) < 1e-8);
  CHECK(Q.values[512] == Approx(0.5).epsilon(1e-10));
}

TEST_CASE("quantum potential of a gaussian envelope") {
  const Grid1D g(512, -25.6, 25.6);
  const double s = 1.5;
  const auto f = decompose(sample(g, [&](double z) { return Complex(std::exp(-z * z / (4 * s * s)), 0.0); }));
  const auto Q = quantum_potential(f, 1.0);
  auto exact = [&](double z) { return 0.5 * (1.0 / (2 * s * s) - z * z / (4 * std::pow(s, 4))); };
  CHECK(max_on_support(Q, exact, g) / std::abs(exact(0.0)) < 1e-7);
}

TEST_CASE("constant amplitude has no quantum potential") {
  const Grid1D g(64, 0.0, 2.0 * std::numbers::pi);
  const auto Q = quantum_potential(decompose(sample(g, [](double z) { return std::polar(0.7, 2.0 * z); })), 1.0);
  CHECK(Q.max_abs() < 1e-12);
}

TEST_CASE("free plane wave zeroes both Hamilton-Jacobi residuals") {
  const Grid1D g(128, 0.0, 8.0 * std::numbers::pi);
  const double k = 0.5;
  const auto f = decompose(sample(g, [&](double z) { return std::polar(1.0, k * z); }));
  const std::vector<double> dS(g.n(), -0.5 * k * k), V(g.n(), 0.0);
  CHECK(hj_residual(f, dS, V, 1.0, HamiltonJacobiForm::Quantum).max_abs() < 1e-12);
  CHECK(hj_residual(f, dS, V, 1.0, HamiltonJacobiForm::Classical).max_abs() < 1e-12);

  const double dt = 0.1;
  const auto later = decompose(sample(g, [&](double z) { return std::polar(1.0, k * z - 0.5 * k * k * dt); }));
  CHECK(hj_residual(f, later, dt, V, 1.0, HamiltonJacobiForm::Quantum).max_abs() < 1e-12);
  CHECK(continuity_residual(f, later, dt, 1.0).max_abs() < 1e-12);
}

TEST_CASE("quantum and classical residuals differ by the quantum potential") {
  const Grid1D g(256, -12.8, 12.8);
  const auto f = decompose(sample(g, [](double z) {
    return (sech(0.8 * z) + 0.3 * std::exp(-(z - 1.0) * (z - 1.0))) * std::polar(1.0, 0.4 * z + 0.1 * z * z);
  }));
  std::vector<double> dS(g.n()), V(g.n());
  for (std::size_t j = 0; j < g.n(); ++j) {
    dS[j] = std::sin(g.z(j));
    V[j] = 0.05 * g.z(j) * g.z(j);
  }
  const auto quantum = hj_residual(f, dS, V, 1.0, HamiltonJacobiForm::Quantum);
  const auto classical = hj_residual(f, dS, V, 1.0, HamiltonJacobiForm::Classical);
  const auto Q = quantum_potential(f, 1.0);
  double worst = 0.0, scale = 0.0;
  for (std::size_t j = 0; j < g.n(); ++j) {
    if (!quantum.on_support[j]) continue;
    worst = std::max(worst, std::abs(quantum.values[j] - classical.values[j] - Q.values[j]));
    scale = std::max(scale, std::abs(Q.values[j]));
  }
  CHECK(worst <= 1e-14 * std::max(1.0, scale));
}

TEST_CASE("linear evolution satisfies the Madelung pair") {
  const Grid1D g(512, -25.6, 25.6);
  PacketSpec spec;
  spec.kind = PacketKind::Gaussian;
  spec.sigma = 2.0;
  spec.k0 = 1.0;
  spec.center = -5.0;
  SolverConfig c;
  c.dt = 1e-3;
  c.t_final = 1.0;
  c.snapshot_every = 25;
  const auto run = evolve_linear_schrodinger(build_packet(spec, g), c);
  const std::vector<double> V(g.n(), 0.0);
  const double interval = 25 * run.dt;
  for (std::size_t i = 0; i + 1 < run.snapshots.size(); i += 8) {
    const auto a = decompose(run.snapshots[i].field);
    const auto b = decompose(run.snapshots[i + 1].field);
    CHECK(hj_residual(a, b, interval, V, 1.0, HamiltonJacobiForm::Quantum).max_abs() <= 5e-4);
    CHECK(continuity_residual(a, b, interval, 1.0).max_abs() <= 5e-4);
    // dropping Q leaves exactly -Q behind
    const auto classical = hj_residual(a, b, interval, V, 1.0, HamiltonJacobiForm::Classical);
    const auto Qa = quantum_potential(a, 1.0), Qb = quantum_potential(b, 1.0);
    for (std::size_t j = 0; j < g.n(); ++j) {
      if (classical.on_support[j]) CHECK(std::abs(classical.values[j] + 0.5 * (Qa.values[j] + Qb.values[j])) <= 5e-4);
    }
  }
}

TEST_CASE("residuals reject mismatched grids") {
  const Grid1D g1(64, 0.0, 1.0), g2(64, 0.0, 2.0);
  const auto a = decompose(sample(g1, [](double) { return Complex(1.0, 0.0); }));
  const auto b = decompose(sample(g2, [](double) { return Complex(1.0, 0.0); }));
  const std::vector<double> V(64, 0.0);
  CHECK_THROWS_AS(hj_residual(a, b, 0.1, V, 1.0, HamiltonJacobiForm::Quantum), ConfigError);
  CHECK_THROWS_AS(continuity_residual(a, b, 0.1, 1.0), ConfigError);
}

TEST_CASE("uniform amplitude with linear phase has no flux divergence") {
  const Grid1D g(64, 0.0, 2.0 * std::numbers::pi);
  const auto a = decompose(sample(g, [](double z) { return std::polar(2.0, 3.0 * z); }));
  CHECK(continuity_residual(a, a, 0.5, 1.0).max_abs() < 1e-12);
}

TEST_CASE("free envelope translates rigidly") {
  const Grid1D g(1024, -40.0, 40.0);
  QFreeConfig c;
  c.v_e = 1.0;
  c.center = -5.0;
  c.dt = 0.01;
  c.t_final = 10.0;
  c.snapshot_every = 100;
  const auto run = evolve_qfree(qfree_envelope(c, g), c);
  const double w0 = run.series.front().obs.rms_width;
  for (const auto& s : run.series) CHECK(std::abs(s.obs.rms_width - w0) <= 1e-6);
  for (const auto& snap : run.snapshots) {
    double worst = 0.0;
    for (std::size_t j = 0; j < g.n(); ++j) worst = std::max(worst, std::abs(snap.polar->R[j] - sech(g.z(j) + 5.0 - snap.t)));
    CHECK(worst <= 1e-5);
  }
  CHECK(run.metric("R2_integral")->max_total_drift <= 1e-8);
}

TEST_CASE("envelope at rest stays put") {
  const Grid1D g(256, -20.0, 20.0);
  QFreeConfig c;
  c.dt = 0.01;
  c.t_final = 1.0;
  const auto initial = qfree_envelope(c, g);
  const auto run = evolve_qfree(initial, c);
  const auto& last = *run.snapshots.back().polar;
  for (std::size_t j = 0; j < g.n(); ++j) {
    CHECK(last.R[j] == Approx(initial.R[j]).epsilon(1e-14));
    CHECK(std::abs(last.S[j] - initial.S[j]) < 1e-14);
  }
}

TEST_CASE("uniform force accelerates the envelope classically") {
  const Grid1D g(1024, -40.0, 40.0);
  QFreeConfig c;
  c.v_e = 1.0;
  c.center = -10.0;
  c.dt = 0.01;
  c.t_final = 5.0;
  c.snapshot_every = 50;
  c.potential.resize(g.n());
  for (std::size_t j = 0; j < g.n(); ++j) c.potential[j] = 0.2 * g.z(j);
  const auto run = evolve_qfree(qfree_envelope(c, g), c);
  for (const auto& s : run.series) {
    CHECK(s.obs.centroid == Approx(-10.0 + s.t - 0.1 * s.t * s.t).epsilon(1e-6));
  }
}

TEST_CASE("steepening flow aborts with a CFL violation") {
  const Grid1D g(1024, -40.0, 40.0);
  QFreeConfig c;
  c.dt = 0.01;
  c.t_final = 5.0;
  c.potential.resize(g.n());
  for (std::size_t j = 0; j < g.n(); ++j) c.potential[j] = 2.0 * g.z(j);
  try {
    evolve_qfree(qfree_envelope(c, g), c);
    FAIL("expected a CFL violation");
  } catch (const CflViolation& e) {
    CHECK(e.time() > 0.0);
    CHECK(e.dt() > e.dt_limit());
  }
}

TEST_CASE("envelope config guards") {
  const Grid1D g(256, -20.0, 20.0);
  QFreeConfig c;
  c.r = -1.0;
  CHECK_FALSE(c.diagnostics(g).empty());
  c = {};
  c.a = 0.0;
  CHECK_FALSE(c.diagnostics(g).empty());
  c = {};
  c.v_e = 10.0;
  c.dt = 0.1;
  CHECK_FALSE(c.diagnostics(g).empty());
  c = {};
  CHECK(c.diagnostics(g).empty());
}

TEST_CASE("soliton amplitude") {
  const auto k = electron_constants();
  const double w = guide_width(k.m0, k);
  const double rest = k.m0 * k.c * k.c;
  CHECK(soliton_amplitude(0.0, k).si == Approx(w / 2.0).epsilon(1e-14));
  CHECK(soliton_amplitude(rest, k).si == Approx(w / 4.0).epsilon(1e-14));
  double previous = soliton_amplitude(0.0, k).si;
  for (double V : {0.1 * rest, rest, 10.0 * rest, 1e6 * rest}) {
    const double r = soliton_amplitude(V, k).si;
    CHECK(r < previous);
    previous = r;
  }
  CHECK_THROWS_AS(soliton_amplitude(-rest, k), DomainError);
  CHECK_THROWS_AS(soliton_amplitude(-2.0 * rest, k), DomainError);
}

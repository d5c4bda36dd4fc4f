#include "solitonlab/wave_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "recorder.hpp"
#include "solitonlab/errors.hpp"
#include "solitonlab/spectral.hpp"

namespace solitonlab {

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::LinearSchrodinger:
      return "linear_schrodinger";
    case Scheme::NLS:
      return "nls";
    case Scheme::KleinGordon:
      return "klein_gordon";
  }
  return "unknown";
}

double klein_gordon_dt_limit(const Grid1D& grid, double c, double omega0) {
  const double dz = grid.dz();
  const double cfl = 0.9 * dz / c;
  const double leapfrog = 2.0 / std::sqrt(4.0 * c * c / (dz * dz) + omega0 * omega0);
  return std::min(cfl, leapfrog);
}

std::vector<std::string> SolverConfig::diagnostics(const Grid1D& grid) const {
  std::vector<std::string> out;
  auto say = [&out](auto&&... parts) {
    std::ostringstream msg;
    (msg << ... << parts);
    out.push_back(msg.str());
  };
  if (!(dt > 0.0) || !std::isfinite(dt)) say("solver.dt must be a positive number (got ", dt, ")");
  if (!std::isfinite(t_final) || !(t_final >= dt)) {
    say("solver.t_final must be >= solver.dt (got t_final = ", t_final, ", dt = ", dt, ")");
  }
  if (!potential.empty() && potential.size() != grid.n()) {
    say("solver.potential has ", potential.size(), " entries, grid has ", grid.n());
  }
  double vmax = 0.0;
  for (double v : potential) {
    if (!std::isfinite(v)) {
      say("solver.potential contains a non-finite value");
      break;
    }
    vmax = std::max(vmax, std::abs(v));
  }
  if (probe_index && *probe_index >= grid.n()) say("solver.probe_index is outside the grid");
  if (!out.empty()) return out;

  switch (scheme) {
    case Scheme::LinearSchrodinger:
      if (dt * vmax > 0.1) {
        say("solver.dt violates the split-step accuracy guard dt * max|V| <= 0.1 (dt * max|V| = ",
            dt * vmax, ")");
      }
      break;
    case Scheme::NLS:
      if (vmax != 0.0) say("solver.potential must be zero for the nls scheme");
      break;
    case Scheme::KleinGordon: {
      if (!(c > 0.0) || !(omega0 > 0.0)) {
        say("solver.c and solver.omega0 must be positive for klein_gordon");
        break;
      }
      const double limit = klein_gordon_dt_limit(grid, c, omega0);
      if (dt > limit) {
        say("solver.dt = ", dt, " violates the Klein-Gordon leapfrog bound dt <= ", limit,
            " (0.9 dz / c = ", 0.9 * grid.dz() / c, ")");
      }
      break;
    }
  }
  return out;
}

void SolverConfig::validate(const Grid1D& grid) const {
  const auto problems = diagnostics(grid);
  if (!problems.empty()) throw ConfigError(problems.front());
}

namespace {

void require_scheme(const SolverConfig& config, Scheme expected) {
  if (config.scheme != expected) {
    throw ConfigError(std::string("solver.scheme must be ") + scheme_name(expected) + ", got " +
                      scheme_name(config.scheme));
  }
}

double squared_norm(std::span<const Complex> psi, double dz) {
  double s = 0.0;
  for (const auto& v : psi) s += std::norm(v);
  return s * dz;
}

std::vector<double> potential_or_zero(const SolverConfig& config, std::size_t n) {
  return config.potential.empty() ? std::vector<double>(n, 0.0) : config.potential;
}

}  // namespace

RunReport evolve_linear_schrodinger(const ComplexField& psi0, const SolverConfig& config) {
  require_scheme(config, Scheme::LinearSchrodinger);
  const Grid1D& grid = psi0.grid();
  config.validate(grid);
  const std::size_t n = grid.n();
  const std::size_t steps = detail::step_count(config.dt, config.t_final);
  const double dt = config.t_final / static_cast<double>(steps);

  SpectralWorkspace fft(grid);
  const auto V = potential_or_zero(config, n);
  std::vector<Complex> half_potential(n);
  std::vector<Complex> kinetic(n);
  for (std::size_t j = 0; j < n; ++j) {
    half_potential[j] = std::polar(1.0, -0.5 * V[j] * dt);
    const double k = fft.wavenumbers()[j];
    kinetic[j] = std::polar(1.0, -0.5 * k * k * dt);
  }

  std::vector<Complex> psi(psi0.values().begin(), psi0.values().end());
  detail::Recorder rec(grid, config.snapshot_every, steps);
  rec.record(0.0, psi);
  rec.track(0, "norm", squared_norm(psi, grid.dz()));
  if (config.probe_index) rec.probe(0.0, psi[*config.probe_index]);

  for (std::size_t step = 1; step <= steps; ++step) {
    for (std::size_t j = 0; j < n; ++j) psi[j] *= half_potential[j];
    fft.apply_spectral_multiplier(kinetic, psi);
    for (std::size_t j = 0; j < n; ++j) psi[j] *= half_potential[j];

    const double t = static_cast<double>(step) * dt;
    rec.track(0, "norm", squared_norm(psi, grid.dz()));
    if (config.probe_index) rec.probe(t, psi[*config.probe_index]);
    if (rec.due(step)) rec.record(t, psi);
  }
  return rec.finish(scheme_name(Scheme::LinearSchrodinger),
                    "i psi_t + (1/2) psi_zz - V psi = 0 (hbar = m = 1); Strang split-step Fourier",
                    dt);
}

RunReport evolve_nls(const ComplexField& psi0, const SolverConfig& config) {
  require_scheme(config, Scheme::NLS);
  const Grid1D& grid = psi0.grid();
  config.validate(grid);
  const std::size_t n = grid.n();
  const std::size_t steps = detail::step_count(config.dt, config.t_final);
  const double dt = config.t_final / static_cast<double>(steps);

  SpectralWorkspace fft(grid);
  std::vector<Complex> kinetic(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double k = fft.wavenumbers()[j];
    kinetic[j] = std::polar(1.0, -k * k * dt / 2.0);
  }
  // |phi| is invariant under the nonlinear sub-flow, so its phase rotation is exact.
  auto nonlinear = [&](std::vector<Complex>& phi) {
    for (auto& v : phi) v *= std::polar(1.0, 2.0 * std::norm(v) * dt);
  };

  std::vector<Complex> psi(psi0.values().begin(), psi0.values().end());
  detail::Recorder rec(grid, config.snapshot_every, steps);
  rec.record(0.0, psi);
  rec.track(0, "norm", squared_norm(psi, grid.dz()));
  if (config.probe_index) rec.probe(0.0, psi[*config.probe_index]);

  for (std::size_t step = 1; step <= steps; ++step) {
    fft.apply_spectral_multiplier(kinetic, psi);
    nonlinear(psi);
    fft.apply_spectral_multiplier(kinetic, psi);

    const double t = static_cast<double>(step) * dt;
    rec.track(0, "norm", squared_norm(psi, grid.dz()));
    if (config.probe_index) rec.probe(t, psi[*config.probe_index]);
    if (rec.due(step)) rec.record(t, psi);
  }
  return rec.finish(scheme_name(Scheme::NLS),
                    "i phi_t + phi_zz + 2 |phi|^2 phi = 0 (normalized); Strang split-step Fourier",
                    dt);
}

RunReport evolve_klein_gordon(const ComplexField& psi0, const ComplexField& dpsi0_dt,
                              const SolverConfig& config) {
  require_scheme(config, Scheme::KleinGordon);
  const Grid1D& grid = psi0.grid();
  if (!(dpsi0_dt.grid() == grid)) {
    throw ConfigError("evolve_klein_gordon: initial field and time derivative use different grids");
  }
  config.validate(grid);
  const std::size_t n = grid.n();
  const std::size_t steps = detail::step_count(config.dt, config.t_final);
  const double dt = config.t_final / static_cast<double>(steps);
  const double dz = grid.dz();
  const double c2 = config.c * config.c / (dz * dz);
  const double w02 = config.omega0 * config.omega0;

  // A psi = -c^2 D2 psi + omega0^2 psi, periodic three-point stencil.
  auto apply_A = [&](const std::vector<Complex>& u, std::vector<Complex>& out) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex& l = u[(j + n - 1) % n];
      const Complex& r = u[(j + 1) % n];
      out[j] = -c2 * (l - 2.0 * u[j] + r) + w02 * u[j];
    }
  };
  auto discrete_energy = [&](const std::vector<Complex>& next, const std::vector<Complex>& cur,
                             const std::vector<Complex>& A_cur) {
    double e = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      e += std::norm(next[j] - cur[j]) / (dt * dt) + std::real(std::conj(next[j]) * A_cur[j]);
    }
    return e * dz;
  };

  std::vector<Complex> prev(psi0.values().begin(), psi0.values().end());
  std::vector<Complex> cur(n);
  std::vector<Complex> Au(n);
  apply_A(prev, Au);
  for (std::size_t j = 0; j < n; ++j) {
    cur[j] = prev[j] + dt * dpsi0_dt[j] - 0.5 * dt * dt * Au[j];
  }

  detail::Recorder rec(grid, config.snapshot_every, steps);
  rec.record(0.0, prev);
  rec.track(0, "energy", discrete_energy(cur, prev, Au));
  if (config.probe_index) {
    rec.probe(0.0, prev[*config.probe_index]);
    rec.probe(dt, cur[*config.probe_index]);
  }
  if (rec.due(1)) rec.record(dt, cur);

  std::vector<Complex> next(n);
  for (std::size_t step = 2; step <= steps; ++step) {
    apply_A(cur, Au);
    for (std::size_t j = 0; j < n; ++j) next[j] = 2.0 * cur[j] - prev[j] - dt * dt * Au[j];
    rec.track(0, "energy", discrete_energy(next, cur, Au));
    std::swap(prev, cur);
    std::swap(cur, next);

    const double t = static_cast<double>(step) * dt;
    if (config.probe_index) rec.probe(t, cur[*config.probe_index]);
    if (rec.due(step)) rec.record(t, cur);
  }
  return rec.finish(scheme_name(Scheme::KleinGordon),
                    "psi_tt = c^2 psi_zz - omega0^2 psi; leapfrog, three-point Laplacian", dt);
}

Complex nls_breather_exact(double z, double t, double a, double v, double z0) {
  const double phase = 0.5 * v * z + (a * a - 0.25 * v * v) * t;
  return a * std::polar(1.0, phase) / std::cosh(a * (z - v * t - z0));
}

}  // namespace solitonlab

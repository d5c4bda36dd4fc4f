#include "solitonlab/madelung.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "recorder.hpp"
#include "solitonlab/errors.hpp"
#include "solitonlab/spectral.hpp"

namespace solitonlab {

double SupportProfile::max_abs() const {
  double m = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (on_support[j]) m = std::max(m, std::abs(values[j]));
  }
  return m;
}

namespace {

std::vector<std::uint8_t> support_mask(std::span<const double> R, double threshold) {
  const double peak = *std::max_element(R.begin(), R.end());
  if (!(peak > 0.0)) throw NumericalError("Madelung field has zero amplitude everywhere");
  std::vector<std::uint8_t> mask(R.size());
  for (std::size_t j = 0; j < R.size(); ++j) mask[j] = R[j] > threshold * peak ? 1 : 0;
  return mask;
}

/// Positions of interior nodes: minima of R inside every below-threshold gap
/// except the exterior one (the longest gap, where the packet tails live).
std::vector<double> interior_nodes(const Grid1D& grid, std::span<const double> R,
                                   const std::vector<std::uint8_t>& mask) {
  const std::size_t n = mask.size();
  std::size_t start = n;
  for (std::size_t j = 0; j < n; ++j) {
    if (mask[j] && !mask[(j + n - 1) % n]) {
      start = j;
      break;
    }
  }
  if (start == n) return {};  // support is the whole ring or a single arc at most

  struct Gap {
    std::size_t length;
    std::size_t argmin;
  };
  std::vector<Gap> gaps;
  std::size_t j = start;
  for (std::size_t visited = 0; visited < n;) {
    if (mask[j]) {
      j = (j + 1) % n;
      ++visited;
      continue;
    }
    Gap gap{0, j};
    while (!mask[j] && visited < n) {
      if (R[j] < R[gap.argmin]) gap.argmin = j;
      ++gap.length;
      j = (j + 1) % n;
      ++visited;
    }
    gaps.push_back(gap);
  }
  if (gaps.size() <= 1) return {};
  const auto exterior = std::max_element(gaps.begin(), gaps.end(), [](const Gap& a, const Gap& b) {
    return a.length < b.length;
  });
  std::vector<double> nodes;
  for (auto it = gaps.begin(); it != gaps.end(); ++it) {
    if (it != exterior) nodes.push_back(grid.z(it->argmin));
  }
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

void require_node_free(const Grid1D& grid, std::span<const double> R, double threshold) {
  const auto mask = support_mask(R, threshold);
  auto nodes = interior_nodes(grid, R, mask);
  if (!nodes.empty()) {
    std::ostringstream msg;
    msg << "wavefunction has " << nodes.size() << " interior node(s), first near z = " << nodes[0]
        << "; the polar decomposition is undefined across a node";
    throw NodeError(msg.str(), std::move(nodes));
  }
}

/// Spatial derivatives shared by every Madelung diagnostic.
struct SpatialTerms {
  std::vector<std::uint8_t> support;
  std::vector<double> S_z;       // valid on support
  std::vector<double> Q;         // valid on support
  std::vector<double> flux_z;    // d/dz (R^2 S_z / m), everywhere
};

SpatialTerms spatial_terms(const MadelungField& f, double mass, double threshold) {
  if (!(mass > 0.0)) throw ConfigError("mass must be positive");
  const Grid1D& grid = f.grid;
  const std::size_t n = grid.n();
  const double hbar = f.hbar;
  SpectralWorkspace fft(grid);

  SpatialTerms out;
  out.support = support_mask(f.R, threshold);

  // Mean carrier momentum, weighted by the amplitude on both ends of each link.
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double w = f.R[j] * f.R[j + 1];
    num += w * (f.S[j + 1] - f.S[j]);
    den += w;
  }
  const double p_mean = den > 0.0 ? num / (den * grid.dz()) : 0.0;

  std::vector<Complex> slow(n);
  for (std::size_t j = 0; j < n; ++j) {
    slow[j] = f.R[j] * std::polar(1.0, (f.S[j] - p_mean * (grid.z(j) - grid.z_min())) / hbar);
  }
  std::vector<Complex> slow_z(n);
  fft.derivative(slow, slow_z, 1);

  std::vector<double> R_zz(n);
  fft.derivative(std::span<const double>(f.R), R_zz, 2);

  out.S_z.assign(n, 0.0);
  out.Q.assign(n, 0.0);
  std::vector<double> flux(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double cross = std::imag(std::conj(slow[j]) * slow_z[j]);
    flux[j] = (p_mean * f.R[j] * f.R[j] + hbar * cross) / mass;
    if (out.support[j]) {
      out.S_z[j] = p_mean + hbar * cross / std::norm(slow[j]);
      out.Q[j] = -(hbar * hbar / (2.0 * mass)) * R_zz[j] / f.R[j];
    }
  }
  out.flux_z.resize(n);
  fft.derivative(std::span<const double>(flux), out.flux_z, 1);
  return out;
}

void require_compatible(const MadelungField& a, const MadelungField& b) {
  if (!(a.grid == b.grid)) throw ConfigError("Madelung fields live on different grids");
  if (a.hbar != b.hbar) throw ConfigError("Madelung fields use different action units");
  if (a.R.size() != a.grid.n() || b.R.size() != b.grid.n() || a.S.size() != a.grid.n() ||
      b.S.size() != b.grid.n()) {
    throw ConfigError("Madelung field arrays do not match the grid size");
  }
}

void require_sizes(const MadelungField& f) {
  if (f.R.size() != f.grid.n() || f.S.size() != f.grid.n()) {
    throw ConfigError("Madelung field arrays do not match the grid size");
  }
}

std::span<const double> checked_potential(std::span<const double> V, std::size_t n,
                                          std::vector<double>& zeros) {
  if (V.empty()) {
    zeros.assign(n, 0.0);
    return zeros;
  }
  if (V.size() != n) throw ConfigError("potential length does not match the grid size");
  return V;
}

double wrapped_difference(double later, double earlier, double hbar) {
  const double d = (later - earlier) / hbar;
  return hbar * std::remainder(d, 2.0 * std::numbers::pi);
}

}  // namespace

MadelungField decompose(const ComplexField& psi, double node_threshold, double hbar) {
  if (!(hbar > 0.0)) throw ConfigError("decompose: hbar must be positive");
  const Grid1D& grid = psi.grid();
  const std::size_t n = grid.n();
  MadelungField f{grid, std::vector<double>(n), std::vector<double>(n), hbar};
  for (std::size_t j = 0; j < n; ++j) f.R[j] = std::abs(psi[j]);
  require_node_free(grid, f.R, node_threshold);

  const auto anchor = static_cast<std::size_t>(
      std::distance(f.R.begin(), std::max_element(f.R.begin(), f.R.end())));
  f.S[anchor] = hbar * std::arg(psi[anchor]);
  for (std::size_t j = anchor + 1; j < n; ++j) {
    f.S[j] = f.S[j - 1] + hbar * std::arg(psi[j] * std::conj(psi[j - 1]));
  }
  for (std::size_t j = anchor; j-- > 0;) {
    f.S[j] = f.S[j + 1] + hbar * std::arg(psi[j] * std::conj(psi[j + 1]));
  }
  return f;
}

ComplexField recompose(const MadelungField& f) {
  require_sizes(f);
  std::vector<Complex> psi(f.grid.n());
  for (std::size_t j = 0; j < psi.size(); ++j) psi[j] = f.R[j] * std::polar(1.0, f.S[j] / f.hbar);
  return ComplexField(f.grid, std::move(psi));
}

SupportProfile quantum_potential(const MadelungField& field, double mass, double threshold) {
  require_sizes(field);
  require_node_free(field.grid, field.R, threshold);
  auto terms = spatial_terms(field, mass, threshold);
  return {std::move(terms.Q), std::move(terms.support)};
}

SupportProfile phase_gradient(const MadelungField& field, double threshold) {
  require_sizes(field);
  require_node_free(field.grid, field.R, threshold);
  auto terms = spatial_terms(field, 1.0, threshold);
  return {std::move(terms.S_z), std::move(terms.support)};
}

SupportProfile hj_residual(const MadelungField& field, std::span<const double> dS_dt,
                           std::span<const double> potential, double mass,
                           HamiltonJacobiForm form, double threshold) {
  require_sizes(field);
  const std::size_t n = field.grid.n();
  if (dS_dt.size() != n) throw ConfigError("dS/dt length does not match the grid size");
  std::vector<double> zeros;
  const auto V = checked_potential(potential, n, zeros);
  require_node_free(field.grid, field.R, threshold);
  const auto t = spatial_terms(field, mass, threshold);

  SupportProfile out{std::vector<double>(n, 0.0), t.support};
  for (std::size_t j = 0; j < n; ++j) {
    if (!t.support[j]) continue;
    double r = dS_dt[j] + t.S_z[j] * t.S_z[j] / (2.0 * mass) + V[j];
    if (form == HamiltonJacobiForm::Quantum) r += t.Q[j];
    out.values[j] = r;
  }
  return out;
}

SupportProfile hj_residual(const MadelungField& earlier, const MadelungField& later,
                           double interval, std::span<const double> potential, double mass,
                           HamiltonJacobiForm form, double threshold) {
  require_compatible(earlier, later);
  if (!(interval > 0.0)) throw ConfigError("snapshot interval must be positive");
  const std::size_t n = earlier.grid.n();
  std::vector<double> zeros;
  const auto V = checked_potential(potential, n, zeros);
  require_node_free(earlier.grid, earlier.R, threshold);
  require_node_free(later.grid, later.R, threshold);
  const auto a = spatial_terms(earlier, mass, threshold);
  const auto b = spatial_terms(later, mass, threshold);

  SupportProfile out{std::vector<double>(n, 0.0), std::vector<std::uint8_t>(n, 0)};
  for (std::size_t j = 0; j < n; ++j) {
    if (!(a.support[j] && b.support[j])) continue;
    out.on_support[j] = 1;
    const double S_t = wrapped_difference(later.S[j], earlier.S[j], earlier.hbar) / interval;
    double fa = a.S_z[j] * a.S_z[j] / (2.0 * mass) + V[j];
    double fb = b.S_z[j] * b.S_z[j] / (2.0 * mass) + V[j];
    if (form == HamiltonJacobiForm::Quantum) {
      fa += a.Q[j];
      fb += b.Q[j];
    }
    out.values[j] = S_t + 0.5 * (fa + fb);
  }
  return out;
}

SupportProfile continuity_residual(const MadelungField& earlier, const MadelungField& later,
                                   double interval, double mass, double threshold) {
  require_compatible(earlier, later);
  if (!(interval > 0.0)) throw ConfigError("snapshot interval must be positive");
  const std::size_t n = earlier.grid.n();
  require_node_free(earlier.grid, earlier.R, threshold);
  require_node_free(later.grid, later.R, threshold);
  const auto a = spatial_terms(earlier, mass, threshold);
  const auto b = spatial_terms(later, mass, threshold);

  SupportProfile out{std::vector<double>(n, 0.0), std::vector<std::uint8_t>(n, 0)};
  for (std::size_t j = 0; j < n; ++j) {
    if (!(a.support[j] && b.support[j])) continue;
    out.on_support[j] = 1;
    const double rho_t = (later.R[j] * later.R[j] - earlier.R[j] * earlier.R[j]) / interval;
    out.values[j] = rho_t + 0.5 * (a.flux_z[j] + b.flux_z[j]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Quantum-potential-free evolution

std::vector<std::string> QFreeConfig::diagnostics(const Grid1D& grid) const {
  std::vector<std::string> out;
  auto say = [&out](auto&&... parts) {
    std::ostringstream msg;
    (msg << ... << parts);
    out.push_back(msg.str());
  };
  if (!(r > 0.0)) say("envelope.r must be > 0 (got ", r, ")");
  if (!(a > 0.0)) say("envelope.a must be > 0 (got ", a, ")");
  if (!(mass > 0.0)) say("mass must be > 0 (got ", mass, ")");
  if (!(hbar > 0.0)) say("hbar must be > 0 (got ", hbar, ")");
  if (!std::isfinite(v_e) || !std::isfinite(center)) say("envelope.v_e and envelope.center must be finite");
  if (!(dt > 0.0) || !std::isfinite(dt)) say("solver.dt must be a positive number (got ", dt, ")");
  if (!std::isfinite(t_final) || !(t_final >= dt)) {
    say("solver.t_final must be >= solver.dt (got t_final = ", t_final, ", dt = ", dt, ")");
  }
  if (!potential.empty() && potential.size() != grid.n()) {
    say("potential has ", potential.size(), " entries, grid has ", grid.n());
  }
  for (double v : potential) {
    if (!std::isfinite(v)) {
      say("potential contains a non-finite value");
      break;
    }
  }
  if (!out.empty()) return out;
  if (center < grid.z_min() || center >= grid.z_max()) say("envelope.center lies outside the grid");
  const double leak = std::max(1.0 / std::cosh(a * (grid.z_min() - center)),
                               1.0 / std::cosh(a * (grid.z_max() - center)));
  if (leak >= kBoundaryTolerance) {
    say("envelope touches the periodic boundary: R there is ", leak, " of the peak (limit ",
        kBoundaryTolerance, ")");
  }
  if (v_e != 0.0) {
    const double limit = 0.5 * grid.dz() / std::abs(v_e);
    if (dt > limit) say("solver.dt = ", dt, " violates the advective CFL bound 0.5 dz / |v_e| = ", limit);
  }
  return out;
}

void QFreeConfig::validate(const Grid1D& grid) const {
  const auto problems = diagnostics(grid);
  if (!problems.empty()) throw ConfigError(problems.front());
}

MadelungField qfree_envelope(const QFreeConfig& config, const Grid1D& grid) {
  MadelungField f{grid, std::vector<double>(grid.n()), std::vector<double>(grid.n()), config.hbar};
  for (std::size_t j = 0; j < grid.n(); ++j) {
    const double x = grid.z(j) - config.center;
    f.R[j] = config.r / std::cosh(config.a * x);
    f.S[j] = config.mass * config.v_e * x;
  }
  return f;
}

RunReport evolve_qfree(const MadelungField& initial, const QFreeConfig& config) {
  const Grid1D& grid = initial.grid;
  require_sizes(initial);
  config.validate(grid);
  if (initial.hbar != config.hbar) throw ConfigError("initial field and config use different hbar");
  require_node_free(grid, initial.R, kDefaultNodeThreshold);

  const std::size_t n = grid.n();
  const double dz = grid.dz();
  const double m = config.mass;
  const double span_z = static_cast<double>(n - 1) * dz;
  const std::size_t steps = detail::step_count(config.dt, config.t_final);
  const double dt = config.t_final / static_cast<double>(steps);

  // S = S_periodic + p (z - z_min); V = V_periodic + g (z - z_min).
  const double g = config.potential.empty()
                       ? 0.0
                       : (config.potential[n - 1] - config.potential[0]) / span_z;
  std::vector<double> V_periodic(n, 0.0);
  if (!config.potential.empty()) {
    for (std::size_t j = 0; j < n; ++j) {
      V_periodic[j] = config.potential[j] - g * (grid.z(j) - grid.z_min());
    }
  }
  double p = (initial.S[n - 1] - initial.S[0]) / span_z;
  std::vector<double> S(n);
  std::vector<double> rho(n);
  for (std::size_t j = 0; j < n; ++j) {
    S[j] = initial.S[j] - p * (grid.z(j) - grid.z_min());
    rho[j] = initial.R[j] * initial.R[j];
  }

  SpectralWorkspace fft(grid);
  std::vector<double> S_z(n), flux(n), flux_z(n);
  struct Rate {
    std::vector<double> rho, S;
    double p = 0.0;
  };
  auto rhs = [&](const std::vector<double>& rho_in, const std::vector<double>& S_in, double p_in,
                 Rate& out) -> double {
    fft.derivative(std::span<const double>(S_in), S_z, 1);
    double umax = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double u = (p_in + S_z[j]) / m;
      umax = std::max(umax, std::abs(u));
      flux[j] = rho_in[j] * u;
      out.S[j] = -0.5 * m * u * u - V_periodic[j];
    }
    fft.derivative(std::span<const double>(flux), flux_z, 1);
    for (std::size_t j = 0; j < n; ++j) out.rho[j] = -flux_z[j];
    out.p = -g;
    return umax;
  };

  auto snapshot = [&](double t, detail::Recorder& rec) {
    MadelungField f{grid, std::vector<double>(n), std::vector<double>(n), config.hbar};
    std::vector<Complex> psi(n);
    for (std::size_t j = 0; j < n; ++j) {
      f.R[j] = std::sqrt(std::max(rho[j], 0.0));
      f.S[j] = S[j] + p * (grid.z(j) - grid.z_min());
      psi[j] = f.R[j] * std::polar(1.0, f.S[j] / config.hbar);
    }
    auto Q = quantum_potential(f, m);
    rec.record(t, psi, PolarColumns{std::move(f.R), std::move(f.S), std::move(Q.values)});
  };
  auto total_density = [&]() {
    double s = 0.0;
    for (double v : rho) s += v;
    return s * dz;
  };

  detail::Recorder rec(grid, config.snapshot_every, steps);
  snapshot(0.0, rec);
  rec.track(0, "R2_integral", total_density());

  Rate k1{std::vector<double>(n), std::vector<double>(n)}, k2 = k1, k3 = k1, k4 = k1;
  std::vector<double> rho_tmp(n), S_tmp(n);
  auto stage = [&](const Rate& k, double h) {
    for (std::size_t j = 0; j < n; ++j) {
      rho_tmp[j] = rho[j] + h * k.rho[j];
      S_tmp[j] = S[j] + h * k.S[j];
    }
    return p + h * k.p;
  };

  for (std::size_t step = 1; step <= steps; ++step) {
    const double t0 = static_cast<double>(step - 1) * dt;
    const double umax = rhs(rho, S, p, k1);
    if (umax > 0.0 && dt > 0.5 * dz / umax) {
      std::ostringstream msg;
      msg << "advective CFL violated at t = " << t0 << ": dt = " << dt << " > 0.5 dz / max|S_z/m| = "
          << 0.5 * dz / umax;
      throw CflViolation(msg.str(), t0, dt, 0.5 * dz / umax);
    }
    rhs(rho_tmp, S_tmp, stage(k1, 0.5 * dt), k2);
    rhs(rho_tmp, S_tmp, stage(k2, 0.5 * dt), k3);
    rhs(rho_tmp, S_tmp, stage(k3, dt), k4);
    for (std::size_t j = 0; j < n; ++j) {
      rho[j] += dt / 6.0 * (k1.rho[j] + 2.0 * k2.rho[j] + 2.0 * k3.rho[j] + k4.rho[j]);
      S[j] += dt / 6.0 * (k1.S[j] + 2.0 * k2.S[j] + 2.0 * k3.S[j] + k4.S[j]);
    }
    p += dt / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);

    rec.track(0, "R2_integral", total_density());
    if (rec.due(step)) snapshot(static_cast<double>(step) * dt, rec);
  }
  return rec.finish("qfree",
                    "S_t + S_z^2/(2m) + V = 0 and (R^2)_t + (R^2 S_z/m)_z = 0; "
                    "spectral derivatives, RK4",
                    dt);
}

SolitonAmplitude soliton_amplitude(double V, const PhysicalConstants& k) {
  const double rest = k.m0 * k.c * k.c;
  if (!(rest + V > 0.0)) throw DomainError("soliton_amplitude: m0 c^2 + V must be positive");
  const double r = k.c * k.h / (4.0 * (rest + V));
  return {r, UnitScale::natural(k).to_normalized_length(r)};
}

}  // namespace solitonlab

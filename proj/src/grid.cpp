#include "solitonlab/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "solitonlab/errors.hpp"

namespace solitonlab {

Grid1D::Grid1D(std::size_t n, double z_min, double z_max)
    : n_(n), z_min_(z_min), z_max_(z_max), dz_(0.0) {
  if (n < 16 || !std::has_single_bit(n)) {
    std::ostringstream msg;
    msg << "grid.n = " << n << " must be a power of two and at least 16";
    throw ConfigError(msg.str());
  }
  if (!std::isfinite(z_min) || !std::isfinite(z_max) || !(z_max > z_min)) {
    throw ConfigError("grid bounds must be finite with z_max > z_min");
  }
  dz_ = (z_max - z_min) / static_cast<double>(n);
}

double Grid1D::wavenumber(std::size_t j) const noexcept {
  const double dk = 2.0 * std::numbers::pi / length();
  const auto half = n_ / 2;
  const double m = j < half ? static_cast<double>(j)
                            : static_cast<double>(j) - static_cast<double>(n_);
  return m * dk;
}

std::vector<double> Grid1D::coordinates() const {
  std::vector<double> z(n_);
  for (std::size_t j = 0; j < n_; ++j) z[j] = this->z(j);
  return z;
}

ComplexField::ComplexField(Grid1D grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.n()) {
    throw ConfigError("ComplexField: value count does not match grid size");
  }
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw NumericalError("ComplexField: non-finite sample");
    }
  }
}

namespace {

double sech(double x) { return 1.0 / std::cosh(x); }

double envelope(const PacketSpec& spec, double z) {
  switch (spec.kind) {
    case PacketKind::SechBreather:
      return sech(spec.sech_scale.value_or(spec.amplitude) * (z - spec.center));
    case PacketKind::Gaussian: {
      const double u = (z - spec.center) / spec.sigma;
      return std::exp(-0.5 * u * u);
    }
    case PacketKind::PlaneWave:
      return 1.0;
  }
  return 0.0;
}

double carrier_wavenumber(const PacketSpec& spec) {
  return spec.kind == PacketKind::SechBreather ? 0.5 * spec.velocity : spec.k0;
}

}  // namespace

double boundary_leakage(const PacketSpec& spec, const Grid1D& grid) {
  if (spec.kind == PacketKind::PlaneWave) return 0.0;
  return std::max(envelope(spec, grid.z_min()), envelope(spec, grid.z_max()));
}

std::vector<std::string> packet_diagnostics(const PacketSpec& spec, const Grid1D& grid) {
  std::vector<std::string> out;
  auto bad = [](double x) { return !std::isfinite(x); };
  if (bad(spec.amplitude) || bad(spec.center) || bad(spec.velocity) || bad(spec.sigma) ||
      bad(spec.k0)) {
    out.emplace_back("packet: all parameters must be finite");
    return out;
  }
  if (spec.kind == PacketKind::SechBreather) {
    if (!(spec.amplitude > 0.0)) out.emplace_back("packet.amplitude must be > 0 for a sech breather");
    if (spec.sech_scale && !(*spec.sech_scale > 0.0)) {
      out.emplace_back("packet.sech_scale must be > 0");
    }
  }
  if (spec.kind == PacketKind::Gaussian && !(spec.sigma > 0.0)) {
    out.emplace_back("packet.sigma must be > 0 for a Gaussian");
  }
  if (spec.kind == PacketKind::PlaneWave) {
    const double m = spec.k0 * grid.length() / (2.0 * std::numbers::pi);
    if (std::abs(m - std::round(m)) > 1e-9 * std::max(1.0, std::abs(m))) {
      std::ostringstream msg;
      msg << "packet.k0 = " << spec.k0 << " is not a multiple of 2 pi / L = "
          << 2.0 * std::numbers::pi / grid.length() << " (plane wave would not be periodic)";
      out.push_back(msg.str());
    }
    if (std::abs(spec.k0) >= std::numbers::pi / grid.dz()) {
      out.emplace_back("packet.k0 is at or beyond the grid Nyquist wavenumber");
    }
  }
  if (!out.empty()) return out;
  if (spec.kind != PacketKind::PlaneWave) {
    if (spec.center < grid.z_min() || spec.center >= grid.z_max()) {
      out.emplace_back("packet.center lies outside the grid");
    }
    const double leak = boundary_leakage(spec, grid);
    if (leak >= kBoundaryTolerance) {
      std::ostringstream msg;
      msg << "packet touches the periodic boundary: |psi| there is " << leak
          << " of the peak (limit " << kBoundaryTolerance << ")";
      out.push_back(msg.str());
    }
  }
  return out;
}

ComplexField build_packet(const PacketSpec& spec, const Grid1D& grid) {
  const auto problems = packet_diagnostics(spec, grid);
  if (!problems.empty()) throw ConfigError(problems.front());
  const double k = carrier_wavenumber(spec);
  std::vector<Complex> psi(grid.n());
  for (std::size_t j = 0; j < grid.n(); ++j) {
    const double z = grid.z(j);
    psi[j] = spec.amplitude * envelope(spec, z) * std::polar(1.0, k * z);
  }
  return ComplexField(grid, std::move(psi));
}

Observables density_observables(const Grid1D& grid, std::span<const double> rho) {
  const std::size_t n = grid.n();
  double m0 = 0.0;
  double m1 = 0.0;
  std::size_t peak = 0;
  for (std::size_t j = 0; j < n; ++j) {
    m0 += rho[j];
    m1 += grid.z(j) * rho[j];
    if (rho[j] > rho[peak]) peak = j;
  }
  if (!(m0 > 0.0)) throw NumericalError("observables: degenerate (zero) field");
  const double centroid = m1 / m0;
  double m2 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double d = grid.z(j) - centroid;
    m2 += d * d * rho[j];
  }

  // Parabolic refinement on |psi| = sqrt(rho), neighbours taken periodically.
  const double ym = std::sqrt(std::max(rho[(peak + n - 1) % n], 0.0));
  const double y0 = std::sqrt(std::max(rho[peak], 0.0));
  const double yp = std::sqrt(std::max(rho[(peak + 1) % n], 0.0));
  const double curvature = ym - 2.0 * y0 + yp;
  double shift = 0.0;
  if (curvature < 0.0) shift = 0.5 * (ym - yp) / curvature;

  Observables obs{};
  obs.norm = m0 * grid.dz();
  obs.centroid = centroid;
  obs.rms_width = std::sqrt(m2 / m0);
  obs.peak_position = grid.z(peak) + shift * grid.dz();
  return obs;
}

Observables observables(const Grid1D& grid, std::span<const Complex> values) {
  std::vector<double> rho(values.size());
  std::transform(values.begin(), values.end(), rho.begin(),
                 [](const Complex& v) { return std::norm(v); });
  return density_observables(grid, rho);
}

Observables observables(const ComplexField& field) {
  return observables(field.grid(), field.values());
}

}  // namespace solitonlab

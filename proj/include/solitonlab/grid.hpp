#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <span>
#include <vector>

namespace solitonlab {

using Complex = std::complex<double>;

/// Uniform periodic grid z_j = z_min + j dz, j = 0..n-1; z_max is the image of z_min.
class Grid1D {
 public:
  /// n must be a power of two, n >= 16, and z_max > z_min.
  Grid1D(std::size_t n, double z_min, double z_max);

  std::size_t n() const noexcept { return n_; }
  double z_min() const noexcept { return z_min_; }
  double z_max() const noexcept { return z_max_; }
  double dz() const noexcept { return dz_; }
  double length() const noexcept { return z_max_ - z_min_; }
  double z(std::size_t j) const noexcept { return z_min_ + static_cast<double>(j) * dz_; }

  /// Angular wavenumber of FFT bin j in standard order; bin n/2 is the Nyquist mode.
  double wavenumber(std::size_t j) const noexcept;
  std::vector<double> coordinates() const;

  bool operator==(const Grid1D& other) const noexcept = default;

 private:
  std::size_t n_;
  double z_min_;
  double z_max_;
  double dz_;
};

/// Complex samples on a grid, immutable once built. All entries are finite.
class ComplexField {
 public:
  ComplexField(Grid1D grid, std::vector<Complex> values);

  const Grid1D& grid() const noexcept { return grid_; }
  std::span<const Complex> values() const noexcept { return values_; }
  const Complex& operator[](std::size_t j) const noexcept { return values_[j]; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  Grid1D grid_;
  std::vector<Complex> values_;
};

enum class PacketKind { SechBreather, Gaussian, PlaneWave };

/// Declarative initial condition.
///
/// SechBreather: a exp(i v z / 2) sech(s (z - z0)) with s = sech_scale or, by
/// default, s = a (the amplitude/width locking of the NLS soliton).
/// Gaussian:     a exp(i k0 z) exp(-(z - z0)^2 / (2 sigma^2)).
/// PlaneWave:    a exp(i k0 z); k0 must be commensurate with the grid period.
struct PacketSpec {
  PacketKind kind = PacketKind::SechBreather;
  double amplitude = 1.0;
  double center = 0.0;
  double velocity = 0.0;
  double sigma = 1.0;
  double k0 = 0.0;
  std::optional<double> sech_scale;
};

/// Relative boundary amplitude above which a localized packet is rejected.
inline constexpr double kBoundaryTolerance = 1e-8;

/// |psi| at the periodic boundary relative to the packet peak (0 for plane waves).
double boundary_leakage(const PacketSpec& spec, const Grid1D& grid);

/// Problems with spec on grid, one message per problem; empty means buildable.
std::vector<std::string> packet_diagnostics(const PacketSpec& spec, const Grid1D& grid);

/// Samples the packet at t = 0. Throws ConfigError on any packet_diagnostics entry.
ComplexField build_packet(const PacketSpec& spec, const Grid1D& grid);

struct Observables {
  double norm;
  double centroid;
  double rms_width;
  double peak_position;
};

/// Rectangle-rule moments of |psi|^2 and the parabolically refined peak of |psi|.
/// Throws NumericalError for an all-zero field.
Observables observables(const ComplexField& field);
Observables observables(const Grid1D& grid, std::span<const Complex> values);

/// Moments of a non-negative density sampled on the grid.
Observables density_observables(const Grid1D& grid, std::span<const double> density);

}  // namespace solitonlab

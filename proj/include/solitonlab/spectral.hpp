#pragma once

#include <span>
#include <vector>

#include "solitonlab/grid.hpp"

typedef struct fftw_plan_s* fftw_plan;

namespace solitonlab {

/// FFT workspace owned by one solver run. Not thread-safe; construct one per run.
///
/// forward() is unnormalized, inverse() divides by n. Spectral derivatives
/// zero the Nyquist bin for every order so real inputs stay real.
class SpectralWorkspace {
 public:
  explicit SpectralWorkspace(const Grid1D& grid);
  ~SpectralWorkspace();
  SpectralWorkspace(const SpectralWorkspace&) = delete;
  SpectralWorkspace& operator=(const SpectralWorkspace&) = delete;

  const Grid1D& grid() const noexcept { return grid_; }
  std::span<const double> wavenumbers() const noexcept { return k_; }

  void forward(std::span<const Complex> in, std::span<Complex> out);
  void inverse(std::span<const Complex> in, std::span<Complex> out);

  void derivative(std::span<const Complex> in, std::span<Complex> out, int order);
  void derivative(std::span<const double> in, std::span<double> out, int order);

  /// out = IFFT(multiplier .* FFT(in)); in and out may alias.
  void apply_spectral_multiplier(std::span<const Complex> multiplier, std::span<Complex> data);

 private:
  Grid1D grid_;
  std::vector<double> k_;
  Complex* in_;
  Complex* out_;
  fftw_plan forward_plan_;
  fftw_plan inverse_plan_;
};

}  // namespace solitonlab

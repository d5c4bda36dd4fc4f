#include "solitonlab/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

#include "solitonlab/errors.hpp"

namespace solitonlab {

namespace {

// FFTW's planner is not re-entrant; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

SpectralWorkspace::SpectralWorkspace(const Grid1D& grid) : grid_(grid), k_(grid.n()) {
  const int n = static_cast<int>(grid.n());
  for (std::size_t j = 0; j < grid.n(); ++j) k_[j] = grid.wavenumber(j);
  std::lock_guard lock(planner_mutex());
  in_ = reinterpret_cast<Complex*>(fftw_malloc(sizeof(fftw_complex) * grid.n()));
  out_ = reinterpret_cast<Complex*>(fftw_malloc(sizeof(fftw_complex) * grid.n()));
  if (in_ == nullptr || out_ == nullptr) throw NumericalError("fftw_malloc failed");
  forward_plan_ = fftw_plan_dft_1d(n, as_fftw(in_), as_fftw(out_), FFTW_FORWARD, FFTW_ESTIMATE);
  inverse_plan_ = fftw_plan_dft_1d(n, as_fftw(in_), as_fftw(out_), FFTW_BACKWARD, FFTW_ESTIMATE);
  if (forward_plan_ == nullptr || inverse_plan_ == nullptr) {
    throw NumericalError("FFTW planning failed");
  }
}

SpectralWorkspace::~SpectralWorkspace() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(forward_plan_);
  fftw_destroy_plan(inverse_plan_);
  fftw_free(in_);
  fftw_free(out_);
}

void SpectralWorkspace::forward(std::span<const Complex> in, std::span<Complex> out) {
  std::copy(in.begin(), in.end(), in_);
  fftw_execute(forward_plan_);
  std::copy(out_, out_ + grid_.n(), out.begin());
}

void SpectralWorkspace::inverse(std::span<const Complex> in, std::span<Complex> out) {
  std::copy(in.begin(), in.end(), in_);
  fftw_execute(inverse_plan_);
  const double scale = 1.0 / static_cast<double>(grid_.n());
  std::transform(out_, out_ + grid_.n(), out.begin(), [scale](Complex v) { return v * scale; });
}

void SpectralWorkspace::apply_spectral_multiplier(std::span<const Complex> multiplier,
                                                  std::span<Complex> data) {
  const std::size_t n = grid_.n();
  std::copy(data.begin(), data.end(), in_);
  fftw_execute(forward_plan_);
  for (std::size_t j = 0; j < n; ++j) in_[j] = out_[j] * multiplier[j];
  fftw_execute(inverse_plan_);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) data[j] = out_[j] * scale;
}

void SpectralWorkspace::derivative(std::span<const Complex> in, std::span<Complex> out, int order) {
  const std::size_t n = grid_.n();
  std::copy(in.begin(), in.end(), in_);
  fftw_execute(forward_plan_);
  for (std::size_t j = 0; j < n; ++j) {
    Complex factor(1.0, 0.0);
    const Complex ik(0.0, k_[j]);
    for (int p = 0; p < order; ++p) factor *= ik;
    in_[j] = out_[j] * factor;
  }
  if (order > 0) in_[n / 2] = 0.0;
  fftw_execute(inverse_plan_);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = out_[j] * scale;
}

void SpectralWorkspace::derivative(std::span<const double> in, std::span<double> out, int order) {
  const std::size_t n = grid_.n();
  for (std::size_t j = 0; j < n; ++j) in_[j] = Complex(in[j], 0.0);
  fftw_execute(forward_plan_);
  for (std::size_t j = 0; j < n; ++j) {
    Complex factor(1.0, 0.0);
    const Complex ik(0.0, k_[j]);
    for (int p = 0; p < order; ++p) factor *= ik;
    in_[j] = out_[j] * factor;
  }
  if (order > 0) in_[n / 2] = 0.0;
  fftw_execute(inverse_plan_);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = out_[j].real() * scale;
}

}  // namespace solitonlab

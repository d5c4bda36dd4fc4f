#pragma once

#include <cstdint>

namespace solitonlab::kernels {

enum class TrialOutcome : std::uint8_t { Transmitted, Reflected, Tunneled };

/// Everything a single barrier trial needs, precomputed from the spec.
struct TrialModel {
  double guide_width;
  double gap_lo;  // transverse window of the narrowed guide, within [0, guide_width]
  double gap_hi;
  bool propagating;           // wave frequency at or above the shifted cutoff
  double tunnel_probability;  // exp(-2 kappa L); used only when !propagating
  std::uint64_t seed;
};

struct TrialCounts {
  std::uint64_t transmitted = 0;
  std::uint64_t reflected = 0;
  std::uint64_t tunneled = 0;

  std::uint64_t total() const noexcept { return transmitted + reflected + tunneled; }
  bool operator==(const TrialCounts&) const noexcept = default;
};

/// Transverse position in [0, w] of a particle with zigzag phase in [0, 1):
/// the triangle wave sweeping across the guide and back once per period.
double transverse_position(double phase, double guide_width) noexcept;

TrialOutcome classify_trial(const TrialModel& model, std::uint64_t trial) noexcept;

/// Reference implementation: one trial after another.
TrialCounts count_trials_serial(const TrialModel& model, std::uint64_t trials);

/// OpenMP implementation; threads <= 0 uses the runtime default. Bit-identical
/// to the serial reference for any thread count.
TrialCounts count_trials_parallel(const TrialModel& model, std::uint64_t trials, int threads);

}  // namespace solitonlab::kernels

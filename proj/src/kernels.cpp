#include "solitonlab/kernels.hpp"

#include <omp.h>

#include "solitonlab/rng.hpp"

namespace solitonlab::kernels {

double transverse_position(double phase, double guide_width) noexcept {
  return guide_width * (phase < 0.5 ? 2.0 * phase : 2.0 * (1.0 - phase));
}

TrialOutcome classify_trial(const TrialModel& model, std::uint64_t trial) noexcept {
  const double x = transverse_position(counter_uniform(model.seed, trial, 0), model.guide_width);
  if (x < model.gap_lo || x > model.gap_hi) return TrialOutcome::Reflected;
  if (model.propagating) return TrialOutcome::Transmitted;
  return counter_uniform(model.seed, trial, 1) < model.tunnel_probability ? TrialOutcome::Tunneled
                                                                          : TrialOutcome::Reflected;
}

TrialCounts count_trials_serial(const TrialModel& model, std::uint64_t trials) {
  TrialCounts counts;
  for (std::uint64_t i = 0; i < trials; ++i) {
    switch (classify_trial(model, i)) {
      case TrialOutcome::Transmitted:
        ++counts.transmitted;
        break;
      case TrialOutcome::Reflected:
        ++counts.reflected;
        break;
      case TrialOutcome::Tunneled:
        ++counts.tunneled;
        break;
    }
  }
  return counts;
}

TrialCounts count_trials_parallel(const TrialModel& model, std::uint64_t trials, int threads) {
  std::uint64_t transmitted = 0;
  std::uint64_t reflected = 0;
  std::uint64_t tunneled = 0;
  const int team = threads > 0 ? threads : omp_get_max_threads();
  const auto count = static_cast<std::int64_t>(trials);

#pragma omp parallel for num_threads(team) schedule(static) \
    reduction(+ : transmitted, reflected, tunneled)
  for (std::int64_t i = 0; i < count; ++i) {
    switch (classify_trial(model, static_cast<std::uint64_t>(i))) {
      case TrialOutcome::Transmitted:
        ++transmitted;
        break;
      case TrialOutcome::Reflected:
        ++reflected;
        break;
      case TrialOutcome::Tunneled:
        ++tunneled;
        break;
    }
  }
  return {transmitted, reflected, tunneled};
}

}  // namespace solitonlab::kernels

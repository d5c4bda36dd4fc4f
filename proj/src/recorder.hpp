#pragma once

// Shared bookkeeping for evolution runs: snapshot cadence, observables and
// conserved-quantity drift. Internal to the library.

#include <cmath>
#include <cstddef>
#include <algorithm>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "solitonlab/errors.hpp"
#include "solitonlab/run_report.hpp"

namespace solitonlab::detail {

/// Number of steps covering t_final with a step no larger than dt.
inline std::size_t step_count(double dt, double t_final) {
  const double ratio = t_final / dt;
  auto steps = static_cast<std::size_t>(std::ceil(ratio - 1e-9 * std::max(1.0, ratio)));
  return steps == 0 ? 1 : steps;
}

class Recorder {
 public:
  Recorder(const Grid1D& grid, std::size_t snapshot_every, std::size_t steps)
      : grid_(grid), every_(snapshot_every), steps_(steps) {}

  bool due(std::size_t step) const {
    return step == 0 || step == steps_ || (every_ > 0 && step % every_ == 0);
  }

  void record(double t, std::span<const Complex> psi, std::optional<PolarColumns> polar = {}) {
    ComplexField field(grid_, std::vector<Complex>(psi.begin(), psi.end()));
    series_.push_back({t, observables(field)});
    snapshots_.push_back({t, std::move(field), std::move(polar)});
  }

  /// Feeds one value of a conserved quantity; call once per step, in order.
  void track(std::size_t slot, const std::string& name, double value) {
    if (metrics_.size() <= slot) metrics_.resize(slot + 1);
    auto& m = metrics_[slot];
    if (!started_.contains(slot)) {
      m.quantity = name;
      m.initial = value;
      m.final_value = value;
      started_.insert(slot);
      return;
    }
    const double scale = std::abs(m.initial) > 0.0 ? std::abs(m.initial) : 1.0;
    m.max_step_drift = std::max(m.max_step_drift, std::abs(value - m.final_value) / scale);
    m.max_total_drift = std::max(m.max_total_drift, std::abs(value - m.initial) / scale);
    m.final_value = value;
    if (!std::isfinite(value)) throw NumericalError(name + " became non-finite");
  }

  void probe(double t, Complex value) { probe_.push_back({t, value}); }

  RunReport finish(std::string scheme, std::string convention, double dt) {
    RunReport r;
    r.scheme = std::move(scheme);
    r.convention = std::move(convention);
    r.dt = dt;
    r.steps = steps_;
    r.series = std::move(series_);
    r.snapshots = std::move(snapshots_);
    r.conservation = std::move(metrics_);
    r.probe = std::move(probe_);
    return r;
  }

 private:
  Grid1D grid_;
  std::size_t every_;
  std::size_t steps_;
  std::vector<ObservableSample> series_;
  std::vector<Snapshot> snapshots_;
  std::vector<ConservationMetrics> metrics_;
  std::set<std::size_t> started_;
  std::vector<ProbeSample> probe_;
};

}  // namespace solitonlab::detail

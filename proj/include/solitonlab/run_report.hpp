#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "solitonlab/grid.hpp"

namespace solitonlab {

struct ObservableSample {
  double t;
  Observables obs;
};

/// Extra per-point columns attached to snapshots of Madelung-form runs.
struct PolarColumns {
  std::vector<double> R;
  std::vector<double> S;
  std::vector<double> Q;  // zero off the support
};

struct Snapshot {
  double t;
  ComplexField field;
  std::optional<PolarColumns> polar;
};

/// Drift record of one conserved quantity over a run.
struct ConservationMetrics {
  std::string quantity;
  double initial = 0.0;
  double final_value = 0.0;
  double max_step_drift = 0.0;   // max |Q_{k+1} - Q_k| / |Q_0|
  double max_total_drift = 0.0;  // max |Q_k - Q_0| / |Q_0|
};

struct ProbeSample {
  double t;
  Complex value;
};

/// Output of every evolution: observables series and snapshots share one
/// cadence (step 0, every snapshot_every steps, and the final step).
struct RunReport {
  std::string scheme;
  std::string convention;  // equation actually integrated, with its coefficients
  double dt = 0.0;         // effective step (t_final / steps)
  std::size_t steps = 0;
  std::vector<ObservableSample> series;
  std::vector<Snapshot> snapshots;
  std::vector<ConservationMetrics> conservation;
  std::vector<ProbeSample> probe;  // every step, when a probe point is configured

  const ComplexField& final_state() const { return snapshots.back().field; }
  const ConservationMetrics* metric(const std::string& quantity) const;
};

}  // namespace solitonlab

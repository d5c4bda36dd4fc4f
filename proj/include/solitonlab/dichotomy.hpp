#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "solitonlab/run_report.hpp"

namespace solitonlab {

/// One sech initial condition pushed through the three evolution laws.
struct DichotomySettings {
  std::size_t n = 4096;
  double half_width = 128.0;
  double amplitude = 1.0;   // packet amplitude
  double sech_scale = 1.0;  // inverse width; equal to amplitude for the NLS soliton
  double dt = 1e-3;
  double t_final = 10.0;
  std::size_t snapshot_every = 500;
  double tolerance = 0.01;  // shape preserved if every width ratio is within 1 +- tolerance
};

enum class Verdict { ShapePreserved, Dispersed };

const char* verdict_name(Verdict v);

struct WidthRow {
  double t;
  double linear;
  double nls;
  double qfree;
};

struct LawSummary {
  double final_ratio;
  double max_deviation;  // max |ratio - 1| over the series
  Verdict verdict;
};

struct DichotomyReport {
  DichotomySettings settings;
  std::vector<WidthRow> widths;  // rms_width(t) / rms_width(0)
  LawSummary linear;
  LawSummary nls;
  LawSummary qfree;
  RunReport linear_run;
  RunReport nls_run;
  RunReport qfree_run;
};

DichotomyReport run_dispersion_vs_soliton(const DichotomySettings& settings);

}  // namespace solitonlab

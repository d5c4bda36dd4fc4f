#include "solitonlab/dichotomy.hpp"

#include <algorithm>
#include <cmath>

#include "recorder.hpp"
#include "solitonlab/errors.hpp"
#include "solitonlab/madelung.hpp"
#include "solitonlab/wave_solvers.hpp"

namespace solitonlab {

const char* verdict_name(Verdict v) {
  return v == Verdict::ShapePreserved ? "shape-preserved" : "dispersed";
}

namespace {

RunReport zero_step_report(const char* scheme, const ComplexField& psi,
                           std::optional<PolarColumns> polar) {
  detail::Recorder rec(psi.grid(), 0, 0);
  rec.record(0.0, psi.values(), std::move(polar));
  return rec.finish(scheme, "initial state only (t_final = 0)", 0.0);
}

std::vector<double> width_ratios(const RunReport& run) {
  std::vector<double> out;
  const double w0 = run.series.front().obs.rms_width;
  for (const auto& s : run.series) out.push_back(s.obs.rms_width / w0);
  return out;
}

LawSummary summarize(const std::vector<double>& ratios, double tolerance) {
  LawSummary s{ratios.back(), 0.0, Verdict::ShapePreserved};
  for (double r : ratios) s.max_deviation = std::max(s.max_deviation, std::abs(r - 1.0));
  s.verdict = s.max_deviation <= tolerance ? Verdict::ShapePreserved : Verdict::Dispersed;
  return s;
}

}  // namespace

DichotomyReport run_dispersion_vs_soliton(const DichotomySettings& settings) {
  if (!(settings.half_width > 0.0) || !(settings.amplitude > 0.0) || !(settings.sech_scale > 0.0)) {
    throw ConfigError("dichotomy: half_width, amplitude and sech_scale must be positive");
  }
  if (!(settings.t_final >= 0.0) || !(settings.dt > 0.0) || !(settings.tolerance > 0.0)) {
    throw ConfigError("dichotomy: need dt > 0, t_final >= 0 and tolerance > 0");
  }
  const Grid1D grid(settings.n, -settings.half_width, settings.half_width);

  PacketSpec packet;
  packet.kind = PacketKind::SechBreather;
  packet.amplitude = settings.amplitude;
  packet.sech_scale = settings.sech_scale;
  const ComplexField psi0 = build_packet(packet, grid);

  QFreeConfig ek;
  ek.r = settings.amplitude;
  ek.a = settings.sech_scale;
  ek.dt = settings.dt;
  ek.t_final = settings.t_final;
  ek.snapshot_every = settings.snapshot_every;
  const MadelungField envelope = qfree_envelope(ek, grid);

  DichotomyReport report;
  report.settings = settings;
  if (settings.t_final == 0.0) {
    auto Q = quantum_potential(envelope, ek.mass);
    report.linear_run = zero_step_report(scheme_name(Scheme::LinearSchrodinger), psi0, {});
    report.nls_run = zero_step_report(scheme_name(Scheme::NLS), psi0, {});
    report.qfree_run = zero_step_report(
        "qfree", recompose(envelope), PolarColumns{envelope.R, envelope.S, std::move(Q.values)});
  } else {
    SolverConfig solver;
    solver.dt = settings.dt;
    solver.t_final = settings.t_final;
    solver.snapshot_every = settings.snapshot_every;
    solver.scheme = Scheme::LinearSchrodinger;
    report.linear_run = evolve_linear_schrodinger(psi0, solver);
    solver.scheme = Scheme::NLS;
    report.nls_run = evolve_nls(psi0, solver);
    report.qfree_run = evolve_qfree(envelope, ek);
  }

  const auto lin = width_ratios(report.linear_run);
  const auto nls = width_ratios(report.nls_run);
  const auto ekh = width_ratios(report.qfree_run);
  if (lin.size() != nls.size() || lin.size() != ekh.size()) {
    throw NumericalError("dichotomy: runs produced different snapshot cadences");
  }
  for (std::size_t i = 0; i < lin.size(); ++i) {
    report.widths.push_back({report.linear_run.series[i].t, lin[i], nls[i], ekh[i]});
  }
  report.linear = summarize(lin, settings.tolerance);
  report.nls = summarize(nls, settings.tolerance);
  report.qfree = summarize(ekh, settings.tolerance);
  return report;
}

}  // namespace solitonlab

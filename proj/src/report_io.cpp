#include "solitonlab/report_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "solitonlab/errors.hpp"

namespace solitonlab {

using nlohmann::json;

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general);
  return {buf, res.ptr};
}

std::string snapshot_csv_text(const Snapshot& snapshot) {
  std::ostringstream out;
  const Grid1D& g = snapshot.field.grid();
  out << "# t=" << format_double(snapshot.t) << '\n';
  out << "# n=" << g.n() << " z_min=" << format_double(g.z_min())
      << " z_max=" << format_double(g.z_max()) << " dz=" << format_double(g.dz()) << '\n';
  const bool polar = snapshot.polar.has_value();
  out << (polar ? "z,re,im,abs2,R,S,Q\n" : "z,re,im,abs2\n");
  const auto values = snapshot.field.values();
  for (std::size_t j = 0; j < g.n(); ++j) {
    const Complex v = values[j];
    out << format_double(g.z(j)) << ',' << format_double(v.real()) << ','
        << format_double(v.imag()) << ',' << format_double(std::norm(v));
    if (polar) {
      out << ',' << format_double(snapshot.polar->R[j]) << ',' << format_double(snapshot.polar->S[j])
          << ',' << format_double(snapshot.polar->Q[j]);
    }
    out << '\n';
  }
  return out.str();
}

void write_snapshot_csv(const std::filesystem::path& path, const Snapshot& snapshot) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << snapshot_csv_text(snapshot);
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<std::filesystem::path> write_snapshots(const std::filesystem::path& dir,
                                                   const std::string& prefix,
                                                   const RunReport& report) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> paths;
  for (std::size_t i = 0; i < report.snapshots.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "_%04zu.csv", i);
    auto path = dir / (prefix + name);
    write_snapshot_csv(path, report.snapshots[i]);
    paths.push_back(std::move(path));
  }
  return paths;
}

json to_json(const Observables& obs) {
  return {{"norm", obs.norm},
          {"centroid", obs.centroid},
          {"rms_width", obs.rms_width},
          {"peak_position", obs.peak_position}};
}

json to_json(const RunReport& report) {
  json series = json::array();
  for (const auto& s : report.series) {
    json row = to_json(s.obs);
    row["t"] = s.t;
    series.push_back(std::move(row));
  }
  json conservation = json::array();
  for (const auto& m : report.conservation) {
    conservation.push_back({{"quantity", m.quantity},
                            {"initial", m.initial},
                            {"final", m.final_value},
                            {"max_step_drift", m.max_step_drift},
                            {"max_total_drift", m.max_total_drift}});
  }
  json times = json::array();
  for (const auto& s : report.snapshots) times.push_back(s.t);
  json j{{"scheme", report.scheme},
         {"convention", report.convention},
         {"dt", report.dt},
         {"steps", report.steps},
         {"series", std::move(series)},
         {"conservation", std::move(conservation)},
         {"snapshot_times", std::move(times)}};
  if (!report.probe.empty()) {
    json probe = json::array();
    for (const auto& p : report.probe) probe.push_back({p.t, p.value.real(), p.value.imag()});
    j["probe"] = std::move(probe);
  }
  return j;
}

namespace {

json extended(const ExtendedReal& x) {
  if (x.is_unbounded()) return "unbounded";
  return x.value();
}

}  // namespace

json to_json(const KinematicState& s) {
  return {{"v", s.v},
          {"beta", s.beta},
          {"inv_gamma", s.inv_gamma},
          {"phi", s.phi},
          {"f0", s.f0},
          {"f_clock", s.f_clock},
          {"f_wave", s.f_wave},
          {"f_zigzag", s.f_zigzag},
          {"V_phase", extended(s.V_phase)},
          {"w", s.w},
          {"lambda_guide", s.lambda_guide},
          {"lambda_phase", extended(s.lambda_phase)},
          {"t_zigzag", s.t_zigzag},
          {"L_zigzag", s.L_zigzag}};
}

json to_json(const MonteCarloReport& r) {
  const auto& m = r.model;
  return {{"transmitted", r.transmitted},
          {"reflected", r.reflected},
          {"tunneled", r.tunneled},
          {"transmission_fraction", r.transmission_fraction},
          {"standard_error", r.standard_error},
          {"geometric_gap_fraction", r.geometric_gap_fraction},
          {"linear_T", r.linear_T},
          {"seed", r.seed},
          {"model",
           {{"f0", m.f0},
            {"f0_barrier", m.f0_barrier},
            {"f_wave", m.f_wave},
            {"w", m.w},
            {"w_barrier", m.w_barrier},
            {"gap_lo", m.gap_lo},
            {"gap_hi", m.gap_hi},
            {"propagating", m.propagating},
            {"kappa", m.kappa},
            {"tunnel_probability", m.tunnel_probability}}}};
}

json to_json(const BohrOrbit& o) {
  return {{"N", o.N},
          {"radius", o.radius},
          {"velocity", o.velocity},
          {"period", o.period},
          {"angular_momentum", o.angular_momentum},
          {"energy", o.energy},
          {"tau", o.tau},
          {"orbit_length", o.orbit_length},
          {"de_broglie_wavelength", o.de_broglie_wavelength},
          {"above_nonrelativistic_limit", o.above_nonrelativistic_limit}};
}

json to_json(const PhaseAccordance& p) {
  return {{"tau", p.tau},
          {"tau_over_period", p.tau_over_period},
          {"quantization_residual", p.quantization_residual},
          {"nonrelativistic_gap", p.nonrelativistic_gap},
          {"phase_mismatch", p.phase_mismatch}};
}

json to_json(const DichotomyReport& r) {
  auto law = [](const LawSummary& s) {
    return json{{"final_ratio", s.final_ratio},
                {"max_deviation", s.max_deviation},
                {"verdict", verdict_name(s.verdict)}};
  };
  json widths = json::array();
  for (const auto& w : r.widths) {
    widths.push_back({{"t", w.t}, {"linear", w.linear}, {"nls", w.nls}, {"qfree", w.qfree}});
  }
  const auto& s = r.settings;
  return {{"settings",
           {{"n", s.n},
            {"half_width", s.half_width},
            {"amplitude", s.amplitude},
            {"sech_scale", s.sech_scale},
            {"dt", s.dt},
            {"t_final", s.t_final},
            {"snapshot_every", s.snapshot_every},
            {"tolerance", s.tolerance}}},
          {"width_ratio", std::move(widths)},
          {"verdict", {{"linear", law(r.linear)}, {"nls", law(r.nls)}, {"qfree", law(r.qfree)}}},
          {"runs",
           {{"linear", to_json(r.linear_run)},
            {"nls", to_json(r.nls_run)},
            {"qfree", to_json(r.qfree_run)}}}};
}

}  // namespace solitonlab

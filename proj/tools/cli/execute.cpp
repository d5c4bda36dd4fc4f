#include "execute.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "manifest.hpp"
#include "solitonlab/bohr.hpp"
#include "solitonlab/dispersion.hpp"
#include "solitonlab/errors.hpp"
#include "solitonlab/kinematics.hpp"
#include "solitonlab/report_io.hpp"
#include "solitonlab/spectral.hpp"

namespace solitonlab::cli {

namespace fs = std::filesystem;

namespace {

using CsvFiles = std::vector<std::pair<std::string, std::string>>;

void add_snapshots(CsvFiles* files, const std::string& prefix, const RunReport& run) {
  if (files == nullptr) return;
  for (std::size_t i = 0; i < run.snapshots.size(); ++i) {
    char name[64];
    std::snprintf(name, sizeof name, "snapshots/%s_%04zu.csv", prefix.c_str(), i);
    files->emplace_back(name, snapshot_csv_text(run.snapshots[i]));
  }
}

std::vector<Complex> kg_initial_rate(const ComplexField& psi0, const SolverConfig& solver,
                                     const std::string& mode) {
  const std::size_t n = psi0.grid().n();
  std::vector<Complex> rate(n, Complex(0.0, 0.0));
  if (mode == "at-rest") return rate;
  const double sign = mode == "positive-frequency" ? -1.0 : 1.0;
  SpectralWorkspace ws(psi0.grid());
  std::vector<Complex> mult(n);
  const auto k = ws.wavenumbers();
  for (std::size_t j = 0; j < n; ++j) {
    mult[j] = Complex(0.0, sign * std::hypot(solver.omega0, solver.c * k[j]));
  }
  rate.assign(psi0.values().begin(), psi0.values().end());
  ws.apply_spectral_multiplier(mult, rate);
  return rate;
}

double breather_l2_error(const ComplexField& psi, double t, double a, double v, double z0) {
  const Grid1D& g = psi.grid();
  const auto values = psi.values();
  double err = 0.0;
  for (std::size_t j = 0; j < g.n(); ++j) {
    Complex exact(0.0, 0.0);
    for (int m = -2; m <= 2; ++m) exact += nls_breather_exact(g.z(j) + m * g.length(), t, a, v, z0);
    err += std::norm(values[j] - exact);
  }
  return std::sqrt(err * g.dz());
}

json run_evolve(const EvolveJob& job, CsvFiles* files, std::ostream& out) {
  const ComplexField psi0 = build_packet(job.packet, job.grid);
  RunReport run;
  json comparators = json::object();
  switch (job.solver.scheme) {
    case Scheme::LinearSchrodinger:
      run = evolve_linear_schrodinger(psi0, job.solver);
      if (job.packet.kind == PacketKind::Gaussian && job.potential.kind == "none") {
        const double s2 = job.packet.sigma * job.packet.sigma;
        const double t = job.solver.t_final;
        const double expected = job.packet.sigma / std::sqrt(2.0) * std::sqrt(1.0 + t * t / (s2 * s2));
        comparators["gaussian_rms_width"] = {{"expected", expected},
                                             {"measured", run.series.back().obs.rms_width}};
      }
      break;
    case Scheme::NLS:
      run = evolve_nls(psi0, job.solver);
      if (job.packet.kind == PacketKind::SechBreather &&
          job.packet.sech_scale.value_or(job.packet.amplitude) == job.packet.amplitude) {
        comparators["breather_l2_error"] =
            breather_l2_error(run.final_state(), job.solver.t_final, job.packet.amplitude,
                              job.packet.velocity, job.packet.center);
      }
      break;
    case Scheme::KleinGordon: {
      const auto rate = kg_initial_rate(psi0, job.solver, job.kg_initial);
      run = evolve_klein_gordon(psi0, ComplexField(job.grid, rate), job.solver);
      const auto branch = DispersionBranch::klein_gordon(job.solver.omega0 / (2.0 * std::numbers::pi),
                                                         job.solver.c);
      comparators["group_velocity_at_k0"] = group_velocity(branch, job.packet.k0);
      break;
    }
  }
  add_snapshots(files, "evolve", run);

  const auto& first = run.series.front().obs;
  const auto& last = run.series.back().obs;
  out << "scheme          " << run.scheme << "\n";
  out << "convention      " << run.convention << "\n";
  out << "steps           " << run.steps << " (dt = " << format_double(run.dt) << ")\n";
  out << "rms_width       " << format_double(first.rms_width) << " -> " << format_double(last.rms_width)
      << "\n";
  out << "centroid        " << format_double(first.centroid) << " -> " << format_double(last.centroid)
      << "\n";
  for (const auto& m : run.conservation) {
    out << m.quantity << " drift  " << format_double(m.max_total_drift) << "\n";
  }
  return {{"run", to_json(run)}, {"comparators", std::move(comparators)}};
}

json run_madelung(const MadelungJob& job, CsvFiles* files, std::ostream& out) {
  const MadelungField initial = qfree_envelope(job.qfree, job.grid);
  const RunReport run = evolve_qfree(initial, job.qfree);
  add_snapshots(files, "qfree", run);

  const double g = job.potential.kind == "linear" ? job.potential.g : 0.0;
  double worst = 0.0;
  json trajectory = json::array();
  for (const auto& s : run.series) {
    const double classical =
        job.qfree.center + job.qfree.v_e * s.t - 0.5 * g / job.qfree.mass * s.t * s.t;
    const double displacement = std::abs(classical - job.qfree.center);
    const double dev = std::abs(s.obs.centroid - classical);
    if (displacement > 0.0) worst = std::max(worst, dev / displacement);
    trajectory.push_back({{"t", s.t}, {"centroid", s.obs.centroid}, {"classical", classical}});
  }
  const auto amplitude = soliton_amplitude(0.0, electron_constants());
  json result{{"run", to_json(run)},
              {"classical_trajectory", std::move(trajectory)},
              {"max_relative_trajectory_deviation", worst},
              {"soliton_amplitude_at_V0", {{"si", amplitude.si}, {"normalized", amplitude.normalized}}}};

  out << "scheme          " << run.scheme << "\n";
  out << "steps           " << run.steps << " (dt = " << format_double(run.dt) << ")\n";
  out << "rms_width       " << format_double(run.series.front().obs.rms_width) << " -> "
      << format_double(run.series.back().obs.rms_width) << "\n";
  out << "centroid        " << format_double(run.series.front().obs.centroid) << " -> "
      << format_double(run.series.back().obs.centroid) << "\n";
  out << "trajectory dev  " << format_double(worst) << " (relative to classical displacement)\n";
  out << "R2_integral drift " << format_double(run.conservation.front().max_total_drift) << "\n";

  if (job.compare_linear) {
    SolverConfig linear;
    linear.dt = job.qfree.dt;
    linear.t_final = job.qfree.t_final;
    linear.snapshot_every = job.qfree.snapshot_every;
    linear.potential = job.qfree.potential;
    const RunReport lin = evolve_linear_schrodinger(recompose(initial), linear);
    add_snapshots(files, "linear", lin);
    result["linear_run"] = to_json(lin);
    out << "linear rms_width " << format_double(lin.series.front().obs.rms_width) << " -> "
        << format_double(lin.series.back().obs.rms_width) << "\n";
  }
  return result;
}

json run_dichotomy(const DichotomyJob& job, CsvFiles* files, std::ostream& out) {
  const DichotomyReport r = run_dispersion_vs_soliton(job.settings);
  if (files != nullptr) {
    std::string csv = "t,linear,nls,qfree\n";
    for (const auto& w : r.widths) {
      csv += format_double(w.t) + ',' + format_double(w.linear) + ',' + format_double(w.nls) + ',' +
             format_double(w.qfree) + '\n';
    }
    files->emplace_back("widths.csv", std::move(csv));
  }
  add_snapshots(files, "linear", r.linear_run);
  add_snapshots(files, "nls", r.nls_run);
  add_snapshots(files, "qfree", r.qfree_run);
  auto line = [&out](const char* name, const LawSummary& s) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-8s width ratio %.6f  max |ratio-1| %.3e  %s\n", name,
                  s.final_ratio, s.max_deviation, verdict_name(s.verdict));
    out << buf;
  };
  line("linear", r.linear);
  line("nls", r.nls);
  line("qfree", r.qfree);
  return to_json(r);
}

json run_barrier(const BarrierJob& job, const ExecOptions& options, std::ostream& out) {
  const auto k = electron_constants();
  const MonteCarloReport r = run_barrier_monte_carlo(job.spec, k, options.parallel_trials);
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "trials %llu  transmitted %llu  tunneled %llu  reflected %llu\n"
                "transmission_fraction %.6f +- %.6f  (gap fraction %.6f)\n"
                "linear-equation T %.6f  %s\n",
                static_cast<unsigned long long>(job.spec.trials),
                static_cast<unsigned long long>(r.transmitted),
                static_cast<unsigned long long>(r.tunneled),
                static_cast<unsigned long long>(r.reflected), r.transmission_fraction,
                r.standard_error, r.geometric_gap_fraction, r.linear_T,
                r.model.propagating ? "above shifted cutoff" : "below shifted cutoff (evanescent)");
  out << buf;
  json result = to_json(r);
  result["assumptions"] = {
      "zigzag phase at the interface uniform on [0, 1)",
      "transverse position is the triangle-wave image of the phase across the guide",
      "barrier raises the cutoff to f0 + V0/h and narrows the guide to c / (2 f0')",
      "gap centered in the guide, shifted by gap_offset * w",
      "below the shifted cutoff, gap hits tunnel with probability exp(-2 kappa L)"};
  result["inputs_si"] = {{"V0_J", job.spec.V0}, {"E_J", job.spec.E}, {"L_m", job.spec.L}};
  return result;
}

json run_bohr(const BohrJob& job, CsvFiles* files, std::ostream& out) {
  const auto k = electron_constants();
  json rows = json::array();
  std::string csv = "N,radius_m,velocity_m_s,energy_eV,tau_over_T,quantization_residual,nonrelativistic_gap\n";
  out << "   N      radius (m)   energy (eV)      tau/T      residual    nonrel gap\n";
  for (int N = job.N_min; N <= job.N_max; ++N) {
    const BohrOrbit o = bohr_orbit(N, k);
    const PhaseAccordance p = bohr_phase_accordance(N, k);
    rows.push_back({{"orbit", to_json(o)}, {"phase_accordance", to_json(p)}});
    char buf[160];
    std::snprintf(buf, sizeof buf, "%4d  %.6e  %12.6f  %.6e  %+.2e  %.6e\n", N, o.radius,
                  o.energy / k.eV, p.tau_over_period, p.quantization_residual, p.nonrelativistic_gap);
    out << buf;
    csv += std::to_string(N) + ',' + format_double(o.radius) + ',' + format_double(o.velocity) + ',' +
           format_double(o.energy / k.eV) + ',' + format_double(p.tau_over_period) + ',' +
           format_double(p.quantization_residual) + ',' + format_double(p.nonrelativistic_gap) + '\n';
  }
  if (files != nullptr) files->emplace_back("bohr.csv", std::move(csv));
  return {{"orbits", std::move(rows)}};
}

json run_kinematics(const KinematicsJob& job, CsvFiles* files, std::ostream& out) {
  const auto k = electron_constants();
  json rows = json::array();
  std::string csv = "v_over_c,inv_gamma,phi,f_clock,f_wave,V_phase,lambda_guide,lambda_phase,t_zigzag,L_zigzag\n";
  for (double b : job.v_over_c) {
    const KinematicState s = kinematic_state(b * k.c, job.mass, k);
    rows.push_back(to_json(s));
    auto ext = [](const ExtendedReal& x) {
      return x.is_unbounded() ? std::string("unbounded") : format_double(x.value());
    };
    out << "v               " << format_double(s.v) << " m/s (beta " << format_double(s.beta) << ")\n"
        << "inv_gamma       " << format_double(s.inv_gamma) << "\n"
        << "phi             " << format_double(s.phi) << " rad\n"
        << "f0              " << format_double(s.f0) << " Hz\n"
        << "f_clock         " << format_double(s.f_clock) << " Hz\n"
        << "f_wave          " << format_double(s.f_wave) << " Hz\n"
        << "f_zigzag        " << format_double(s.f_zigzag) << " Hz\n"
        << "V_phase         " << ext(s.V_phase) << " m/s\n"
        << "w               " << format_double(s.w) << " m\n"
        << "lambda_guide    " << format_double(s.lambda_guide) << " m\n"
        << "lambda_phase    " << ext(s.lambda_phase) << " m\n"
        << "t_zigzag        " << format_double(s.t_zigzag) << " s\n"
        << "L_zigzag        " << format_double(s.L_zigzag) << " m\n";
    csv += format_double(b) + ',' + format_double(s.inv_gamma) + ',' + format_double(s.phi) + ',' +
           format_double(s.f_clock) + ',' + format_double(s.f_wave) + ',' + ext(s.V_phase) + ',' +
           format_double(s.lambda_guide) + ',' + ext(s.lambda_phase) + ',' +
           format_double(s.t_zigzag) + ',' + format_double(s.L_zigzag) + '\n';
  }
  if (files != nullptr) files->emplace_back("kinematics.csv", std::move(csv));
  return {{"states", std::move(rows)}};
}

json run_dispersion(const DispersionJob& job, CsvFiles* files, std::ostream& out) {
  const double f0 = job.omega0 / (2.0 * std::numbers::pi);
  const auto kg = DispersionBranch::klein_gordon(f0, job.c);
  const auto sc = DispersionBranch::schrodinger(f0, job.V, job.c, 1.0);
  json rows = json::array();
  std::string csv = "ck_over_omega0,k,omega_kg,omega_schrodinger,vg_kg,vg_schrodinger\n";
  out << "ck/omega0          k      omega_KG    omega_Schr       vg_KG     vg_Schr\n";
  for (double x : job.ck_over_omega0) {
    const double k = x * job.omega0 / job.c;
    const double wk = omega(kg, k), ws = omega(sc, k), gk = group_velocity(kg, k),
                 gs = group_velocity(sc, k);
    rows.push_back({{"ck_over_omega0", x},
                    {"k", k},
                    {"omega_klein_gordon", wk},
                    {"omega_schrodinger", ws},
                    {"group_velocity_klein_gordon", gk},
                    {"group_velocity_schrodinger", gs}});
    char buf[160];
    std::snprintf(buf, sizeof buf, "%9.4f  %9.4g  %12.6g  %12.6g  %10.6g  %10.6g\n", x, k, wk, ws, gk, gs);
    out << buf;
    csv += format_double(x) + ',' + format_double(k) + ',' + format_double(wk) + ',' +
           format_double(ws) + ',' + format_double(gk) + ',' + format_double(gs) + '\n';
  }
  if (files != nullptr) files->emplace_back("dispersion.csv", std::move(csv));
  return {{"convention", "angular wavenumber and angular frequency; hbar = 1 in the parabolic branch"},
          {"rows", std::move(rows)}};
}

json run_photon(const PhotonJob& job, std::ostream& out) {
  const auto k = electron_constants();
  const PhotonRelations p = photon_relations(job.f, job.f0, k);
  out << "f_zigzag        " << format_double(p.f_zigzag) << " Hz\n"
      << "E_zigzag        " << format_double(p.E_zigzag) << " J (" << format_double(p.E_zigzag / k.eV)
      << " eV)\n";
  return {{"f_zigzag_Hz", p.f_zigzag}, {"E_zigzag_J", p.E_zigzag}, {"E_zigzag_eV", p.E_zigzag / k.eV}};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

json build_report(const ParsedConfig& config, const ExecOptions& options, CsvFiles* files,
                  std::ostream& out) {
  json results = std::visit(
      [&](const auto& job) -> json {
        using T = std::decay_t<decltype(job)>;
        if constexpr (std::is_same_v<T, EvolveJob>) return run_evolve(job, files, out);
        if constexpr (std::is_same_v<T, MadelungJob>) return run_madelung(job, files, out);
        if constexpr (std::is_same_v<T, DichotomyJob>) return run_dichotomy(job, files, out);
        if constexpr (std::is_same_v<T, BarrierJob>) return run_barrier(job, options, out);
        if constexpr (std::is_same_v<T, BohrJob>) return run_bohr(job, files, out);
        if constexpr (std::is_same_v<T, KinematicsJob>) return run_kinematics(job, files, out);
        if constexpr (std::is_same_v<T, DispersionJob>) return run_dispersion(job, files, out);
        if constexpr (std::is_same_v<T, PhotonJob>) return run_photon(job, out);
      },
      config.job);
  return {{"schema_version", kSchemaVersion},
          {"experiment", config.experiment},
          {"seed", config.seed},
          {"config", config.effective},
          {"results", std::move(results)}};
}

json execute(const ParsedConfig& config, const ExecOptions& options, std::ostream& out) {
  const auto started = std::chrono::system_clock::now();
  CsvFiles csv;
  json report = build_report(config, options, options.out_dir ? &csv : nullptr, out);
  if (!options.out_dir) return report;

  const fs::path dir = *options.out_dir;
  std::error_code ec;
  fs::create_directories(dir / "snapshots", ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

  RunManifest manifest;
  manifest.version = tool_version();
  manifest.experiment = config.experiment;
  manifest.seed = config.seed;
  manifest.config_digest = sha256_hex(canonical(config.effective));
  manifest.started_utc = utc_iso8601(started);

  auto emit = [&](const fs::path& relative, const std::string& text) {
    write_text(dir / relative, text);
    manifest.outputs.push_back({relative, sha256_file(dir / relative)});
  };
  const std::string body = report.dump(2) + "\n";
  emit("report.json", body);
  emit(config.experiment + "-" + utc_compact(started) + "-" + std::to_string(config.seed) + ".json", body);
  for (const auto& [name, text] : csv) emit(name, text);
  if (fs::is_empty(dir / "snapshots")) fs::remove(dir / "snapshots");

  manifest.finished_utc = utc_iso8601(std::chrono::system_clock::now());
  json m = manifest.to_json();
  write_text(dir / "manifest.json", m.dump(2) + "\n");
  out << "wrote " << manifest.outputs.size() << " files to " << dir.string() << "\n";
  return m;
}

}  // namespace solitonlab::cli

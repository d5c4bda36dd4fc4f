#include "app.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <optional>
#include <sstream>
#include <type_traits>

#include "config.hpp"
#include "execute.hpp"
#include "manifest.hpp"
#include "solitonlab/errors.hpp"

namespace solitonlab::cli {

namespace {

namespace fs = std::filesystem;

struct Common {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  int parallel_trials = 1;
};

// Flag values destined for dotted config paths; applied only when given.
struct FlagMap {
  std::vector<std::pair<std::string, std::function<void(json&)>>> setters;

  template <class T>
  void bind(CLI::App* app, const std::string& flag, const std::string& path, const std::string& help) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = nullptr;
    if constexpr (std::is_same_v<T, bool>) {
      opt = app->add_flag(flag, *value, help);
    } else {
      opt = app->add_option(flag, *value, help);
    }
    setters.emplace_back(path, [value, opt, path](json& doc) {
      if (opt->count() > 0) set_path(doc, path, json(*value));
    });
  }

  void apply(json& doc) const {
    for (const auto& [path, set] : setters) set(doc);
  }

  static void set_path(json& doc, const std::string& path, json value) {
    json* node = &doc;
    std::size_t start = 0;
    while (true) {
      const auto dot = path.find('.', start);
      const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
      if (dot == std::string::npos) {
        (*node)[key] = std::move(value);
        return;
      }
      node = &(*node)[key];
      start = dot + 1;
    }
  }
};

// "breather,a=1,v=0" -> packet fields
void apply_packet(json& doc, const std::string& text) {
  std::istringstream in(text);
  std::string token;
  bool first = true;
  while (std::getline(in, token, ',')) {
    if (first) {
      doc["packet"]["kind"] = token;
      first = false;
      continue;
    }
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw ConfigError("--packet entry '" + token + "' must be key=value");
    std::string key = token.substr(0, eq);
    const std::string raw = token.substr(eq + 1);
    if (key == "a") key = "amplitude";
    if (key == "v") key = "velocity";
    if (key == "z0") key = "center";
    if (key == "scale") key = "sech_scale";
    double value = 0.0;
    try {
      value = std::stod(raw);
    } catch (const std::exception&) {
      throw ConfigError("--packet value for " + key + " is not a number: " + raw);
    }
    doc["packet"][key] = value;
  }
}

// "barrier,V0=1,start=0.025,width=1" | "linear,g=0.2" | "none"
void apply_potential(json& doc, const std::string& text) {
  std::istringstream in(text);
  std::string token;
  bool first = true;
  while (std::getline(in, token, ',')) {
    if (first) {
      doc["potential"]["kind"] = token;
      first = false;
      continue;
    }
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw ConfigError("--potential entry '" + token + "' must be key=value");
    try {
      doc["potential"][token.substr(0, eq)] = std::stod(token.substr(eq + 1));
    } catch (const std::invalid_argument&) {
      throw ConfigError("--potential value is not a number: " + token);
    }
  }
}

json base_document(const std::string& experiment, const Common& common) {
  json doc = json::object();
  if (!common.config_path.empty()) {
    doc = load_config(common.config_path);
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    if (doc.contains("experiment") && doc["experiment"] != experiment && !experiment.empty()) {
      throw ConfigError("config is for experiment '" + doc["experiment"].get<std::string>() +
                        "', not '" + experiment + "'");
    }
  }
  if (!experiment.empty()) doc["experiment"] = experiment;
  return doc;
}

std::optional<fs::path> output_dir(const Common& common, bool calculator) {
  if (!common.out_dir.empty()) return fs::path(common.out_dir);
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') return fs::path(env);
  if (calculator) return std::nullopt;
  return fs::path("solitonlab-out");
}

bool is_calculator(const std::string& experiment) {
  return experiment == "kinematics" || experiment == "dispersion" || experiment == "bohr" ||
         experiment == "photon";
}

int finish_run(json doc, const Common& common, std::ostream& out) {
  for (const auto& o : common.overrides) apply_override(doc, o);
  const ParsedConfig parsed = parse_config(doc);
  ExecOptions options;
  options.out_dir = output_dir(common, is_calculator(parsed.experiment));
  options.parallel_trials = common.parallel_trials;
  execute(parsed, options, out);
  return kExitOk;
}

void add_common(CLI::App* sub, Common& common, bool with_config = true) {
  if (with_config) sub->add_option("--config", common.config_path, "JSON config to start from");
  sub->add_option("--set", common.overrides, "Dotted override, e.g. solver.dt=1e-3");
  sub->add_option("--out", common.out_dir,
                  std::string("Output directory (default: $") + kOutputDirEnv + ")");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Envelope-soliton electron model: solvers, diagnostics and experiments", "solitonlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());

  Common common;
  std::function<json()> build;
  std::string chosen;

  // kinematics
  auto* kin = app.add_subcommand("kinematics", "Kinematic state of the zigzagging electron");
  std::vector<std::string> velocities;
  kin->add_option("--v", velocities, "Velocity in m/s or as a multiple of c, e.g. 0.6c")->required();
  FlagMap kin_flags;
  kin_flags.bind<double>(kin, "--mass", "kinematics.mass_kg", "Rest mass in kg");
  add_common(kin, common, false);

  // dispersion
  auto* disp = app.add_subcommand("dispersion", "Klein-Gordon and parabolic dispersion tables");
  FlagMap disp_flags;
  disp_flags.bind<std::vector<double>>(disp, "--ck", "dispersion.ck_over_omega0", "Values of ck/omega0");
  disp_flags.bind<double>(disp, "--omega0", "dispersion.omega0", "Cutoff angular frequency");
  disp_flags.bind<double>(disp, "--c", "dispersion.c", "Wave speed");
  disp_flags.bind<double>(disp, "--V", "dispersion.V", "Potential in the parabolic branch");
  add_common(disp, common, false);

  // evolve
  auto* evo = app.add_subcommand("evolve", "Evolve a packet under one wave equation");
  FlagMap evo_flags;
  evo_flags.bind<std::string>(evo, "--scheme", "solver.scheme", "linear | nls | klein-gordon");
  evo_flags.bind<double>(evo, "--dt", "solver.dt", "Time step");
  evo_flags.bind<double>(evo, "--t-final", "solver.t_final", "End time");
  evo_flags.bind<std::size_t>(evo, "--snapshot-every", "solver.snapshot_every", "Steps between snapshots");
  evo_flags.bind<std::size_t>(evo, "--n", "grid.n", "Grid points (power of two)");
  evo_flags.bind<double>(evo, "--z-min", "grid.z_min", "Domain start");
  evo_flags.bind<double>(evo, "--z-max", "grid.z_max", "Domain end");
  std::string evo_packet, evo_potential;
  evo->add_option("--packet", evo_packet, "kind[,key=value...], e.g. breather,a=1,v=0");
  evo->add_option("--potential", evo_potential, "none | linear,g=... | barrier,V0=...,start=...,width=...");
  add_common(evo, common);

  // madelung
  auto* mad = app.add_subcommand("madelung", "Quantum-potential-free envelope evolution");
  FlagMap mad_flags;
  mad_flags.bind<double>(mad, "--r", "envelope.r", "Envelope amplitude");
  mad_flags.bind<double>(mad, "--a", "envelope.a", "Envelope inverse width");
  mad_flags.bind<double>(mad, "--v-e", "envelope.v_e", "Envelope velocity");
  mad_flags.bind<double>(mad, "--center", "envelope.center", "Envelope center");
  mad_flags.bind<double>(mad, "--dt", "solver.dt", "Time step");
  mad_flags.bind<double>(mad, "--t-final", "solver.t_final", "End time");
  mad_flags.bind<std::size_t>(mad, "--snapshot-every", "solver.snapshot_every", "Steps between snapshots");
  mad_flags.bind<std::size_t>(mad, "--n", "grid.n", "Grid points (power of two)");
  mad_flags.bind<double>(mad, "--z-min", "grid.z_min", "Domain start");
  mad_flags.bind<double>(mad, "--z-max", "grid.z_max", "Domain end");
  mad_flags.bind<bool>(mad, "--compare-linear", "compare_linear", "Also run the linear equation");
  std::string mad_potential;
  mad->add_option("--potential", mad_potential, "none | linear,g=... | barrier,V0=...,start=...,width=...");
  add_common(mad, common);

  // soliton-vs-dispersion
  auto* dich = app.add_subcommand("soliton-vs-dispersion", "One sech packet under three evolution laws");
  FlagMap dich_flags;
  dich_flags.bind<std::size_t>(dich, "--n", "settings.n", "Grid points");
  dich_flags.bind<double>(dich, "--half-width", "settings.half_width", "Domain half width");
  dich_flags.bind<double>(dich, "--amplitude", "settings.amplitude", "Packet amplitude");
  dich_flags.bind<double>(dich, "--sech-scale", "settings.sech_scale", "Packet inverse width");
  dich_flags.bind<double>(dich, "--dt", "settings.dt", "Time step");
  dich_flags.bind<double>(dich, "--t-final", "settings.t_final", "End time");
  dich_flags.bind<std::size_t>(dich, "--snapshot-every", "settings.snapshot_every", "Steps between snapshots");
  dich_flags.bind<double>(dich, "--tolerance", "settings.tolerance", "Width tolerance for the verdict");
  add_common(dich, common);

  // barrier
  auto* bar = app.add_subcommand("barrier", "Hidden-phase barrier Monte Carlo");
  FlagMap bar_flags;
  std::string bar_V0, bar_E;
  bar->add_option("--V0", bar_V0, "Barrier height: eV, or '<x> mc2'");
  bar->add_option("--E", bar_E, "Kinetic energy: eV, or '<x> mc2'");
  bar_flags.bind<double>(bar, "--L", "barrier.L_m", "Barrier length in m");
  bar_flags.bind<std::uint64_t>(bar, "--trials", "barrier.trials", "Number of trials");
  bar_flags.bind<double>(bar, "--gap-offset", "barrier.gap_offset", "Gap shift as a fraction of w");
  bar_flags.bind<std::uint64_t>(bar, "--seed", "seed", "Seed");
  bar->add_option("--parallel-trials", common.parallel_trials, "OpenMP threads for the trials")
      ->check(CLI::PositiveNumber);
  add_common(bar, common);

  // bohr
  auto* bohr = app.add_subcommand("bohr", "Bohr orbits and phase accordance");
  FlagMap bohr_flags;
  int bohr_N = 0;
  bohr->add_option("--N", bohr_N, "Single principal quantum number");
  bohr_flags.bind<int>(bohr, "--N-min", "bohr.N_min", "First N");
  bohr_flags.bind<int>(bohr, "--N-max", "bohr.N_max", "Last N");
  add_common(bohr, common, false);

  // photon
  auto* pho = app.add_subcommand("photon", "Photon zigzag frequency relations");
  FlagMap pho_flags;
  pho_flags.bind<double>(pho, "--f", "photon.f_Hz", "Photon frequency in Hz");
  pho_flags.bind<double>(pho, "--f0", "photon.f0_Hz", "Mode cutoff in Hz");
  add_common(pho, common, false);

  // validate / run
  auto* val = app.add_subcommand("validate", "Check a config without running it");
  std::string val_path;
  val->add_option("config", val_path, "Config file")->required();
  val->add_option("--set", common.overrides, "Dotted override");
  auto* run = app.add_subcommand("run", "Run the experiment a config names");
  std::string run_path;
  run->add_option("config", run_path, "Config file")->required();
  run->add_option("--set", common.overrides, "Dotted override");
  run->add_option("--out", common.out_dir, "Output directory");
  run->add_option("--parallel-trials", common.parallel_trials, "OpenMP threads for Monte Carlo trials")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*val) {
      json doc = load_config(val_path);
      for (const auto& o : common.overrides) apply_override(doc, o);
      const auto problems = diagnose(doc);
      for (const auto& p : problems) err << val_path << ": " << p << "\n";
      if (problems.empty()) out << val_path << ": ok\n";
      return problems.empty() ? kExitOk : kExitConfig;
    }
    if (*run) return finish_run(load_config(run_path), common, out);

    if (*kin) {
      json doc = base_document("kinematics", common);
      json v = json::array();
      const double c = electron_constants().c;
      for (const auto& text : velocities) v.push_back(parse_velocity(text) / c);
      doc["kinematics"]["v_over_c"] = v;
      kin_flags.apply(doc);
      return finish_run(doc, common, out);
    }
    if (*disp) {
      json doc = base_document("dispersion", common);
      disp_flags.apply(doc);
      return finish_run(doc, common, out);
    }
    if (*evo) {
      json doc = base_document("evolve", common);
      evo_flags.apply(doc);
      if (!evo_packet.empty()) apply_packet(doc, evo_packet);
      if (!evo_potential.empty()) apply_potential(doc, evo_potential);
      return finish_run(doc, common, out);
    }
    if (*mad) {
      json doc = base_document("madelung", common);
      mad_flags.apply(doc);
      if (!mad_potential.empty()) apply_potential(doc, mad_potential);
      return finish_run(doc, common, out);
    }
    if (*dich) {
      json doc = base_document("soliton-vs-dispersion", common);
      dich_flags.apply(doc);
      return finish_run(doc, common, out);
    }
    if (*bar) {
      json doc = base_document("barrier", common);
      auto energy = [](const std::string& text) -> json {
        const json parsed = json::parse(text, nullptr, false);
        return parsed.is_number() ? parsed : json(text);
      };
      if (!bar_V0.empty()) doc["barrier"]["V0_eV"] = energy(bar_V0);
      if (!bar_E.empty()) doc["barrier"]["E_eV"] = energy(bar_E);
      bar_flags.apply(doc);
      return finish_run(doc, common, out);
    }
    if (*bohr) {
      json doc = base_document("bohr", common);
      if (bohr->get_option("--N")->count() > 0) {
        doc["bohr"]["N_min"] = bohr_N;
        doc["bohr"]["N_max"] = bohr_N;
      }
      bohr_flags.apply(doc);
      return finish_run(doc, common, out);
    }
    if (*pho) {
      json doc = base_document("photon", common);
      pho_flags.apply(doc);
      return finish_run(doc, common, out);
    }
  } catch (const CflViolation& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const NodeError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitConfig;
}

}  // namespace solitonlab::cli

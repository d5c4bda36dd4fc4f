#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "solitonlab/barrier.hpp"
#include "solitonlab/dichotomy.hpp"
#include "solitonlab/grid.hpp"
#include "solitonlab/madelung.hpp"
#include "solitonlab/wave_solvers.hpp"

namespace solitonlab::cli {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Experiment ids accepted in the "experiment" field.
const std::vector<std::string>& experiment_ids();

/// Full default document for one experiment; every physics parameter is present
/// so the effective config echoes every value used.
json default_config(const std::string& experiment);

json load_config(const std::filesystem::path& path);

/// Applies "a.b.c=value"; value is parsed as JSON when possible, else taken as a string.
void apply_override(json& config, const std::string& assignment);

/// Defaults merged under the user document. Unknown keys are reported by diagnose().
json effective_config(const json& user);

struct PotentialSpec {
  std::string kind = "none";  // none | linear | barrier
  double g = 0.0;
  double V0 = 0.0;
  double start = 0.0;
  double width = 0.0;

  std::vector<double> tabulate(const Grid1D& grid) const;
};

struct EvolveJob {
  Grid1D grid;
  PacketSpec packet;
  SolverConfig solver;
  PotentialSpec potential;
  std::string kg_initial;  // positive-frequency | negative-frequency | at-rest
};

struct MadelungJob {
  Grid1D grid;
  QFreeConfig qfree;
  PotentialSpec potential;
  bool compare_linear;
};

struct DichotomyJob {
  DichotomySettings settings;
};

struct BarrierJob {
  BarrierSpec spec;  // SI
};

struct BohrJob {
  int N_min;
  int N_max;
};

struct KinematicsJob {
  std::vector<double> v_over_c;
  double mass;  // kg
};

struct DispersionJob {
  double omega0;
  double c;
  double V;
  std::vector<double> ck_over_omega0;
};

struct PhotonJob {
  double f;
  double f0;
};

using Job = std::variant<EvolveJob, MadelungJob, DichotomyJob, BarrierJob, BohrJob, KinematicsJob,
                         DispersionJob, PhotonJob>;

struct ParsedConfig {
  std::string experiment;
  std::uint64_t seed = 0;
  json effective;
  Job job;
};

/// Every schema and physics-guard problem, one message each, naming the field.
std::vector<std::string> diagnose(const json& user);

/// Throws ConfigError carrying all diagnostics when the document is not runnable.
ParsedConfig parse_config(const json& user);

/// Energy given as a number of eV or as "<x> mc2" (multiples of the electron rest energy); returns J.
double parse_energy(const json& value, const std::string& field);

/// Velocity given as m/s or "<x>c"; returns m/s.
double parse_velocity(const std::string& text);

}  // namespace solitonlab::cli

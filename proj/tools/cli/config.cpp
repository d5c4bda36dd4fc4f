#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "solitonlab/constants.hpp"
#include "solitonlab/errors.hpp"

namespace solitonlab::cli {

namespace {

json grid_defaults(std::size_t n, double z_min, double z_max) {
  return {{"n", n}, {"z_min", z_min}, {"z_max", z_max}};
}

json potential_defaults() {
  return {{"kind", "none"}, {"g", 0.0}, {"V0", 0.0}, {"start", 0.0}, {"width", 0.0}};
}

json header(const std::string& experiment) {
  return {{"schema_version", kSchemaVersion}, {"experiment", experiment}, {"seed", 0}};
}

// Collects type and range problems while reading a document.
class Reader {
 public:
  Reader(const json& doc, std::vector<std::string>& problems) : doc_(doc), problems_(problems) {}

  const json* at(const std::string& path) const {
    const json* node = &doc_;
    std::size_t start = 0;
    while (start <= path.size()) {
      const auto dot = path.find('.', start);
      const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
      if (!node->is_object() || !node->contains(key)) return nullptr;
      node = &(*node)[key];
      if (dot == std::string::npos) break;
      start = dot + 1;
    }
    return node;
  }

  double number(const std::string& path) {
    const json* v = at(path);
    if (v == nullptr || !v->is_number()) {
      problems_.push_back(path + " must be a number");
      return std::nan("");
    }
    return v->get<double>();
  }

  std::int64_t integer(const std::string& path) {
    const json* v = at(path);
    if (v == nullptr || !(v->is_number_integer() || v->is_number_unsigned())) {
      problems_.push_back(path + " must be an integer");
      return 0;
    }
    return v->get<std::int64_t>();
  }

  std::size_t count(const std::string& path) {
    const auto v = integer(path);
    if (v < 0) {
      problems_.push_back(path + " must be non-negative");
      return 0;
    }
    return static_cast<std::size_t>(v);
  }

  std::string text(const std::string& path) {
    const json* v = at(path);
    if (v == nullptr || !v->is_string()) {
      problems_.push_back(path + " must be a string");
      return {};
    }
    return v->get<std::string>();
  }

  bool flag(const std::string& path) {
    const json* v = at(path);
    if (v == nullptr || !v->is_boolean()) {
      problems_.push_back(path + " must be true or false");
      return false;
    }
    return v->get<bool>();
  }

  std::vector<double> numbers(const std::string& path) {
    const json* v = at(path);
    std::vector<double> out;
    if (v == nullptr || !v->is_array() || v->empty()) {
      problems_.push_back(path + " must be a non-empty array of numbers");
      return out;
    }
    for (const auto& x : *v) {
      if (!x.is_number()) {
        problems_.push_back(path + " must contain only numbers");
        return {};
      }
      out.push_back(x.get<double>());
    }
    return out;
  }

  double energy(const std::string& path) {
    const json* v = at(path);
    if (v == nullptr) {
      problems_.push_back(path + " is required");
      return std::nan("");
    }
    try {
      return parse_energy(*v, path);
    } catch (const ConfigError& e) {
      problems_.emplace_back(e.what());
      return std::nan("");
    }
  }

  void problem(std::string message) { problems_.push_back(std::move(message)); }

 private:
  const json& doc_;
  std::vector<std::string>& problems_;
};

void unknown_keys(const json& user, const json& reference, const std::string& prefix,
                  std::vector<std::string>& problems) {
  if (!user.is_object()) return;
  for (const auto& [key, value] : user.items()) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if (!reference.contains(key)) {
      problems.push_back("unknown field " + path);
      continue;
    }
    const json& ref = reference[key];
    if (ref.is_object()) {
      if (!value.is_object()) {
        problems.push_back(path + " must be an object");
      } else {
        unknown_keys(value, ref, path, problems);
      }
    }
  }
}

std::optional<Grid1D> read_grid(Reader& r, const std::string& prefix = "grid") {
  const auto n = r.count(prefix + ".n");
  const double lo = r.number(prefix + ".z_min");
  const double hi = r.number(prefix + ".z_max");
  try {
    return Grid1D(n, lo, hi);
  } catch (const ConfigError& e) {
    r.problem(prefix + ": " + e.what());
    return std::nullopt;
  }
}

PotentialSpec read_potential(Reader& r) {
  PotentialSpec p;
  p.kind = r.text("potential.kind");
  p.g = r.number("potential.g");
  p.V0 = r.number("potential.V0");
  p.start = r.number("potential.start");
  p.width = r.number("potential.width");
  if (p.kind != "none" && p.kind != "linear" && p.kind != "barrier") {
    r.problem("potential.kind must be none, linear or barrier (got '" + p.kind + "')");
  }
  if (p.kind == "barrier" && !(p.width > 0.0)) r.problem("potential.width must be > 0 for a barrier");
  return p;
}

std::optional<Scheme> scheme_from(const std::string& name) {
  if (name == "linear_schrodinger" || name == "linear") return Scheme::LinearSchrodinger;
  if (name == "nls") return Scheme::NLS;
  if (name == "klein_gordon" || name == "klein-gordon" || name == "kg") return Scheme::KleinGordon;
  return std::nullopt;
}

std::optional<PacketKind> packet_kind_from(const std::string& name) {
  if (name == "breather" || name == "sech") return PacketKind::SechBreather;
  if (name == "gaussian") return PacketKind::Gaussian;
  if (name == "plane" || name == "plane_wave") return PacketKind::PlaneWave;
  return std::nullopt;
}

void append(std::vector<std::string>& to, const std::vector<std::string>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

struct Outcome {
  std::optional<Job> job;
  std::vector<std::string> problems;
};

Outcome read_evolve(const json& doc) {
  Outcome out;
  Reader r(doc, out.problems);
  auto grid = read_grid(r);
  PacketSpec packet;
  const auto kind = r.text("packet.kind");
  if (auto k = packet_kind_from(kind)) {
    packet.kind = *k;
  } else {
    r.problem("packet.kind must be breather, gaussian or plane (got '" + kind + "')");
  }
  packet.amplitude = r.number("packet.amplitude");
  packet.center = r.number("packet.center");
  packet.velocity = r.number("packet.velocity");
  packet.sigma = r.number("packet.sigma");
  packet.k0 = r.number("packet.k0");
  if (const json* s = r.at("packet.sech_scale"); s != nullptr && !s->is_null()) {
    packet.sech_scale = r.number("packet.sech_scale");
  }

  SolverConfig solver;
  const auto scheme = r.text("solver.scheme");
  if (auto s = scheme_from(scheme)) {
    solver.scheme = *s;
  } else {
    r.problem("solver.scheme must be linear_schrodinger, nls or klein_gordon (got '" + scheme + "')");
  }
  solver.dt = r.number("solver.dt");
  solver.t_final = r.number("solver.t_final");
  solver.snapshot_every = r.count("solver.snapshot_every");
  solver.c = r.number("solver.c");
  solver.omega0 = r.number("solver.omega0");
  if (const json* p = r.at("solver.probe_index"); p != nullptr && !p->is_null()) {
    solver.probe_index = r.count("solver.probe_index");
  }
  const auto kg_initial = r.text("solver.kg_initial");
  if (kg_initial != "positive-frequency" && kg_initial != "negative-frequency" &&
      kg_initial != "at-rest") {
    r.problem("solver.kg_initial must be positive-frequency, negative-frequency or at-rest");
  }
  const auto potential = read_potential(r);

  if (!out.problems.empty() || !grid) return out;
  solver.potential = potential.tabulate(*grid);
  if (potential.kind == "none") solver.potential.clear();
  append(out.problems, packet_diagnostics(packet, *grid));
  append(out.problems, solver.diagnostics(*grid));
  out.job = EvolveJob{*grid, packet, solver, potential, kg_initial};
  return out;
}

Outcome read_madelung(const json& doc) {
  Outcome out;
  Reader r(doc, out.problems);
  auto grid = read_grid(r);
  QFreeConfig ek;
  ek.r = r.number("envelope.r");
  ek.a = r.number("envelope.a");
  ek.v_e = r.number("envelope.v_e");
  ek.center = r.number("envelope.center");
  ek.mass = r.number("envelope.mass");
  ek.hbar = r.number("envelope.hbar");
  ek.dt = r.number("solver.dt");
  ek.t_final = r.number("solver.t_final");
  ek.snapshot_every = r.count("solver.snapshot_every");
  const auto potential = read_potential(r);
  const bool compare = r.flag("compare_linear");
  if (!out.problems.empty() || !grid) return out;
  ek.potential = potential.tabulate(*grid);
  if (potential.kind == "none") ek.potential.clear();
  append(out.problems, ek.diagnostics(*grid));
  if (compare && (ek.mass != 1.0 || ek.hbar != 1.0)) {
    out.problems.emplace_back(
        "compare_linear requires envelope.mass = 1 and envelope.hbar = 1 (the linear solver's units)");
  }
  if (compare) {
    SolverConfig linear;
    linear.dt = ek.dt;
    linear.t_final = ek.t_final;
    linear.snapshot_every = ek.snapshot_every;
    linear.potential = ek.potential;
    append(out.problems, linear.diagnostics(*grid));
  }
  out.job = MadelungJob{*grid, ek, potential, compare};
  return out;
}

Outcome read_dichotomy(const json& doc) {
  Outcome out;
  Reader r(doc, out.problems);
  DichotomySettings s;
  s.n = r.count("settings.n");
  s.half_width = r.number("settings.half_width");
  s.amplitude = r.number("settings.amplitude");
  s.sech_scale = r.number("settings.sech_scale");
  s.dt = r.number("settings.dt");
  s.t_final = r.number("settings.t_final");
  s.snapshot_every = r.count("settings.snapshot_every");
  s.tolerance = r.number("settings.tolerance");
  if (!out.problems.empty()) return out;
  if (!(s.tolerance > 0.0)) out.problems.emplace_back("settings.tolerance must be > 0");
  if (!(s.t_final >= 0.0)) out.problems.emplace_back("settings.t_final must be >= 0");
  std::optional<Grid1D> grid;
  try {
    grid.emplace(s.n, -s.half_width, s.half_width);
  } catch (const ConfigError& e) {
    out.problems.push_back(std::string("settings: ") + e.what());
  }
  if (grid) {
    PacketSpec packet;
    packet.amplitude = s.amplitude;
    packet.sech_scale = s.sech_scale;
    append(out.problems, packet_diagnostics(packet, *grid));
    if (s.t_final > 0.0) {
      SolverConfig solver;
      solver.dt = s.dt;
      solver.t_final = s.t_final;
      append(out.problems, solver.diagnostics(*grid));
    }
  }
  out.job = DichotomyJob{s};
  return out;
}

Outcome read_barrier(const json& doc) {
  Outcome out;
  Reader r(doc, out.problems);
  BarrierSpec spec{};
  spec.V0 = r.energy("barrier.V0_eV");
  spec.E = r.energy("barrier.E_eV");
  spec.L = r.number("barrier.L_m");
  const auto trials = r.integer("barrier.trials");
  spec.trials = trials > 0 ? static_cast<std::uint64_t>(trials) : 0;
  spec.gap_offset = r.number("barrier.gap_offset");
  const auto seed = r.integer("seed");
  spec.seed = static_cast<std::uint64_t>(seed);
  if (!out.problems.empty()) return out;
  for (auto& p : spec.diagnostics()) out.problems.push_back(std::move(p));
  out.job = BarrierJob{spec};
  return out;
}

Outcome read_bohr(const json& doc) {
  Outcome out;
  Reader r(doc, out.problems);
  const auto lo = r.integer("bohr.N_min");
  const auto hi = r.integer("bohr.N_max");
  if (!out.problems.empty()) return out;
  if (lo < 1) out.problems.emplace_back("bohr.N_min must be >= 1");
  if (hi < lo) out.problems.emplace_back("bohr.N_max must be >= bohr.N_min");
  out.job = BohrJob{static_cast<int>(lo), static_cast<int>(hi)};
  return out;
}

Outcome read_kinematics(const json& doc) {
  Outcome out;
  Reader r(doc, out.problems);
  const auto v = r.numbers("kinematics.v_over_c");
  const double mass = r.number("kinematics.mass_kg");
  if (!out.problems.empty()) return out;
  for (double b : v) {
    if (!(b >= 0.0 && b < 1.0)) {
      std::ostringstream msg;
      msg << "kinematics.v_over_c entries must lie in [0, 1) (got " << b << ")";
      out.problems.push_back(msg.str());
    }
  }
  if (!(mass > 0.0)) out.problems.emplace_back("kinematics.mass_kg must be > 0");
  out.job = KinematicsJob{v, mass};
  return out;
}

Outcome read_dispersion(const json& doc) {
  Outcome out;
  Reader r(doc, out.problems);
  DispersionJob job{};
  job.omega0 = r.number("dispersion.omega0");
  job.c = r.number("dispersion.c");
  job.V = r.number("dispersion.V");
  job.ck_over_omega0 = r.numbers("dispersion.ck_over_omega0");
  if (!out.problems.empty()) return out;
  if (!(job.omega0 > 0.0)) out.problems.emplace_back("dispersion.omega0 must be > 0");
  if (!(job.c > 0.0)) out.problems.emplace_back("dispersion.c must be > 0");
  out.job = job;
  return out;
}

Outcome read_photon(const json& doc) {
  Outcome out;
  Reader r(doc, out.problems);
  PhotonJob job{r.number("photon.f_Hz"), r.number("photon.f0_Hz")};
  if (!out.problems.empty()) return out;
  if (!(job.f > 0.0)) out.problems.emplace_back("photon.f_Hz must be > 0");
  if (!(job.f0 > 0.0)) out.problems.emplace_back("photon.f0_Hz must be > 0");
  out.job = job;
  return out;
}

Outcome read_job(const std::string& experiment, const json& doc) {
  if (experiment == "evolve") return read_evolve(doc);
  if (experiment == "madelung") return read_madelung(doc);
  if (experiment == "soliton-vs-dispersion") return read_dichotomy(doc);
  if (experiment == "barrier") return read_barrier(doc);
  if (experiment == "bohr") return read_bohr(doc);
  if (experiment == "kinematics") return read_kinematics(doc);
  if (experiment == "dispersion") return read_dispersion(doc);
  return read_photon(doc);
}

std::string experiment_of(const json& user, std::vector<std::string>& problems) {
  if (!user.is_object()) {
    problems.emplace_back("config must be a JSON object");
    return {};
  }
  if (!user.contains("experiment") || !user["experiment"].is_string()) {
    problems.emplace_back("experiment is required (a string)");
    return {};
  }
  auto id = user["experiment"].get<std::string>();
  const auto& ids = experiment_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
    std::string known;
    for (const auto& k : ids) known += (known.empty() ? "" : ", ") + k;
    problems.push_back("unknown experiment '" + id + "' (expected one of " + known + ")");
    return {};
  }
  return id;
}

struct Checked {
  std::string experiment;
  json effective;
  Outcome outcome;
};

Checked check(const json& user) {
  Checked c;
  c.experiment = experiment_of(user, c.outcome.problems);
  if (c.experiment.empty()) return c;
  unknown_keys(user, default_config(c.experiment), "", c.outcome.problems);
  if (user.contains("schema_version") && user["schema_version"] != kSchemaVersion) {
    c.outcome.problems.push_back("schema_version must be " + std::to_string(kSchemaVersion));
  }
  if (!c.outcome.problems.empty()) return c;
  c.effective = effective_config(user);
  const json& seed = c.effective["seed"];
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
    c.outcome.problems.emplace_back("seed must be a non-negative integer");
    return c;
  }
  c.outcome = read_job(c.experiment, c.effective);
  return c;
}

}  // namespace

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids{"evolve", "madelung", "soliton-vs-dispersion",
                                            "barrier", "bohr", "kinematics", "dispersion", "photon"};
  return ids;
}

json default_config(const std::string& experiment) {
  json doc = header(experiment);
  if (experiment == "evolve") {
    doc["grid"] = grid_defaults(512, -20.48, 20.48);
    doc["packet"] = {{"kind", "breather"}, {"amplitude", 1.0}, {"center", 0.0}, {"velocity", 0.0},
                     {"sigma", 1.0},       {"k0", 0.0},        {"sech_scale", nullptr}};
    doc["solver"] = {{"scheme", "linear_schrodinger"},
                     {"dt", 1e-3},
                     {"t_final", 1.0},
                     {"snapshot_every", 0},
                     {"c", 1.0},
                     {"omega0", 1.0},
                     {"kg_initial", "positive-frequency"},
                     {"probe_index", nullptr}};
    doc["potential"] = potential_defaults();
  } else if (experiment == "madelung") {
    doc["grid"] = grid_defaults(1024, -40.0, 40.0);
    doc["envelope"] = {{"r", 1.0},      {"a", 1.0},    {"v_e", 0.0},
                       {"center", 0.0}, {"mass", 1.0}, {"hbar", 1.0}};
    doc["solver"] = {{"dt", 1e-2}, {"t_final", 5.0}, {"snapshot_every", 50}};
    doc["potential"] = potential_defaults();
    doc["compare_linear"] = false;
  } else if (experiment == "soliton-vs-dispersion") {
    const DichotomySettings s;
    doc["settings"] = {{"n", s.n},
                       {"half_width", s.half_width},
                       {"amplitude", s.amplitude},
                       {"sech_scale", s.sech_scale},
                       {"dt", s.dt},
                       {"t_final", s.t_final},
                       {"snapshot_every", s.snapshot_every},
                       {"tolerance", s.tolerance}};
  } else if (experiment == "barrier") {
    doc["barrier"] = {{"V0_eV", "0.25 mc2"},
                      {"E_eV", "0.5 mc2"},
                      {"L_m", 1e-12},
                      {"trials", 100000},
                      {"gap_offset", 0.0}};
  } else if (experiment == "bohr") {
    doc["bohr"] = {{"N_min", 1}, {"N_max", 1}};
  } else if (experiment == "kinematics") {
    doc["kinematics"] = {{"v_over_c", json::array({0.6})}, {"mass_kg", electron_constants().m0}};
  } else if (experiment == "dispersion") {
    doc["dispersion"] = {{"omega0", 1.0},
                         {"c", 1.0},
                         {"V", 0.0},
                         {"ck_over_omega0", json::array({0.0, 0.25, 0.75, 2.0})}};
  } else if (experiment == "photon") {
    const auto k = electron_constants();
    const double f0 = k.m0 * k.c * k.c / k.h;
    doc["photon"] = {{"f_Hz", f0}, {"f0_Hz", f0}};
  } else {
    throw ConfigError("unknown experiment '" + experiment + "'");
  }
  return doc;
}

json load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
}

void apply_override(json& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override '" + assignment + "' must look like path.to.field=value");
  }
  const std::string path = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  json value = json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;

  json* node = &config;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (key.empty()) throw ConfigError("override path '" + path + "' has an empty component");
    if (!node->is_object() && !node->is_null()) {
      throw ConfigError("override path '" + path + "' descends into a non-object");
    }
    if (dot == std::string::npos) {
      (*node)[key] = std::move(value);
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

json effective_config(const json& user) {
  const auto experiment = user.at("experiment").get<std::string>();
  json doc = default_config(experiment);
  doc.merge_patch(user);
  // merge_patch treats null as deletion; restore optional fields explicitly.
  const json defaults = default_config(experiment);
  for (const auto& [section, fields] : defaults.items()) {
    if (!doc.contains(section)) doc[section] = fields;
    if (!fields.is_object() || !doc[section].is_object()) continue;
    for (const auto& [key, value] : fields.items()) {
      if (!doc[section].contains(key)) doc[section][key] = value;
    }
  }
  doc["schema_version"] = kSchemaVersion;
  if (experiment == "evolve" && doc["packet"]["sech_scale"].is_null() &&
      doc["packet"]["amplitude"].is_number()) {
    doc["packet"]["sech_scale"] = doc["packet"]["amplitude"];
  }
  return doc;
}

std::vector<std::string> diagnose(const json& user) { return check(user).outcome.problems; }

ParsedConfig parse_config(const json& user) {
  auto c = check(user);
  if (!c.outcome.problems.empty() || !c.outcome.job) {
    std::string message;
    for (const auto& p : c.outcome.problems) message += (message.empty() ? "" : "; ") + p;
    throw ConfigError(message.empty() ? "config is not runnable" : message);
  }
  return {c.experiment, c.effective["seed"].get<std::uint64_t>(), c.effective, *c.outcome.job};
}

double parse_energy(const json& value, const std::string& field) {
  if (value.is_number()) return value.get<double>() * electron_constants().eV;
  if (value.is_string()) {
    const auto text = value.get<std::string>();
    std::istringstream in(text);
    double x = 0.0;
    std::string unit;
    if (in >> x >> unit && unit == "mc2" && in.peek() == std::char_traits<char>::eof()) {
      const auto k = electron_constants();
      return x * k.m0 * k.c * k.c;
    }
  }
  throw ConfigError(field + " must be a number of eV or a string like \"0.25 mc2\"");
}

double parse_velocity(const std::string& text) {
  const auto k = electron_constants();
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("velocity '" + text + "' is not a number");
  }
  const std::string rest = text.substr(used);
  if (rest.empty()) return x;
  if (rest == "c") return x * k.c;
  throw ConfigError("velocity '" + text + "' must be m/s or a multiple of c such as 0.6c");
}

std::vector<double> PotentialSpec::tabulate(const Grid1D& grid) const {
  std::vector<double> V(grid.n(), 0.0);
  for (std::size_t j = 0; j < grid.n(); ++j) {
    const double z = grid.z(j);
    if (kind == "linear") {
      V[j] = g * z;
    } else if (kind == "barrier") {
      V[j] = (z > start && z < start + width) ? V0 : 0.0;
    }
  }
  return V;
}

}  // namespace solitonlab::cli

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "solitonlab/barrier.hpp"
#include "solitonlab/bohr.hpp"
#include "solitonlab/dichotomy.hpp"
#include "solitonlab/kinematics.hpp"
#include "solitonlab/run_report.hpp"

namespace solitonlab {

/// Shortest round-trip decimal form, so equal doubles always serialize identically.
std::string format_double(double x);

/// CSV with columns z,re,im,abs2 (and R,S,Q for polar snapshots); the first
/// lines are '#' comments carrying time and grid metadata.
std::string snapshot_csv_text(const Snapshot& snapshot);
void write_snapshot_csv(const std::filesystem::path& path, const Snapshot& snapshot);

/// Writes every snapshot as <dir>/<prefix>_<index>.csv; returns the paths in order.
std::vector<std::filesystem::path> write_snapshots(const std::filesystem::path& dir,
                                                   const std::string& prefix,
                                                   const RunReport& report);

nlohmann::json to_json(const Observables& obs);
nlohmann::json to_json(const RunReport& report);  // summary; no field data
nlohmann::json to_json(const KinematicState& s);
nlohmann::json to_json(const MonteCarloReport& r);
nlohmann::json to_json(const BohrOrbit& o);
nlohmann::json to_json(const PhaseAccordance& p);
nlohmann::json to_json(const DichotomyReport& r);

}  // namespace solitonlab

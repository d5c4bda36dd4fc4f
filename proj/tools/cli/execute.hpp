#pragma once

#include <filesystem>
#include <optional>
#include <ostream>

#include <json.hpp>

#include "config.hpp"

namespace solitonlab::cli {

struct ExecOptions {
  std::optional<std::filesystem::path> out_dir;  // no files written when empty
  int parallel_trials = 1;                       // Monte Carlo only; never changes results
};

/// Report document: schema version, effective config, results. Deterministic.
/// csv_files, when given, collects (relative path, content) of the CSV outputs.
nlohmann::json build_report(const ParsedConfig& config, const ExecOptions& options,
                            std::vector<std::pair<std::string, std::string>>* csv_files,
                            std::ostream& out);

/// Runs the experiment, prints a summary to `out`, writes report.json, its
/// timestamped copy, CSV data and manifest.json when an output directory is
/// set. Returns the manifest (or the report when nothing is written).
nlohmann::json execute(const ParsedConfig& config, const ExecOptions& options, std::ostream& out);

}  // namespace solitonlab::cli

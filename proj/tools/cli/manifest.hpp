#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace solitonlab::cli {

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

/// 2026-10-16T09:30:00Z
std::string utc_iso8601(std::chrono::system_clock::time_point t);
/// 20261016T093000Z, for file names
std::string utc_compact(std::chrono::system_clock::time_point t);

/// Canonical serialization used for the config digest: sorted keys, no whitespace.
std::string canonical(const nlohmann::json& doc);

struct OutputFile {
  std::filesystem::path relative;
  std::string sha256;
};

struct RunManifest {
  std::string version;
  std::string experiment;
  std::uint64_t seed;
  std::string config_digest;
  std::string started_utc;
  std::string finished_utc;
  std::vector<OutputFile> outputs;

  nlohmann::json to_json() const;
};

const char* tool_version();

}  // namespace solitonlab::cli

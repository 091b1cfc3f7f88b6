#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

namespace sclab::cli {

inline constexpr const char* kToolVersion = "semicircle-lab 0.1.0";

/// Reproducibility record for one CLI run. `config_echo` holds the fully
/// resolved configuration and is sufficient to replay the run bit-exactly.
struct RunManifest {
  std::string command;
  nlohmann::json config_echo;
  std::uint64_t base_seed = 0;
  std::string started_at;
  std::string finished_at;
  std::string tool_version = kToolVersion;
  std::size_t record_count = 0;
};

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);
RunManifest read_manifest(const std::filesystem::path& path);

std::string iso8601_utc_now();

}  // namespace sclab::cli

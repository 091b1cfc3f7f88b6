#include "sclab/manifest.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

#include "sclab/errors.hpp"

namespace sclab::cli {

std::string iso8601_utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
  nlohmann::json j;
  j["command"] = manifest.command;
  j["config_echo"] = manifest.config_echo;
  j["base_seed"] = manifest.base_seed;
  j["started_at"] = manifest.started_at;
  j["finished_at"] = manifest.finished_at;
  j["tool_version"] = manifest.tool_version;
  j["record_count"] = manifest.record_count;

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  out << j.dump(2) << '\n';
  if (!out) {
    throw std::runtime_error("write failed for '" + path.string() + "'");
  }
}

RunManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError("cannot open manifest '" + path.string() + "'");
  }
  nlohmann::json j;
  in >> j;
  RunManifest manifest;
  manifest.command = j.at("command").get<std::string>();
  manifest.config_echo = j.at("config_echo");
  manifest.base_seed = j.at("base_seed").get<std::uint64_t>();
  manifest.started_at = j.at("started_at").get<std::string>();
  manifest.finished_at = j.at("finished_at").get<std::string>();
  manifest.tool_version = j.at("tool_version").get<std::string>();
  manifest.record_count = j.at("record_count").get<std::size_t>();
  return manifest;
}

}  // namespace sclab::cli

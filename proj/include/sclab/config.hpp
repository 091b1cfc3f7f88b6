#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sclab/errors.hpp"

namespace sclab::cli {

/// Flat `key = value` config file with `#` comments. Unknown keys are a
/// validation error, never silently ignored.
class ConfigFile {
 public:
  static ConfigFile parse_file(const std::filesystem::path& path);
  static ConfigFile parse_text(const std::string& text, const std::string& origin = "<config>");

  void reject_unknown_keys(const std::set<std::string>& known) const;

  bool has(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  long get_long(const std::string& key, long fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::vector<long> get_long_list(const std::string& key, const std::vector<long>& fallback) const;
  std::vector<double> get_double_list(const std::string& key,
                                      const std::vector<double>& fallback) const;

  /// Keys that must be present; the first missing one is named in the error.
  void require_keys(const std::vector<std::string>& keys) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
  std::string origin_;
};

std::vector<std::string> split_list(const std::string& text);

}  // namespace sclab::cli

#include "sclab/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace sclab::cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0;
  while (a < s.size() && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  std::size_t b = s.size();
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const std::string t = trim(item);
    if (!t.empty()) {
      parts.push_back(t);
    }
  }
  return parts;
}

ConfigFile ConfigFile::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open config file '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_text(buffer.str(), path.string());
}

ConfigFile ConfigFile::parse_text(const std::string& text, const std::string& origin) {
  ConfigFile config;
  config.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    const std::string stripped = trim(line);
    if (stripped.empty()) {
      continue;
    }
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(origin + ":" + std::to_string(line_no) +
                            ": expected 'key = value', got '" + stripped + "'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw ValidationError(origin + ":" + std::to_string(line_no) + ": empty key");
    }
    if (config.values_.count(key) != 0) {
      throw ValidationError(origin + ":" + std::to_string(line_no) + ": duplicate key '" + key +
                            "'");
    }
    config.values_[key] = value;
  }
  return config;
}

void ConfigFile::reject_unknown_keys(const std::set<std::string>& known) const {
  for (const auto& [key, value] : values_) {
    if (known.count(key) == 0) {
      throw ValidationError(origin_ + ": unknown key '" + key + "'");
    }
  }
}

bool ConfigFile::has(const std::string& key) const { return values_.count(key) != 0; }

void ConfigFile::require_keys(const std::vector<std::string>& keys) const {
  for (const auto& key : keys) {
    if (!has(key)) {
      throw ValidationError(origin_ + ": missing key '" + key + "'");
    }
  }
}

std::string ConfigFile::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

namespace {

long parse_long(const std::string& key, const std::string& text) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("key '" + key + "': expected an integer, got '" + text + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("key '" + key + "': expected an unsigned integer, got '" + text + "'");
  }
}

double parse_double(const std::string& key, const std::string& text) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("key '" + key + "': expected a number, got '" + text + "'");
  }
}

}  // namespace

long ConfigFile::get_long(const std::string& key, long fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_long(key, it->second);
}

std::uint64_t ConfigFile::get_u64(const std::string& key, std::uint64_t fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_u64(key, it->second);
}

double ConfigFile::get_double(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_double(key, it->second);
}

std::vector<long> ConfigFile::get_long_list(const std::string& key,
                                            const std::vector<long>& fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<long> out;
  for (const auto& item : split_list(it->second)) {
    out.push_back(parse_long(key, item));
  }
  if (out.empty()) {
    throw ValidationError("key '" + key + "': empty list");
  }
  return out;
}

std::vector<double> ConfigFile::get_double_list(const std::string& key,
                                                const std::vector<double>& fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<double> out;
  for (const auto& item : split_list(it->second)) {
    out.push_back(parse_double(key, item));
  }
  if (out.empty()) {
    throw ValidationError("key '" + key + "': empty list");
  }
  return out;
}

}  // namespace sclab::cli

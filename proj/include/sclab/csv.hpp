#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sclab/experiments.hpp"

namespace sclab::cli {

/// Shortest representation with 17 significant digits (round-trips doubles).
std::string format_double(double value);

/// A generic CSV table; fields containing separators are quoted.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_table_csv(const Table& table, const std::filesystem::path& path);

/// The pinned scan schema:
/// N,E,eta,sample,abs_lambda,im_lambda,lambda_min,lambda_max,counting_stat,rigidity_stat
Table scan_table(const std::vector<experiments::SampleRecord>& records);

}  // namespace sclab::cli

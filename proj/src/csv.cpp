#include "sclab/csv.hpp"

#include <cstdio>
#include <fstream>

#include "sclab/errors.hpp"

namespace sclab::cli {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

bool needs_quoting(const std::string& field) {
  return field.find_first_of(",\"\n") != std::string::npos;
}

std::string quoted(const std::string& field) {
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_row(std::ofstream& out, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i > 0) out << ',';
    out << (needs_quoting(row[i]) ? quoted(row[i]) : row[i]);
  }
  out << '\n';
}

}  // namespace

void write_table_csv(const Table& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF on every platform
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  write_row(out, table.header);
  for (const auto& row : table.rows) {
    write_row(out, row);
  }
  if (!out) {
    throw std::runtime_error("write failed for '" + path.string() + "'");
  }
}

Table scan_table(const std::vector<experiments::SampleRecord>& records) {
  Table table;
  table.header = {"N",          "E",          "eta",           "sample",
                  "abs_lambda", "im_lambda",  "lambda_min",    "lambda_max",
                  "counting_stat", "rigidity_stat"};
  table.rows.reserve(records.size());
  for (const auto& r : records) {
    table.rows.push_back({std::to_string(r.N), format_double(r.E), format_double(r.eta),
                          std::to_string(r.sample_index), format_double(r.abs_lambda),
                          format_double(r.im_lambda), format_double(r.lambda_min),
                          format_double(r.lambda_max), format_double(r.counting_stat),
                          format_double(r.rigidity_stat)});
  }
  return table;
}

}  // namespace sclab::cli

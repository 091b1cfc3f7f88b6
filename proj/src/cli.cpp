#include "sclab/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "sclab/config.hpp"
#include "sclab/csv.hpp"
#include "sclab/ensemble.hpp"
#include "sclab/errors.hpp"
#include "sclab/expansion.hpp"
#include "sclab/experiments.hpp"
#include "sclab/manifest.hpp"
#include "sclab/rng.hpp"
#include "sclab/semicircle.hpp"
#include "sclab/spectral.hpp"

namespace sclab::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct GlobalOptions {
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out_dir;
  std::string config_path;
  int threads = 1;
};

struct CommandOutput {
  Table table;
  json echo;
  std::uint64_t base_seed = 0;
};

ConfigFile load_config(const GlobalOptions& global) {
  if (global.config_path.empty()) {
    return ConfigFile::parse_text("", "<none>");
  }
  return ConfigFile::parse_file(global.config_path);
}

std::uint64_t resolve_seed(const GlobalOptions& global, const ConfigFile& config) {
  // The flag wins over the config file.
  if (global.seed_given) {
    return global.seed;
  }
  return config.get_u64("seed", 0);
}

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n == 0) return 0.0;
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::string fmt12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

CommandOutput cmd_msc(double E, double eta, std::ostream& out) {
  const semicircle::SpectralPoint z(E, eta);
  const auto m = semicircle::msc(z);
  out << "m_sc_re = " << fmt12(m.real()) << '\n';
  out << "m_sc_im = " << fmt12(m.imag()) << '\n';

  CommandOutput result;
  result.table.header = {"E", "eta", "re_msc", "im_msc"};
  result.table.rows.push_back(
      {format_double(E), format_double(eta), format_double(m.real()), format_double(m.imag())});
  result.echo = {{"subcommand", "msc"}, {"E", E}, {"eta", eta}};
  return result;
}

CommandOutput cmd_identities(const GlobalOptions& global, std::ostream& out) {
  const ConfigFile config = load_config(global);
  config.reject_unknown_keys(
      {"instances", "N_min", "N_max", "eta_min", "eta_max", "E_max", "distribution", "seed"});
  const long instances = config.get_long("instances", 100);
  const long N_min = config.get_long("N_min", 4);
  const long N_max = config.get_long("N_max", 12);
  const double eta_min = config.get_double("eta_min", 0.1);
  const double eta_max = config.get_double("eta_max", 1.0);
  const double E_max = config.get_double("E_max", 3.0);
  const auto distribution =
      ensemble::distribution_from_string(config.get_string("distribution", "gaussian"));
  const std::uint64_t seed = resolve_seed(global, config);

  if (instances < 1 || N_min < 3 || N_max < N_min || !(eta_min > 0.0) || eta_max < eta_min) {
    throw ValidationError("identities: invalid parameter ranges");
  }

  CommandOutput result;
  result.base_seed = seed;
  result.table.header = {"instance",   "N",          "E",
                         "eta",        "schur_diag", "minor_diag",
                         "offdiag_family", "reciprocal", "offdiag_schur",
                         "ward",       "max_residual"};

  double worst = 0.0;
  SplitMix64 rng(derive_seed(seed, 0x1D));
  for (long i = 0; i < instances; ++i) {
    const long N = N_min + static_cast<long>(rng.next() % static_cast<std::uint64_t>(N_max - N_min + 1));
    const double E = (2.0 * rng.uniform01() - 1.0) * E_max;
    const double eta = eta_min + rng.uniform01() * (eta_max - eta_min);

    ensemble::WignerSpec spec;
    spec.N = N;
    spec.distribution = distribution;
    spec.seed = derive_seed(seed, 0x2D, static_cast<std::uint64_t>(i));
    const auto H = ensemble::sample_wigner(spec);
    const auto report = spectral::identity_suite(H, semicircle::SpectralPoint(E, eta));
    worst = std::max(worst, report.max_residual);

    result.table.rows.push_back(
        {std::to_string(i), std::to_string(N), format_double(E), format_double(eta),
         format_double(report.schur_diag), format_double(report.minor_diag),
         format_double(report.offdiag_family), format_double(report.reciprocal),
         format_double(report.offdiag_schur), format_double(report.ward),
         format_double(report.max_residual)});
  }
  out << "instances = " << instances << '\n';
  out << "max_residual = " << format_double(worst) << '\n';

  result.echo = {{"subcommand", "identities"}, {"instances", instances}, {"N_min", N_min},
                 {"N_max", N_max},             {"eta_min", eta_min},     {"eta_max", eta_max},
                 {"E_max", E_max},             {"distribution", ensemble::to_string(distribution)},
                 {"seed", seed}};
  return result;
}

CommandOutput cmd_expand(const std::string& type, int k, const std::string& lone_text, int q,
                         bool dump, std::ostream& out) {
  expansion::ExpansionConfig config;
  if (type == "A") {
    config.initial = expansion::InitialKind::AType;
  } else if (type == "B") {
    config.initial = expansion::InitialKind::BType;
  } else {
    throw ValidationError("expand: --type must be A or B");
  }
  config.k = k;
  config.q = q;
  for (const auto& item : split_list(lone_text)) {
    try {
      config.lone_coords.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ValidationError("expand: bad lone coordinate '" + item + "'");
    }
  }

  const auto terms = expansion::expand(config);
  if (dump) {
    out << expansion::dump_terms(terms);
  } else {
    out << "terms = " << terms.size() << '\n';
  }

  CommandOutput result;
  result.table.header = {"term", "sigma", "sign", "gamma", "delta", "ones", "factors"};
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto stats = expansion::structural_stats(terms[i]);
    std::string factors;
    for (std::size_t f = 0; f < terms[i].monomial.factors.size(); ++f) {
      if (f > 0) factors += ' ';
      factors += expansion::format_factor(terms[i].monomial.factors[f]);
    }
    result.table.rows.push_back({std::to_string(i), terms[i].sigma,
                                 terms[i].monomial.sign > 0 ? "+1" : "-1",
                                 std::to_string(stats.gamma), std::to_string(stats.delta),
                                 std::to_string(stats.ones), factors});
  }
  result.echo = {{"subcommand", "expand"}, {"type", type},       {"k", k},
                 {"lone", config.lone_coords},                   {"q", q},
                 {"dump", dump}};
  return result;
}

CommandOutput cmd_scan(const GlobalOptions& global, std::ostream& out) {
  if (global.config_path.empty()) {
    throw ValidationError("scan: missing required key 'config' (pass --config FILE)");
  }
  const ConfigFile config = load_config(global);
  config.reject_unknown_keys({"N_list", "eta_list", "E_list", "samples", "distribution", "seed"});
  config.require_keys({"N_list", "eta_list", "samples"});

  experiments::ScanConfig scan;
  scan.N_list = config.get_long_list("N_list", {});
  scan.eta_list = config.get_double_list("eta_list", {});
  // Default energy grid: the bulk window |E| <= 1.5 (kappa = 0.5).
  scan.E_list = config.get_double_list("E_list", {-1.5, -0.75, 0.0, 0.75, 1.5});
  scan.samples = config.get_long("samples", 0);
  scan.distribution =
      ensemble::distribution_from_string(config.get_string("distribution", "gaussian"));
  scan.base_seed = resolve_seed(global, config);

  std::sort(scan.N_list.begin(), scan.N_list.end());
  scan.N_list.erase(std::unique(scan.N_list.begin(), scan.N_list.end()), scan.N_list.end());

  const auto records = experiments::fluctuation_scan(scan, global.threads);
  out << "records = " << records.size() << '\n';

  CommandOutput result;
  result.base_seed = scan.base_seed;
  result.table = scan_table(records);
  result.echo = {{"subcommand", "scan"},
                 {"N_list", scan.N_list},
                 {"eta_list", scan.eta_list},
                 {"E_list", scan.E_list},
                 {"samples", scan.samples},
                 {"distribution", ensemble::to_string(scan.distribution)},
                 {"seed", scan.base_seed},
                 {"threads", global.threads}};
  return result;
}

struct StudyParams {
  std::vector<long> N_list;
  long samples = 0;
  ensemble::EntryDistribution distribution = ensemble::EntryDistribution::Gaussian;
  std::uint64_t seed = 0;
};

StudyParams study_params(const GlobalOptions& global, const std::vector<long>& default_N,
                         long default_samples) {
  const ConfigFile config = load_config(global);
  config.reject_unknown_keys({"N_list", "samples", "distribution", "seed"});
  StudyParams params;
  params.N_list = config.get_long_list("N_list", default_N);
  params.samples = config.get_long("samples", default_samples);
  params.distribution =
      ensemble::distribution_from_string(config.get_string("distribution", "gaussian"));
  params.seed = resolve_seed(global, config);
  std::sort(params.N_list.begin(), params.N_list.end());
  params.N_list.erase(std::unique(params.N_list.begin(), params.N_list.end()),
                      params.N_list.end());
  return params;
}

json study_echo(const char* name, const StudyParams& params, int threads) {
  return {{"subcommand", name},
          {"N_list", params.N_list},
          {"samples", params.samples},
          {"distribution", ensemble::to_string(params.distribution)},
          {"seed", params.seed},
          {"threads", threads}};
}

CommandOutput cmd_counting(const GlobalOptions& global, std::ostream& out) {
  const StudyParams params = study_params(global, {250, 500, 1000}, 50);
  const auto records = experiments::spectrum_scan(params.N_list, params.samples,
                                                  params.distribution, params.seed,
                                                  global.threads);

  CommandOutput result;
  result.base_seed = params.seed;
  result.table.header = {"N", "sample", "counting_stat", "normalized_counting"};
  std::map<long, std::vector<double>> normalized;
  for (const auto& r : records) {
    const double norm =
        r.counting_stat * static_cast<double>(r.N) / std::log(static_cast<double>(r.N));
    normalized[r.N].push_back(norm);
    result.table.rows.push_back({std::to_string(r.N), std::to_string(r.sample_index),
                                 format_double(r.counting_stat), format_double(norm)});
  }
  for (const auto& [N, values] : normalized) {
    out << "N = " << N << "  median(N*sup|n - n_sc|/log N) = " << fmt12(median_of(values))
        << "  (" << values.size() << " samples)\n";
  }
  result.echo = study_echo("counting", params, global.threads);
  return result;
}

CommandOutput cmd_rigidity(const GlobalOptions& global, std::ostream& out) {
  const StudyParams params = study_params(global, {250, 500, 1000}, 50);
  const auto records = experiments::spectrum_scan(params.N_list, params.samples,
                                                  params.distribution, params.seed,
                                                  global.threads);

  CommandOutput result;
  result.base_seed = params.seed;
  // Both normalizations: the (log N)/N statistic and the sqrt(log N)/N one
  // the eigenvalues are expected to fluctuate on.
  result.table.header = {"N", "sample", "rigidity_stat", "rigidity_stat_sqrtlog"};
  std::map<long, std::vector<double>> stats;
  for (const auto& r : records) {
    const double sqrtlog = r.rigidity_stat * std::sqrt(std::log(static_cast<double>(r.N)));
    stats[r.N].push_back(r.rigidity_stat);
    result.table.rows.push_back({std::to_string(r.N), std::to_string(r.sample_index),
                                 format_double(r.rigidity_stat), format_double(sqrtlog)});
  }
  for (const auto& [N, values] : stats) {
    out << "N = " << N << "  median(rigidity) = " << fmt12(median_of(values)) << "  ("
        << values.size() << " samples)\n";
  }
  result.echo = study_echo("rigidity", params, global.threads);
  return result;
}

CommandOutput cmd_edge(const GlobalOptions& global, std::ostream& out) {
  const StudyParams params = study_params(global, {125, 250, 500, 1000}, 200);
  const auto records = experiments::spectrum_scan(params.N_list, params.samples,
                                                  params.distribution, params.seed,
                                                  global.threads);
  const auto fit = experiments::edge_statistic(records);
  out << "slope = " << fmt12(fit.slope) << '\n';
  out << "r_squared = " << fmt12(fit.r_squared) << '\n';
  out << "samples_per_N = " << params.samples << '\n';

  CommandOutput result;
  result.base_seed = params.seed;
  result.table.header = {"N", "sample", "lambda_min", "lambda_max"};
  for (const auto& r : records) {
    result.table.rows.push_back({std::to_string(r.N), std::to_string(r.sample_index),
                                 format_double(r.lambda_min), format_double(r.lambda_max)});
  }
  result.echo = study_echo("edge", params, global.threads);
  return result;
}

CommandOutput cmd_hw(const GlobalOptions& global, std::ostream& out) {
  const ConfigFile config = load_config(global);
  config.reject_unknown_keys({"N", "matrix", "deltas", "samples", "seed"});
  const long N = config.get_long("N", 200);
  const std::string matrix = config.get_string("matrix", "identity");
  const auto deltas = config.get_double_list("deltas", {1.0, 2.0, 4.0});
  const long samples = config.get_long("samples", 10000);
  const std::uint64_t seed = resolve_seed(global, config);

  experiments::QuadraticFormKind kind;
  if (matrix == "identity") {
    kind = experiments::QuadraticFormKind::Identity;
  } else if (matrix == "random_resolvent") {
    kind = experiments::QuadraticFormKind::RandomResolvent;
  } else {
    throw ValidationError("hw: matrix must be identity or random_resolvent");
  }

  const auto tails = experiments::hanson_wright_tail(N, kind, deltas, samples, seed);

  CommandOutput result;
  result.base_seed = seed;
  result.table.header = {"delta", "exceed_count", "samples", "tail"};
  for (const auto& t : tails) {
    out << "delta = " << fmt12(t.delta) << "  tail = " << fmt12(t.tail) << "  (" << t.exceed_count
        << '/' << t.samples << ")\n";
    result.table.rows.push_back({format_double(t.delta), std::to_string(t.exceed_count),
                                 std::to_string(t.samples), format_double(t.tail)});
  }
  result.echo = {{"subcommand", "hw"}, {"N", N},           {"matrix", matrix},
                 {"deltas", deltas},   {"samples", samples}, {"seed", seed}};
  return result;
}

fs::path resolve_out_dir(const GlobalOptions& global) {
  if (!global.out_dir.empty()) {
    return global.out_dir;
  }
  if (const char* env = std::getenv("SEMICIRCLE_LAB_OUT"); env != nullptr && *env != '\0') {
    return env;
  }
  return ".";
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wigner matrix / semicircle law numerics laboratory"};
  app.name("semicircle_lab");
  app.require_subcommand(1);

  GlobalOptions global;
  auto* seed_opt = app.add_option("--seed", global.seed, "Base seed (overrides the config file)");
  app.add_option("--out-dir", global.out_dir,
                 "Output directory (default: $SEMICIRCLE_LAB_OUT or '.')");
  app.add_option("--config", global.config_path, "Flat key = value config file");
  app.add_option("--threads", global.threads, "Worker threads; never changes results")
      ->check(CLI::PositiveNumber);

  double msc_E = 0.0;
  double msc_eta = 0.0;
  auto* sub_msc = app.add_subcommand("msc", "Evaluate the semicircle Stieltjes transform");
  sub_msc->add_option("--E", msc_E, "Energy")->required();
  sub_msc->add_option("--eta", msc_eta, "Imaginary part, > 0")->required();

  auto* sub_identities =
      app.add_subcommand("identities", "Resolvent identity residual suite on random samples");

  std::string expand_type;
  int expand_k = 1;
  std::string expand_lone;
  int expand_q = 1;
  bool expand_dump = false;
  auto* sub_expand = app.add_subcommand("expand", "Run the resolvent expansion engine");
  sub_expand->add_option("--type", expand_type, "Initial monomial: A = 1/G_kk, B = G_kk")
      ->required();
  sub_expand->add_option("--k", expand_k, "Expanded index")->required();
  sub_expand->add_option("--lone", expand_lone, "Lone coordinates, comma separated");
  sub_expand->add_option("--q", expand_q, "Moment order")->required();
  sub_expand->add_flag("--dump", expand_dump, "Print the term dump to stdout");

  auto* sub_scan = app.add_subcommand("scan", "Fluctuation scan over (N, E, eta) cells");
  auto* sub_counting = app.add_subcommand("counting", "Counting-function statistic study");
  auto* sub_rigidity = app.add_subcommand("rigidity", "Eigenvalue rigidity study");
  auto* sub_edge = app.add_subcommand("edge", "Extremal eigenvalue scaling study");
  auto* sub_hw = app.add_subcommand("hw", "Hanson-Wright tail study");

  for (auto* sub : {sub_msc, sub_identities, sub_expand, sub_scan, sub_counting, sub_rigidity,
                    sub_edge, sub_hw}) {
    sub->fallthrough();
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    err << app.help();
    return 2;
  }

  global.seed_given = seed_opt->count() > 0;

  try {
    const std::string started_at = iso8601_utc_now();

    CommandOutput result;
    std::string command;
    if (sub_msc->parsed()) {
      command = "msc";
      result = cmd_msc(msc_E, msc_eta, out);
    } else if (sub_identities->parsed()) {
      command = "identities";
      result = cmd_identities(global, out);
    } else if (sub_expand->parsed()) {
      command = "expand";
      result = cmd_expand(expand_type, expand_k, expand_lone, expand_q, expand_dump, out);
    } else if (sub_scan->parsed()) {
      command = "scan";
      result = cmd_scan(global, out);
    } else if (sub_counting->parsed()) {
      command = "counting";
      result = cmd_counting(global, out);
    } else if (sub_rigidity->parsed()) {
      command = "rigidity";
      result = cmd_rigidity(global, out);
    } else if (sub_edge->parsed()) {
      command = "edge";
      result = cmd_edge(global, out);
    } else {
      command = "hw";
      result = cmd_hw(global, out);
    }

    const fs::path dir = resolve_out_dir(global);
    fs::create_directories(dir);
    write_table_csv(result.table, dir / "results.csv");

    RunManifest manifest;
    manifest.command = command;
    manifest.config_echo = result.echo;
    manifest.base_seed = result.base_seed;
    manifest.started_at = started_at;
    manifest.finished_at = iso8601_utc_now();
    manifest.record_count = result.table.rows.size();
    write_manifest(manifest, dir / "manifest.json");
    return 0;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace sclab::cli

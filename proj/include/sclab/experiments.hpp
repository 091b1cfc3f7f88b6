#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "sclab/ensemble.hpp"
#include "sclab/semicircle.hpp"
#include "sclab/spectral.hpp"

namespace sclab::experiments {

using semicircle::SpectralPoint;

struct ScanConfig {
  std::vector<long> N_list;
  std::vector<double> eta_list;
  std::vector<double> E_list;
  long samples = 0;
  std::uint64_t base_seed = 0;
  ensemble::EntryDistribution distribution = ensemble::EntryDistribution::Gaussian;
};

/// One Monte Carlo observation: a (matrix sample, evaluation point) cell.
struct SampleRecord {
  long N = 0;
  double E = 0.0;
  double eta = 0.0;
  long sample_index = 0;
  double abs_lambda = 0.0;
  double im_lambda = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double counting_stat = 0.0;
  double rigidity_stat = 0.0;
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double stderr_slope = 0.0;
};

/// Rejects configs with an (N, eta) cell below the N*eta >= 5 floor, empty
/// sweep axes with samples > 0, or nonpositive entries.
void validate_scan_config(const ScanConfig& config);

/// Per-sample seeds derive from (base_seed, N, sample_index); each sample is
/// decomposed once and reused for every (E, eta) cell. Records come back in
/// ascending (N, sample_index) order independent of the thread count.
std::vector<SampleRecord> fluctuation_scan(const ScanConfig& config, int threads = 1);

/// Per-spectrum statistics only: one record per (N, sample), evaluated at
/// the nominal floor cell E = 0, eta = 5/N. Seeds match fluctuation_scan.
std::vector<SampleRecord> spectrum_scan(const std::vector<long>& N_list, long samples,
                                        ensemble::EntryDistribution distribution,
                                        std::uint64_t base_seed, int threads = 1);

/// Ordinary least squares of log y against log x.
FitResult loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

/// Exact sup_E |n(E) - n_sc(E)|, evaluated at the jump points.
double counting_statistic(const spectral::SpectralDecomposition& decomposition);

/// max_alpha |lambda_alpha - gamma_alpha| * N * (alpha_hat/N)^{1/3} / log N
/// with alpha_hat = min(alpha, N+1-alpha).
double rigidity_statistic(const spectral::SpectralDecomposition& decomposition);
double rigidity_statistic(const Eigen::VectorXd& ascending_eigenvalues,
                          const std::vector<double>& classical_locs);

/// Same deviation statistic with the sqrt(log N) normalization that the
/// eigenvalues are expected to fluctuate on.
double rigidity_statistic_sqrtlog(const Eigen::VectorXd& ascending_eigenvalues,
                                  const std::vector<double>& classical_locs);

/// Fits the dispersion of lambda_max against N on log-log axes. Dispersion
/// is the interquartile range; when a group is degenerate (zero IQR, as for
/// synthetic single-valued data) the spread proxy median|lambda_max - 2| is
/// used for every group instead. Needs >= 3 distinct N with >= 50 samples.
FitResult edge_statistic(const std::vector<SampleRecord>& records);

enum class QuadraticFormKind { Identity, RandomResolvent };

struct TailEstimate {
  double delta = 0.0;
  long exceed_count = 0;
  long samples = 0;
  double tail = 0.0;
};

/// Empirical tail of the centered quadratic form x^* A x - E x^* A x over
/// `samples` standard complex gaussian vectors: the fraction exceeding
/// delta * sqrt(Tr A^* A), per delta.
std::vector<TailEstimate> hanson_wright_tail(const Eigen::MatrixXcd& A,
                                             const std::vector<double>& deltas, long samples,
                                             std::uint64_t seed);

std::vector<TailEstimate> hanson_wright_tail(long N, QuadraticFormKind kind,
                                             const std::vector<double>& deltas, long samples,
                                             std::uint64_t seed);

/// Control parameter
///   max{ (N eta)^{-2q}, ((Im m_sc)^q + moment) / (N eta)^q } + N^{-q}.
double control_parameter(long N, const SpectralPoint& z, int q, double im_lambda_moment);

}  // namespace sclab::experiments

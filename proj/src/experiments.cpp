#include "sclab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

namespace sclab::experiments {

void validate_scan_config(const ScanConfig& config) {
  if (config.samples < 0) {
    throw ValidationError("samples must be >= 0");
  }
  for (long N : config.N_list) {
    if (N < 2) {
      throw ValidationError("scan dimensions must satisfy N >= 2");
    }
  }
  for (double eta : config.eta_list) {
    if (!(eta > 0.0)) {
      throw ValidationError("eta values must be positive");
    }
  }
  // The rate statements need N*eta >= M0; below a floor of 5 the cell is noise.
  for (long N : config.N_list) {
    for (double eta : config.eta_list) {
      if (static_cast<double>(N) * eta < 5.0) {
        throw ValidationError("cell N=" + std::to_string(N) + ", eta=" + std::to_string(eta) +
                              " violates the N*eta >= 5 floor");
      }
    }
  }
}

namespace {

std::vector<long> sorted_unique(std::vector<long> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

double quantile(const std::vector<double>& sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = p * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= n) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

std::vector<SampleRecord> fluctuation_scan(const ScanConfig& config, int threads) {
  validate_scan_config(config);
  const std::vector<long> Ns = sorted_unique(config.N_list);
  if (config.samples == 0 || Ns.empty()) {
    return {};
  }

  // Classical locations per dimension, shared read-only by all workers.
  std::map<long, std::vector<double>> gammas;
  for (long N : Ns) {
    gammas[N] = semicircle::classical_locations(N);
  }

  struct Task {
    long N;
    long sample;
  };
  std::vector<Task> tasks;
  tasks.reserve(Ns.size() * static_cast<std::size_t>(config.samples));
  for (long N : Ns) {
    for (long s = 0; s < config.samples; ++s) {
      tasks.push_back({N, s});
    }
  }

  std::vector<std::vector<SampleRecord>> blocks(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;

  auto worker = [&]() {
    try {
      while (true) {
        const std::size_t t = next.fetch_add(1);
        if (t >= tasks.size()) break;
        const Task task = tasks[t];

        ensemble::WignerSpec spec;
        spec.N = task.N;
        spec.distribution = config.distribution;
        spec.seed = derive_seed(config.base_seed, static_cast<std::uint64_t>(task.N),
                                static_cast<std::uint64_t>(task.sample));
        const auto H = ensemble::sample_wigner(spec);
        const auto decomposition = spectral::eigendecompose(H, false);

        const double lambda_min = decomposition.eigenvalues(0);
        const double lambda_max = decomposition.eigenvalues(task.N - 1);
        const double counting = counting_statistic(decomposition);
        const double rigidity =
            rigidity_statistic(decomposition.eigenvalues, gammas.at(task.N));

        std::vector<SampleRecord>& block = blocks[t];
        block.reserve(config.E_list.size() * config.eta_list.size());
        for (double E : config.E_list) {
          for (double eta : config.eta_list) {
            const SpectralPoint z(E, eta);
            const auto lambda = spectral::stieltjes(decomposition, z) - semicircle::msc(z);
            SampleRecord record;
            record.N = task.N;
            record.E = E;
            record.eta = eta;
            record.sample_index = task.sample;
            record.abs_lambda = std::abs(lambda);
            record.im_lambda = lambda.imag();
            record.lambda_min = lambda_min;
            record.lambda_max = lambda_max;
            record.counting_stat = counting;
            record.rigidity_stat = rigidity;
            block.push_back(record);
          }
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  const int worker_count = std::max(1, threads);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(worker_count - 1));
  for (int w = 1; w < worker_count; ++w) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto& th : pool) {
    th.join();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }

  std::vector<SampleRecord> records;
  records.reserve(tasks.size() * config.E_list.size() * config.eta_list.size());
  for (auto& block : blocks) {
    records.insert(records.end(), block.begin(), block.end());
  }
  return records;
}

std::vector<SampleRecord> spectrum_scan(const std::vector<long>& N_list, long samples,
                                        ensemble::EntryDistribution distribution,
                                        std::uint64_t base_seed, int threads) {
  std::vector<SampleRecord> records;
  for (long N : sorted_unique(N_list)) {
    double eta = 5.0 / static_cast<double>(N);
    while (static_cast<double>(N) * eta < 5.0) {
      eta = std::nextafter(eta, std::numeric_limits<double>::infinity());
    }
    ScanConfig config;
    config.N_list = {N};
    config.eta_list = {eta};
    config.E_list = {0.0};
    config.samples = samples;
    config.base_seed = base_seed;
    config.distribution = distribution;
    const auto block = fluctuation_scan(config, threads);
    records.insert(records.end(), block.begin(), block.end());
  }
  return records;
}

FitResult loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw ValidationError("loglog_fit requires equally long inputs");
  }
  if (x.size() < 3) {
    throw ValidationError("loglog_fit requires at least 3 points");
  }
  const std::size_t n = x.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw ValidationError("loglog_fit requires strictly positive values");
    }
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += lx[i];
    mean_y += ly[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mean_x) * (lx[i] - mean_x);
    sxy += (lx[i] - mean_x) * (ly[i] - mean_y);
    syy += (ly[i] - mean_y) * (ly[i] - mean_y);
  }
  if (sxx == 0.0) {
    throw ValidationError("loglog_fit requires at least two distinct x values");
  }

  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ssr += r * r;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ssr / syy, 0.0, 1.0) : 1.0;
  fit.stderr_slope = n > 2 ? std::sqrt(ssr / static_cast<double>(n - 2) / sxx) : 0.0;
  return fit;
}

double counting_statistic(const spectral::SpectralDecomposition& decomposition) {
  const long N = decomposition.size();
  // n(E) is a step function, so the supremum of |n - n_sc| sits at a jump:
  // just before lambda_alpha the gap is |(alpha-1)/N - n_sc|, at it
  // |alpha/N - n_sc|.
  double sup = 0.0;
  for (long alpha = 1; alpha <= N; ++alpha) {
    const double nsc = semicircle::n_sc_cdf(decomposition.eigenvalues(alpha - 1));
    const double above = std::abs(static_cast<double>(alpha) / static_cast<double>(N) - nsc);
    const double below = std::abs(static_cast<double>(alpha - 1) / static_cast<double>(N) - nsc);
    sup = std::max({sup, above, below});
  }
  return sup;
}

namespace {

double rigidity_max_deviation(const Eigen::VectorXd& eigenvalues,
                              const std::vector<double>& classical_locs) {
  const long N = eigenvalues.size();
  if (N < 2) {
    throw ValidationError("rigidity statistic requires N >= 2");
  }
  if (static_cast<long>(classical_locs.size()) != N) {
    throw ValidationError("classical location table size mismatch");
  }
  double worst = 0.0;
  for (long alpha = 1; alpha <= N; ++alpha) {
    const long alpha_hat = std::min(alpha, N + 1 - alpha);
    const double deviation =
        std::abs(eigenvalues(alpha - 1) - classical_locs[static_cast<std::size_t>(alpha - 1)]);
    const double weight =
        std::cbrt(static_cast<double>(alpha_hat) / static_cast<double>(N));
    worst = std::max(worst, deviation * static_cast<double>(N) * weight);
  }
  return worst;
}

}  // namespace

double rigidity_statistic(const Eigen::VectorXd& ascending_eigenvalues,
                          const std::vector<double>& classical_locs) {
  const double log_n = std::log(static_cast<double>(ascending_eigenvalues.size()));
  return rigidity_max_deviation(ascending_eigenvalues, classical_locs) / log_n;
}

double rigidity_statistic_sqrtlog(const Eigen::VectorXd& ascending_eigenvalues,
                                  const std::vector<double>& classical_locs) {
  const double log_n = std::log(static_cast<double>(ascending_eigenvalues.size()));
  return rigidity_max_deviation(ascending_eigenvalues, classical_locs) / std::sqrt(log_n);
}

double rigidity_statistic(const spectral::SpectralDecomposition& decomposition) {
  return rigidity_statistic(decomposition.eigenvalues,
                            semicircle::classical_locations(decomposition.size()));
}

FitResult edge_statistic(const std::vector<SampleRecord>& records) {
  // lambda_max is a per-sample quantity; collapse the (E, eta) sweep first.
  std::map<long, std::map<long, double>> by_dimension;
  for (const auto& record : records) {
    by_dimension[record.N][record.sample_index] = record.lambda_max;
  }
  if (by_dimension.size() < 3) {
    throw ValidationError("edge_statistic requires at least 3 distinct N");
  }

  std::vector<double> Ns;
  std::vector<double> iqr;
  std::vector<double> median_abs;
  for (const auto& [N, by_sample] : by_dimension) {
    if (by_sample.size() < 50) {
      throw ValidationError("edge_statistic requires >= 50 samples per N (N=" +
                            std::to_string(N) + " has " + std::to_string(by_sample.size()) + ")");
    }
    std::vector<double> maxima;
    std::vector<double> spreads;
    maxima.reserve(by_sample.size());
    for (const auto& [sample, lambda_max] : by_sample) {
      maxima.push_back(lambda_max);
      spreads.push_back(std::abs(lambda_max - 2.0));
    }
    std::sort(maxima.begin(), maxima.end());
    std::sort(spreads.begin(), spreads.end());
    Ns.push_back(static_cast<double>(N));
    iqr.push_back(quantile(maxima, 0.75) - quantile(maxima, 0.25));
    median_abs.push_back(quantile(spreads, 0.5));
  }

  // Degenerate synthetic data (identical maxima per N) has zero IQR; fall
  // back to the |lambda_max - 2| spread proxy for every group.
  const bool degenerate = std::any_of(iqr.begin(), iqr.end(), [](double v) { return v <= 0.0; });
  return loglog_fit(Ns, degenerate ? median_abs : iqr);
}

std::vector<TailEstimate> hanson_wright_tail(const Eigen::MatrixXcd& A,
                                             const std::vector<double>& deltas, long samples,
                                             std::uint64_t seed) {
  if (samples < 1) {
    throw ValidationError("hanson_wright_tail requires samples >= 1");
  }
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0)) {
      throw ValidationError("deltas must be positive");
    }
    if (i > 0 && deltas[i] <= deltas[i - 1]) {
      throw ValidationError("deltas must be strictly ascending");
    }
  }
  const long N = A.rows();
  if (A.cols() != N) {
    throw ValidationError("hanson_wright_tail requires a square matrix");
  }

  const double hs_norm = std::sqrt((A.adjoint() * A).trace().real());
  const std::complex<double> mean = A.trace();  // E x_i conj(x_j) = delta_ij

  std::vector<long> exceed(deltas.size(), 0);
  Eigen::VectorXcd x(N);
  const double comp_scale = std::sqrt(0.5);
  for (long s = 0; s < samples; ++s) {
    SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    for (long i = 0; i < N; ++i) {
      const auto [re, im] = rng.normal_pair();
      x(i) = std::complex<double>(re * comp_scale, im * comp_scale);
    }
    const double centered = std::abs(x.dot(A * x) - mean);
    for (std::size_t d = 0; d < deltas.size(); ++d) {
      if (centered > deltas[d] * hs_norm) {
        ++exceed[d];
      }
    }
  }

  std::vector<TailEstimate> tails;
  tails.reserve(deltas.size());
  for (std::size_t d = 0; d < deltas.size(); ++d) {
    tails.push_back({deltas[d], exceed[d], samples,
                     static_cast<double>(exceed[d]) / static_cast<double>(samples)});
  }
  return tails;
}

std::vector<TailEstimate> hanson_wright_tail(long N, QuadraticFormKind kind,
                                             const std::vector<double>& deltas, long samples,
                                             std::uint64_t seed) {
  if (N < 1) {
    throw ValidationError("hanson_wright_tail requires N >= 1");
  }
  Eigen::MatrixXcd A;
  if (kind == QuadraticFormKind::Identity) {
    A = Eigen::MatrixXcd::Identity(N, N);
  } else {
    ensemble::WignerSpec spec;
    spec.N = N;
    spec.distribution = ensemble::EntryDistribution::Gaussian;
    spec.seed = derive_seed(seed, 1);
    const auto H = ensemble::sample_wigner(spec);
    A = spectral::resolvent(H, SpectralPoint(0.5, 0.5)).values;
  }
  return hanson_wright_tail(A, deltas, samples, derive_seed(seed, 2));
}

double control_parameter(long N, const SpectralPoint& z, int q, double im_lambda_moment) {
  if (N < 1) {
    throw ValidationError("control_parameter requires N >= 1");
  }
  if (q < 1) {
    throw ValidationError("control_parameter requires q >= 1");
  }
  if (im_lambda_moment < 0.0) {
    throw ValidationError("the moment estimate must be nonnegative");
  }
  const double n_eta = static_cast<double>(N) * z.eta();
  const double im_msc = semicircle::msc(z).imag();
  const double first = std::pow(n_eta, -2.0 * q);
  const double second = (std::pow(im_msc, q) + im_lambda_moment) / std::pow(n_eta, q);
  return std::max(first, second) + std::pow(static_cast<double>(N), -static_cast<double>(q));
}

}  // namespace sclab::experiments

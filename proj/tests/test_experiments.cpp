#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sclab/experiments.hpp"

using namespace sclab;
using namespace sclab::experiments;

namespace {

ScanConfig small_config() {
  ScanConfig config;
  config.N_list = {24, 16};
  config.eta_list = {0.5, 1.0};
  config.E_list = {0.0, 1.0};
  config.samples = 3;
  config.base_seed = 77;
  config.distribution = ensemble::EntryDistribution::Gaussian;
  return config;
}

spectral::SpectralDecomposition decomposition_from(const std::vector<double>& eigenvalues) {
  spectral::SpectralDecomposition d;
  d.eigenvalues = Eigen::Map<const Eigen::VectorXd>(eigenvalues.data(),
                                                    static_cast<long>(eigenvalues.size()));
  return d;
}

}  // namespace

TEST_CASE("scan config validation") {
  auto config = small_config();
  CHECK_NOTHROW(validate_scan_config(config));

  config.eta_list = {0.1};  // 16 * 0.1 < 5
  CHECK_THROWS_AS(validate_scan_config(config), ValidationError);

  config = small_config();
  config.eta_list.push_back(-1.0);
  CHECK_THROWS_AS(validate_scan_config(config), ValidationError);

  config = small_config();
  config.N_list = {1};
  CHECK_THROWS_AS(validate_scan_config(config), ValidationError);

  config = small_config();
  config.samples = -1;
  CHECK_THROWS_AS(validate_scan_config(config), ValidationError);
}

TEST_CASE("empty scans") {
  auto config = small_config();
  config.samples = 0;
  CHECK(fluctuation_scan(config).empty());
}

TEST_CASE("scan determinism and record layout") {
  const auto config = small_config();
  const auto serial = fluctuation_scan(config, 1);
  const auto parallel = fluctuation_scan(config, 8);

  REQUIRE(serial.size() == 2 * 3 * 2 * 2);  // N x samples x E x eta
  REQUIRE(parallel.size() == serial.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].N == parallel[i].N);
    CHECK(serial[i].sample_index == parallel[i].sample_index);
    CHECK(serial[i].E == parallel[i].E);
    CHECK(serial[i].eta == parallel[i].eta);
    // Bit-identical, not approximately equal.
    CHECK(serial[i].abs_lambda == parallel[i].abs_lambda);
    CHECK(serial[i].im_lambda == parallel[i].im_lambda);
    CHECK(serial[i].lambda_min == parallel[i].lambda_min);
    CHECK(serial[i].lambda_max == parallel[i].lambda_max);
    CHECK(serial[i].counting_stat == parallel[i].counting_stat);
    CHECK(serial[i].rigidity_stat == parallel[i].rigidity_stat);
  }

  // Ascending (N, sample) blocks; N_list was given unsorted.
  CHECK(serial.front().N == 16);
  CHECK(serial.back().N == 24);
  for (std::size_t i = 1; i < serial.size(); ++i) {
    const bool ordered = serial[i - 1].N < serial[i].N ||
                         (serial[i - 1].N == serial[i].N &&
                          serial[i - 1].sample_index <= serial[i].sample_index);
    CHECK(ordered);
  }

  // Per-record invariant |Lambda| >= |Im Lambda|.
  for (const auto& record : serial) {
    CHECK(record.abs_lambda >= std::abs(record.im_lambda));
  }

  // Re-running yields identical output (pure function of the config).
  const auto again = fluctuation_scan(config, 3);
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].abs_lambda == again[i].abs_lambda);
  }
}

TEST_CASE("bulk fluctuation pilot at N = 500") {
  // The rate constant is not pinned by theory; the pilot window spans two
  // orders of magnitude around N*eta*|Lambda| ~ 1.
  ScanConfig config;
  config.N_list = {500};
  config.eta_list = {0.1};
  config.E_list = {0.0};
  config.samples = 100;
  config.base_seed = 31;
  config.distribution = ensemble::EntryDistribution::Gaussian;
  const auto records = fluctuation_scan(config, 2);
  REQUIRE(records.size() == 100);

  std::vector<double> scaled;
  for (const auto& record : records) {
    scaled.push_back(500.0 * 0.1 * record.abs_lambda);
  }
  std::sort(scaled.begin(), scaled.end());
  const double median = 0.5 * (scaled[49] + scaled[50]);
  CHECK(median > 0.05);
  CHECK(median < 5.0);
}

TEST_CASE("spectrum scan emits one record per sample") {
  const auto records = spectrum_scan({16, 12}, 4, ensemble::EntryDistribution::Gaussian, 5, 2);
  REQUIRE(records.size() == 8);
  CHECK(records.front().N == 12);
  CHECK(records.back().N == 16);
  for (const auto& record : records) {
    CHECK(record.E == 0.0);
    CHECK(record.eta * static_cast<double>(record.N) >= 5.0);
    CHECK(record.lambda_min <= record.lambda_max);
    CHECK(record.counting_stat >= 0.0);
    CHECK(record.rigidity_stat >= 0.0);
  }
}

TEST_CASE("loglog_fit on exact and noisy power laws") {
  const std::vector<double> x = {1.0, 2.0, 4.0, 8.0};
  std::vector<double> y;
  for (double v : x) y.push_back(1.0 / v);
  const auto exact = loglog_fit(x, y);
  CHECK(exact.slope == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(exact.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(exact.stderr_slope < 1e-12);

  const auto constant = loglog_fit(x, {3.0, 3.0, 3.0, 3.0});
  CHECK(constant.slope == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(constant.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));

  // +-5% multiplicative noise keeps the slope within a tenth.
  SplitMix64 rng(909);
  std::vector<double> noisy;
  for (double v : x) {
    noisy.push_back((1.0 / v) * (1.0 + 0.05 * (2.0 * rng.uniform01() - 1.0)));
  }
  const auto fit = loglog_fit(x, noisy);
  CHECK(fit.slope > -1.1);
  CHECK(fit.slope < -0.9);
  CHECK(fit.r_squared > 0.9);
  CHECK(fit.r_squared <= 1.0);

  CHECK_THROWS_AS(loglog_fit({1.0, 2.0}, {1.0, 2.0}), ValidationError);
  CHECK_THROWS_AS(loglog_fit(x, {1.0, 2.0, 3.0}), ValidationError);
  CHECK_THROWS_AS(loglog_fit(x, {1.0, -2.0, 3.0, 4.0}), ValidationError);
  CHECK_THROWS_AS(loglog_fit({1.0, 1.0, 1.0}, {1.0, 2.0, 3.0}), ValidationError);
}

TEST_CASE("counting statistic at jump points") {
  CHECK(counting_statistic(decomposition_from({0.0})) == doctest::Approx(0.5).epsilon(1e-12));

  // Eigenvalues at the classical locations step within 1/N of n_sc.
  for (long N : {10L, 57L}) {
    const auto gammas = semicircle::classical_locations(N);
    CHECK(counting_statistic(decomposition_from(gammas)) <=
          1.0 / static_cast<double>(N) + 1e-12);
  }

  // All mass far to the right of the support.
  std::vector<double> shifted;
  for (int i = 0; i < 5; ++i) shifted.push_back(10.0 + i);
  CHECK(counting_statistic(decomposition_from(shifted)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("counting statistic equals a brute-force grid supremum") {
  SplitMix64 rng(4711);
  for (int trial = 0; trial < 20; ++trial) {
    const long N = 3 + static_cast<long>(rng.next() % 8);
    std::vector<double> eigenvalues;
    for (long i = 0; i < N; ++i) {
      eigenvalues.push_back(-2.5 + 5.0 * rng.uniform01());
    }
    std::sort(eigenvalues.begin(), eigenvalues.end());
    const double exact = counting_statistic(decomposition_from(eigenvalues));

    const long grid = 1000000;
    double brute = 0.0;
    for (long g = 0; g <= grid; ++g) {
      const double E = -3.0 + 6.0 * static_cast<double>(g) / static_cast<double>(grid);
      const double n = static_cast<double>(std::upper_bound(eigenvalues.begin(),
                                                            eigenvalues.end(), E) -
                                           eigenvalues.begin()) /
                       static_cast<double>(N);
      brute = std::max(brute, std::abs(n - semicircle::n_sc_cdf(E)));
    }
    CHECK(exact >= brute - 1e-9);          // grid never beats the jump formula
    CHECK(exact <= brute + 6.0 / grid);    // and exceeds it by at most one cell
  }
}

TEST_CASE("rigidity statistic") {
  for (long N : {2L, 10L, 137L, 1000L}) {
    const auto gammas = semicircle::classical_locations(N);
    Eigen::VectorXd exact =
        Eigen::Map<const Eigen::VectorXd>(gammas.data(), static_cast<long>(gammas.size()));
    CHECK(rigidity_statistic(exact, gammas) == 0.0);
  }

  // Perturb only the first eigenvalue by +d.
  const long N = 100;
  const auto gammas = semicircle::classical_locations(N);
  Eigen::VectorXd perturbed =
      Eigen::Map<const Eigen::VectorXd>(gammas.data(), static_cast<long>(gammas.size()));
  const double d = 0.125;
  perturbed(0) -= d;  // keeps the ordering
  const double expected =
      d * static_cast<double>(N) * std::cbrt(1.0 / static_cast<double>(N)) /
      std::log(static_cast<double>(N));
  CHECK(rigidity_statistic(perturbed, gammas) == doctest::Approx(expected).epsilon(1e-12));

  // Monotone under enlarging a single deviation.
  Eigen::VectorXd larger = perturbed;
  larger(0) -= 0.5;
  CHECK(rigidity_statistic(larger, gammas) > rigidity_statistic(perturbed, gammas));

  // The sqrt(log N) normalization only rescales.
  CHECK(rigidity_statistic_sqrtlog(perturbed, gammas) ==
        doctest::Approx(rigidity_statistic(perturbed, gammas) *
                        std::sqrt(std::log(static_cast<double>(N))))
            .epsilon(1e-12));
}

TEST_CASE("edge statistic on synthetic power-law data") {
  // Degenerate per-N samples: lambda_max = 2 - 1.77 N^{-2/3} exactly.
  std::vector<SampleRecord> records;
  for (long N : {125L, 250L, 500L, 1000L}) {
    for (long s = 0; s < 60; ++s) {
      SampleRecord r;
      r.N = N;
      r.sample_index = s;
      r.lambda_max = 2.0 - 1.77 * std::pow(static_cast<double>(N), -2.0 / 3.0);
      records.push_back(r);
    }
  }
  const auto fit = edge_statistic(records);
  CHECK(fit.slope == doctest::Approx(-2.0 / 3.0).epsilon(1e-10));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-10));

  // Insufficient data is rejected.
  std::vector<SampleRecord> single;
  for (long s = 0; s < 60; ++s) {
    SampleRecord r;
    r.N = 100;
    r.sample_index = s;
    r.lambda_max = 2.0;
    single.push_back(r);
  }
  CHECK_THROWS_AS(edge_statistic(single), ValidationError);

  std::vector<SampleRecord> sparse = records;
  sparse.resize(3 * 60 + 10);  // fourth group has only 10 samples
  CHECK_THROWS_AS(edge_statistic(sparse), ValidationError);
}

TEST_CASE("edge statistic uses the interquartile range when it is informative") {
  SplitMix64 rng(13);
  std::vector<SampleRecord> records;
  for (long N : {125L, 250L, 500L, 1000L}) {
    const double scale = std::pow(static_cast<double>(N), -2.0 / 3.0);
    for (long s = 0; s < 200; ++s) {
      SampleRecord r;
      r.N = N;
      r.sample_index = s;
      r.lambda_max = 2.0 + scale * (2.0 * rng.uniform01() - 1.0);
      records.push_back(r);
    }
  }
  const auto fit = edge_statistic(records);
  CHECK(fit.slope > -0.8);
  CHECK(fit.slope < -0.5);
}

TEST_CASE("hanson-wright tails") {
  // Zero matrix: the threshold is zero and nothing exceeds it strictly.
  const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(8, 8);
  for (const auto& tail : hanson_wright_tail(zero, {1.0, 2.0}, 200, 3)) {
    CHECK(tail.tail == 0.0);
    CHECK(tail.samples == 200);
  }

  // Identity: Tr A^* A = N exactly and the tails decay like the bound.
  const long N = 200;
  const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(N, N);
  CHECK((identity.adjoint() * identity).trace().real() == doctest::Approx(200.0));
  const auto tails = hanson_wright_tail(N, QuadraticFormKind::Identity, {1.0, 2.0, 4.0}, 4000, 9);
  REQUIRE(tails.size() == 3);
  CHECK(tails[0].tail > tails[1].tail);
  CHECK(tails[1].tail > tails[2].tail);
  CHECK(tails[2].tail < tails[0].tail / 5.0);
  CHECK(tails[0].exceed_count + tails[1].exceed_count > 0);

  // Resolvent-shaped matrix: still a rapidly decaying tail.
  const auto resolvent_tails =
      hanson_wright_tail(40, QuadraticFormKind::RandomResolvent, {1.0, 4.0}, 2000, 11);
  CHECK(resolvent_tails[0].tail >= resolvent_tails[1].tail);
  CHECK(resolvent_tails[1].tail < 0.05);

  CHECK_THROWS_AS(hanson_wright_tail(zero, {2.0, 1.0}, 10, 0), ValidationError);
  CHECK_THROWS_AS(hanson_wright_tail(zero, {-1.0}, 10, 0), ValidationError);
  CHECK_THROWS_AS(hanson_wright_tail(zero, {1.0}, 0, 0), ValidationError);
}

TEST_CASE("control parameter") {
  const SpectralPoint far(0.0, 10.0);  // Im m_sc well away from zero
  CHECK(control_parameter(100, far, 2, 0.5) >= std::pow(1000.0, -4.0));

  // Degenerate max: tiny Im m_sc and zero moment.
  const SpectralPoint outside(50.0, 0.05);
  const long N = 1000;
  const double value = control_parameter(N, outside, 1, 0.0);
  const double n_eta = static_cast<double>(N) * outside.eta();
  const double im = semicircle::msc(outside).imag();
  CHECK(im / n_eta < std::pow(n_eta, -2.0));
  CHECK(value == doctest::Approx(std::pow(n_eta, -2.0) + 1.0 / N).epsilon(1e-12));

  // Lower bound holds across a parameter sweep.
  for (int q = 1; q <= 4; ++q) {
    for (double moment : {0.0, 0.2, 1.0}) {
      const double v = control_parameter(500, SpectralPoint(1.0, 0.02), q, moment);
      CHECK(v >= std::pow(500.0 * 0.02, -2.0 * q));
    }
  }

  // Two-sided ordering between consecutive orders with moments <= 1:
  // E_2q <= C E_q and E_q^2 <= C E_2q, with C = 10.
  for (int q = 1; q <= 3; ++q) {
    for (double m_q : {0.0, 0.05, 0.8}) {
      const double m_2q = m_q * m_q;  // consistent with a sharply concentrated law
      for (const SpectralPoint z : {SpectralPoint(0.3, 0.05), SpectralPoint(2.5, 0.01)}) {
        const double eq = control_parameter(800, z, q, m_q);
        const double e2q = control_parameter(800, z, 2 * q, m_2q);
        CHECK(e2q <= 10.0 * eq);
        CHECK(eq * eq <= 10.0 * e2q);
      }
    }
  }

  CHECK_THROWS_AS(control_parameter(0, far, 1, 0.0), ValidationError);
  CHECK_THROWS_AS(control_parameter(10, far, 0, 0.0), ValidationError);
  CHECK_THROWS_AS(control_parameter(10, far, 1, -0.1), ValidationError);
}

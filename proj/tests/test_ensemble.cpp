#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sclab/ensemble.hpp"
#include "sclab/spectral.hpp"

using namespace sclab;
using namespace sclab::ensemble;

TEST_CASE("sampling is a pure function of the spec") {
  const WignerSpec spec{4, EntryDistribution::Gaussian, 42};
  const auto A = sample_wigner(spec);
  const auto B = sample_wigner(spec);
  REQUIRE(A.size() == 4);
  CHECK(A.entries == B.entries);  // bit-identical

  const auto C = sample_wigner({4, EntryDistribution::Gaussian, 43});
  CHECK(A.entries != C.entries);
}

TEST_CASE("hermitian symmetry holds exactly by construction") {
  for (auto kind :
       {EntryDistribution::Gaussian, EntryDistribution::Rademacher, EntryDistribution::Uniform}) {
    const auto H = sample_wigner({9, kind, 7});
    for (int r = 0; r < 9; ++r) {
      CHECK(H.entries(r, r).imag() == 0.0);
      for (int c = 0; c < 9; ++c) {
        CHECK(H.entries(r, c) == std::conj(H.entries(c, r)));
      }
    }
    CHECK(H.entry(2, 1) == std::conj(H.entry(1, 2)));
  }
}

TEST_CASE("component laws have the required variances") {
  const long draws = 1000000;
  for (auto kind :
       {EntryDistribution::Gaussian, EntryDistribution::Rademacher, EntryDistribution::Uniform}) {
    SplitMix64 rng(555);
    double sum_off = 0.0, sumsq_off = 0.0;
    double sum_diag = 0.0, sumsq_diag = 0.0;
    for (long i = 0; i < draws / 2; ++i) {
      const auto [x, y] = draw_offdiag_pair(kind, rng);
      sum_off += x + y;
      sumsq_off += x * x + y * y;
    }
    for (long i = 0; i < draws; ++i) {
      const double d = draw_diag(kind, rng);
      sum_diag += d;
      sumsq_diag += d * d;
    }
    const double var_off = sumsq_off / draws - std::pow(sum_off / draws, 2);
    const double var_diag = sumsq_diag / draws - std::pow(sum_diag / draws, 2);
    CHECK(std::abs(var_off - 0.5) < 0.005);   // 1% of the target 1/2
    CHECK(std::abs(var_diag - 1.0) < 0.01);   // 1% of the target 1
    CHECK(std::abs(sum_off / draws) < 0.01);
    CHECK(std::abs(sum_diag / draws) < 0.01);
  }
}

TEST_CASE("rademacher components sit on the two-point support") {
  SplitMix64 rng(99);
  for (int i = 0; i < 1000; ++i) {
    const auto [x, y] = draw_offdiag_pair(EntryDistribution::Rademacher, rng);
    CHECK(std::abs(std::abs(x) - std::sqrt(0.5)) < 1e-15);
    CHECK(std::abs(std::abs(y) - std::sqrt(0.5)) < 1e-15);
    const double d = draw_diag(EntryDistribution::Rademacher, rng);
    CHECK(std::abs(d) == 1.0);
  }
}

TEST_CASE("uniform components stay inside their supports") {
  SplitMix64 rng(100);
  for (int i = 0; i < 10000; ++i) {
    const auto [x, y] = draw_offdiag_pair(EntryDistribution::Uniform, rng);
    CHECK(std::abs(x) <= std::sqrt(1.5));
    CHECK(std::abs(y) <= std::sqrt(1.5));
    CHECK(std::abs(draw_diag(EntryDistribution::Uniform, rng)) <= std::sqrt(3.0));
  }
}

TEST_CASE("off-diagonal second moment carries the 1/N scaling") {
  const long N = 1000;
  const auto H = sample_wigner({N, EntryDistribution::Rademacher, 2024});
  double sum = 0.0;
  long count = 0;
  for (long r = 0; r < N; ++r) {
    for (long c = r + 1; c < N; ++c) {
      sum += static_cast<double>(N) * std::norm(H.entries(r, c));
      ++count;
    }
  }
  const double mean = sum / static_cast<double>(count);
  CHECK(mean > 0.9);
  CHECK(mean < 1.1);
}

TEST_CASE("minor deletes rows and columns and keeps original labels") {
  const auto H = sample_wigner({3, EntryDistribution::Gaussian, 5});

  const auto same = minor(H, {});
  CHECK(same.entries == H.entries);

  const auto M = minor(H, {2});
  REQUIRE(M.size() == 2);
  CHECK(M.labels == std::vector<int>{1, 3});
  CHECK(M.entries(0, 0) == H.entries(0, 0));
  CHECK(M.entries(0, 1) == H.entries(0, 2));
  CHECK(M.entries(1, 0) == H.entries(2, 0));
  CHECK(M.entries(1, 1) == H.entries(2, 2));
  CHECK(M.entry(3, 3) == H.entry(3, 3));

  CHECK_THROWS_AS(minor(H, {1, 2, 3}), ValidationError);
  CHECK_THROWS_AS(minor(M, {2}), ValidationError);  // already deleted
}

TEST_CASE("minors compose") {
  const auto H = sample_wigner({6, EntryDistribution::Uniform, 11});
  for (int j = 1; j <= 6; ++j) {
    for (int k = 1; k <= 6; ++k) {
      if (j == k) continue;
      const auto twice = minor(minor(H, {j}), {k});
      const auto once = minor(H, {j, k});
      CHECK(twice.labels == once.labels);
      CHECK(twice.entries == once.entries);
    }
  }
}

TEST_CASE("gross spectral support of a large gaussian sample") {
  const auto H = sample_wigner({2000, EntryDistribution::Gaussian, 31337});
  const auto decomposition = spectral::eigendecompose(H, false);
  CHECK(decomposition.eigenvalues(0) > -2.5);
  CHECK(decomposition.eigenvalues(1999) < 2.5);
}

TEST_CASE("debug dump format") {
  const auto H = sample_wigner({2, EntryDistribution::Rademacher, 3});
  std::ostringstream out;
  write_debug_dump(H, out);
  std::istringstream in(out.str());

  long N = 0;
  std::string dist;
  std::uint64_t seed = 0;
  in >> N >> dist >> seed;
  CHECK(N == 2);
  CHECK(dist == "rademacher");
  CHECK(seed == 3);

  long lines = 0;
  int r = 0, c = 0;
  double re = 0.0, im = 0.0;
  while (in >> r >> c >> re >> im) {
    CHECK(H.entry(r, c) == std::complex<double>(re, im));
    ++lines;
  }
  CHECK(lines == 4);
}

#include "sclab/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace sclab::ensemble {

namespace {

// Component scales chosen so off-diagonal components have variance 1/2 and
// diagonal components variance 1.
constexpr double kRademacherOff = 0.70710678118654752440;  // 1/sqrt(2)
constexpr double kUniformOffHalfWidth = 1.22474487139158905;  // sqrt(3/2)
constexpr double kUniformDiagHalfWidth = 1.73205080756887729;  // sqrt(3)

}  // namespace

const char* to_string(EntryDistribution kind) {
  switch (kind) {
    case EntryDistribution::Gaussian:
      return "gaussian";
    case EntryDistribution::Rademacher:
      return "rademacher";
    case EntryDistribution::Uniform:
      return "uniform";
  }
  return "?";
}

EntryDistribution distribution_from_string(const std::string& name) {
  if (name == "gaussian") return EntryDistribution::Gaussian;
  if (name == "rademacher") return EntryDistribution::Rademacher;
  if (name == "uniform") return EntryDistribution::Uniform;
  throw ValidationError("unknown distribution '" + name +
                        "' (expected gaussian, rademacher or uniform)");
}

std::complex<double> HermitianMatrix::entry(int row_label, int col_label) const {
  return entries(position(row_label), position(col_label));
}

int HermitianMatrix::position(int label) const {
  const auto it = std::lower_bound(labels.begin(), labels.end(), label);
  if (it == labels.end() || *it != label) {
    throw ValidationError("label " + std::to_string(label) + " is not present in this matrix");
  }
  return static_cast<int>(it - labels.begin());
}

std::pair<double, double> draw_offdiag_pair(EntryDistribution kind, SplitMix64& rng) {
  switch (kind) {
    case EntryDistribution::Gaussian: {
      const auto [g1, g2] = rng.normal_pair();
      return {g1 * std::sqrt(0.5), g2 * std::sqrt(0.5)};
    }
    case EntryDistribution::Rademacher: {
      const double x = rng.coin() ? kRademacherOff : -kRademacherOff;
      const double y = rng.coin() ? kRademacherOff : -kRademacherOff;
      return {x, y};
    }
    case EntryDistribution::Uniform: {
      const double x = (2.0 * rng.uniform01() - 1.0) * kUniformOffHalfWidth;
      const double y = (2.0 * rng.uniform01() - 1.0) * kUniformOffHalfWidth;
      return {x, y};
    }
  }
  return {0.0, 0.0};
}

double draw_diag(EntryDistribution kind, SplitMix64& rng) {
  switch (kind) {
    case EntryDistribution::Gaussian:
      return rng.normal_pair().first;
    case EntryDistribution::Rademacher:
      return rng.coin() ? 1.0 : -1.0;
    case EntryDistribution::Uniform:
      return (2.0 * rng.uniform01() - 1.0) * kUniformDiagHalfWidth;
  }
  return 0.0;
}

HermitianMatrix sample_wigner(const WignerSpec& spec) {
  if (spec.N < 1) {
    throw ValidationError("sample_wigner requires N >= 1");
  }
  const long N = spec.N;
  const double scale = 1.0 / std::sqrt(static_cast<double>(N));

  HermitianMatrix H;
  H.spec = spec;
  H.entries = Eigen::MatrixXcd::Zero(N, N);
  H.labels.resize(static_cast<std::size_t>(N));
  for (long i = 0; i < N; ++i) {
    H.labels[static_cast<std::size_t>(i)] = static_cast<int>(i + 1);
  }

  SplitMix64 rng(spec.seed);
  for (long j = 0; j < N; ++j) {
    for (long l = j + 1; l < N; ++l) {
      const auto [x, y] = draw_offdiag_pair(spec.distribution, rng);
      const std::complex<double> h(x * scale, y * scale);
      H.entries(j, l) = h;
      H.entries(l, j) = std::conj(h);
    }
  }
  for (long j = 0; j < N; ++j) {
    H.entries(j, j) = std::complex<double>(draw_diag(spec.distribution, rng) * scale, 0.0);
  }
  return H;
}

HermitianMatrix minor(const HermitianMatrix& H, const std::vector<int>& drop) {
  if (drop.empty()) {
    return H;
  }
  std::vector<int> dropped = drop;
  std::sort(dropped.begin(), dropped.end());
  dropped.erase(std::unique(dropped.begin(), dropped.end()), dropped.end());

  std::vector<int> keep_positions;
  keep_positions.reserve(H.labels.size());
  for (std::size_t p = 0; p < H.labels.size(); ++p) {
    if (!std::binary_search(dropped.begin(), dropped.end(), H.labels[p])) {
      keep_positions.push_back(static_cast<int>(p));
    }
  }
  for (int label : dropped) {
    H.position(label);  // throws if the label is not present
  }
  if (keep_positions.empty()) {
    throw ValidationError("minor cannot delete every index");
  }

  const long M = static_cast<long>(keep_positions.size());
  HermitianMatrix out;
  out.spec = H.spec;
  out.entries.resize(M, M);
  out.labels.resize(static_cast<std::size_t>(M));
  for (long r = 0; r < M; ++r) {
    out.labels[static_cast<std::size_t>(r)] = H.labels[static_cast<std::size_t>(keep_positions[r])];
    for (long c = 0; c < M; ++c) {
      out.entries(r, c) = H.entries(keep_positions[r], keep_positions[c]);
    }
  }
  return out;
}

void write_debug_dump(const HermitianMatrix& H, std::ostream& out) {
  out << H.size() << ' ' << to_string(H.spec.distribution) << ' ' << H.spec.seed << '\n';
  char buf[96];
  for (long r = 0; r < H.size(); ++r) {
    for (long c = 0; c < H.size(); ++c) {
      const auto v = H.entries(r, c);
      std::snprintf(buf, sizeof(buf), "%d %d %.17g %.17g\n", H.labels[static_cast<std::size_t>(r)],
                    H.labels[static_cast<std::size_t>(c)], v.real(), v.imag());
      out << buf;
    }
  }
}

}  // namespace sclab::ensemble

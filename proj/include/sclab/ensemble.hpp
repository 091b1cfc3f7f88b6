#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "sclab/errors.hpp"
#include "sclab/rng.hpp"

namespace sclab::ensemble {

/// Entry law for the real components of a Wigner matrix. Every kind has
/// mean zero, off-diagonal component variance 1/2 and diagonal variance 1.
enum class EntryDistribution { Gaussian, Rademacher, Uniform };

const char* to_string(EntryDistribution kind);
EntryDistribution distribution_from_string(const std::string& name);

struct WignerSpec {
  long N = 0;
  EntryDistribution distribution = EntryDistribution::Gaussian;
  std::uint64_t seed = 0;
};

/// Hermitian sample, or a minor of one. `labels` are the surviving original
/// row/column indices (1-based); a fresh sample carries labels 1..N.
struct HermitianMatrix {
  Eigen::MatrixXcd entries;
  WignerSpec spec;
  std::vector<int> labels;

  long size() const { return entries.rows(); }

  /// Entry addressed by original labels.
  std::complex<double> entry(int row_label, int col_label) const;

  /// Storage position of an original label; throws if the label was deleted.
  int position(int label) const;
};

/// Draws the Hermitian Wigner sample determined by `spec`. Entries are
/// filled row-major over the upper triangle, then the diagonal, from a
/// single splitmix64 stream seeded with spec.seed.
HermitianMatrix sample_wigner(const WignerSpec& spec);

/// Minor H^(T): deletes the rows and columns whose original labels are in
/// `drop`. Deleting every index is rejected.
HermitianMatrix minor(const HermitianMatrix& H, const std::vector<int>& drop);

/// Component draws, exposed so distribution parameters can be tested directly.
std::pair<double, double> draw_offdiag_pair(EntryDistribution kind, SplitMix64& rng);
double draw_diag(EntryDistribution kind, SplitMix64& rng);

/// Debug fixture dump: header `N distribution seed`, then N^2 lines
/// `row col re im` in row-major order.
void write_debug_dump(const HermitianMatrix& H, std::ostream& out);

}  // namespace sclab::ensemble

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "sclab/ensemble.hpp"
#include "sclab/semicircle.hpp"

namespace sclab::spectral {

using semicircle::SpectralPoint;
using Complex = std::complex<double>;

struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;  // ascending
  std::optional<Eigen::MatrixXcd> eigenvectors;

  long size() const { return eigenvalues.size(); }
};

/// Dense Hermitian eigendecomposition. Non-Hermitian input is rejected with
/// a report of the worst symmetry violation.
SpectralDecomposition eigendecompose(const ensemble::HermitianMatrix& H, bool want_vectors);

/// Empirical Stieltjes transform m(z) = (1/N) sum_a 1/(lambda_a - z).
Complex stieltjes(const SpectralDecomposition& decomposition, const SpectralPoint& z);

/// Dense resolvent of a minor, addressed by original labels.
struct ResolventMatrix {
  Eigen::MatrixXcd values;
  std::vector<int> labels;

  long size() const { return values.rows(); }
  Complex entry(int row_label, int col_label) const;
  int position(int label) const;
};

/// G^(T)(z) = (H^(T) - z)^{-1}. The inverse residual is checked against
/// 1e-8; a failure cannot happen for eta > 0 and would signal a bug.
ResolventMatrix resolvent(const ensemble::HermitianMatrix& H, const SpectralPoint& z,
                          const std::vector<int>& drop = {});

/// Memoizes minor resolvents of one (H, z) pair, keyed by the deleted set.
class MinorResolventCache {
 public:
  MinorResolventCache(const ensemble::HermitianMatrix& H, const SpectralPoint& z)
      : H_(H), z_(z) {}

  /// `drop` need not be sorted; duplicates are rejected by the minor.
  const ResolventMatrix& get(std::vector<int> drop);

 private:
  const ensemble::HermitianMatrix& H_;
  SpectralPoint z_;
  std::map<std::vector<int>, ResolventMatrix> cache_;
};

/// Worst absolute residuals of the resolvent minor identities, evaluated
/// exhaustively over all index choices with upper sets |T| <= 2.
struct IdentityReport {
  double schur_diag = 0.0;      // G_jj against the Schur complement form
  double minor_diag = 0.0;      // G_kk vs G^(j)_kk + G_jk G_kj / G_jj
  double offdiag_family = 0.0;  // G^(T)_ij = G^(Tk)_ij + G^(T)_ik G^(T)_kj / G^(T)_kk
  double reciprocal = 0.0;      // 1/G^(T)_ii expansion
  double offdiag_schur = 0.0;   // G^(T)_kl = G^(T)_ll G^(Tl)_kk K_kl
  double ward = 0.0;            // (1/N^2) sum |G_jk|^2 = Im m / (N eta)
  double max_residual = 0.0;
};

IdentityReport identity_suite(const ensemble::HermitianMatrix& H, const SpectralPoint& z);

/// Per-index error decomposition of the self-consistent equation for m.
struct ErrorDecomposition {
  SpectralPoint z;
  Complex m;                     // empirical Stieltjes transform
  Complex lambda;                // m - m_sc
  std::vector<Complex> upsilon;  // Upsilon_j
  std::vector<Complex> zvar;     // Z_j = (I - E_j) a_j^* G^(j) a_j
  Complex R;                     // (1/N) sum_j Upsilon_j G_jj
};

ErrorDecomposition error_terms(const ensemble::HermitianMatrix& H, const SpectralPoint& z);

/// Root of Lambda^2 + (2 m_sc + z) Lambda + R = 0 on the physical branch,
/// Lambda = -sqrt_upper(z^2/4 - 1) + sqrt_upper(z^2/4 - 1 - R).
Complex lambda_from_R(const SpectralPoint& z, Complex R);

}  // namespace sclab::spectral

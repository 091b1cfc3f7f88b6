#include "sclab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sclab::spectral {

namespace {

void require_hermitian(const ensemble::HermitianMatrix& H) {
  const long N = H.size();
  for (long r = 0; r < N; ++r) {
    for (long c = r; c < N; ++c) {
      const Complex a = H.entries(r, c);
      const Complex b = std::conj(H.entries(c, r));
      if (a != b) {
        std::ostringstream msg;
        msg << "matrix is not Hermitian: entry (" << H.labels[static_cast<std::size_t>(r)] << ","
            << H.labels[static_cast<std::size_t>(c)] << ") = " << a
            << " but conj of transpose is " << b;
        throw ValidationError(msg.str());
      }
    }
  }
}

}  // namespace

SpectralDecomposition eigendecompose(const ensemble::HermitianMatrix& H, bool want_vectors) {
  require_hermitian(H);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver;
  solver.compute(H.entries, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("Hermitian eigendecomposition failed to converge");
  }
  SpectralDecomposition out;
  out.eigenvalues = solver.eigenvalues();
  if (want_vectors) {
    out.eigenvectors = solver.eigenvectors();
  }
  return out;
}

Complex stieltjes(const SpectralDecomposition& decomposition, const SpectralPoint& z) {
  const long N = decomposition.size();
  const Complex zz = z.z();
  Complex sum(0.0, 0.0);
  for (long a = 0; a < N; ++a) {
    sum += 1.0 / (decomposition.eigenvalues(a) - zz);
  }
  return sum / static_cast<double>(N);
}

Complex ResolventMatrix::entry(int row_label, int col_label) const {
  return values(position(row_label), position(col_label));
}

int ResolventMatrix::position(int label) const {
  const auto it = std::lower_bound(labels.begin(), labels.end(), label);
  if (it == labels.end() || *it != label) {
    throw ValidationError("label " + std::to_string(label) + " is not present in this resolvent");
  }
  return static_cast<int>(it - labels.begin());
}

ResolventMatrix resolvent(const ensemble::HermitianMatrix& H, const SpectralPoint& z,
                          const std::vector<int>& drop) {
  const ensemble::HermitianMatrix M = ensemble::minor(H, drop);
  const long n = M.size();
  Eigen::MatrixXcd shifted = M.entries;
  shifted.diagonal().array() -= z.z();

  ResolventMatrix out;
  out.values = shifted.partialPivLu().inverse();
  out.labels = M.labels;

  const double residual =
      (shifted * out.values - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (residual > 1e-8) {
    std::ostringstream msg;
    msg << "resolvent inverse residual " << residual << " exceeds 1e-8 (eta = " << z.eta() << ")";
    throw NumericError(msg.str());
  }
  return out;
}

const ResolventMatrix& MinorResolventCache::get(std::vector<int> drop) {
  std::sort(drop.begin(), drop.end());
  auto it = cache_.find(drop);
  if (it == cache_.end()) {
    it = cache_.emplace(drop, resolvent(H_, z_, drop)).first;
  }
  return it->second;
}

namespace {

// a_k^{(T l)*} G^{(T k l)} a_l^{(T k)}: quadratic form of two matrix columns
// against a minor resolvent, all addressed by original labels.
Complex column_quadratic_form(const ensemble::HermitianMatrix& H, const ResolventMatrix& G,
                              int k, int l) {
  Complex sum(0.0, 0.0);
  for (long i = 0; i < G.size(); ++i) {
    const int li = G.labels[static_cast<std::size_t>(i)];
    const Complex left = std::conj(H.entry(li, k));
    for (long j = 0; j < G.size(); ++j) {
      const int lj = G.labels[static_cast<std::size_t>(j)];
      sum += left * G.values(i, j) * H.entry(lj, l);
    }
  }
  return sum;
}

std::vector<std::vector<int>> subsets_up_to_two(const std::vector<int>& labels) {
  std::vector<std::vector<int>> subsets;
  subsets.push_back({});
  for (std::size_t a = 0; a < labels.size(); ++a) {
    subsets.push_back({labels[a]});
    for (std::size_t b = a + 1; b < labels.size(); ++b) {
      subsets.push_back({labels[a], labels[b]});
    }
  }
  return subsets;
}

}  // namespace

IdentityReport identity_suite(const ensemble::HermitianMatrix& H, const SpectralPoint& z) {
  const long N = H.size();
  if (N < 3) {
    throw ValidationError("identity_suite requires N >= 3");
  }
  require_hermitian(H);

  MinorResolventCache cache(H, z);
  const ResolventMatrix& G = cache.get({});
  IdentityReport report;

  // (a) Diagonal Schur complement: G_jj = 1/(h_jj - z - a_j^* G^(j) a_j).
  for (int j : H.labels) {
    const ResolventMatrix& Gj = cache.get({j});
    const Complex quad = column_quadratic_form(H, Gj, j, j);
    const Complex expected = 1.0 / (H.entry(j, j) - z.z() - quad);
    report.schur_diag = std::max(report.schur_diag, std::abs(G.entry(j, j) - expected));
  }

  // (b) Diagonal minor comparison: G_kk = G^(j)_kk + G_jk G_kj / G_jj.
  for (int j : H.labels) {
    const ResolventMatrix& Gj = cache.get({j});
    for (int k : H.labels) {
      if (k == j) continue;
      const Complex expected = Gj.entry(k, k) + G.entry(j, k) * G.entry(k, j) / G.entry(j, j);
      report.minor_diag = std::max(report.minor_diag, std::abs(G.entry(k, k) - expected));
    }
  }

  const auto upper_sets = subsets_up_to_two(H.labels);

  for (const auto& T : upper_sets) {
    const ResolventMatrix& GT = cache.get(T);
    const auto in_T = [&T](int label) {
      return std::find(T.begin(), T.end(), label) != T.end();
    };

    for (int k : H.labels) {
      if (in_T(k)) continue;
      std::vector<int> Tk = T;
      Tk.push_back(k);
      const ResolventMatrix& GTk = cache.get(Tk);

      // (c) One-step expansion of any entry, diagonal (i == j) included:
      // G^(T)_ij = G^(Tk)_ij + G^(T)_ik G^(T)_kj / G^(T)_kk.
      for (int i : H.labels) {
        if (in_T(i) || i == k) continue;
        for (int j : H.labels) {
          if (in_T(j) || j == k) continue;
          const Complex expected =
              GTk.entry(i, j) + GT.entry(i, k) * GT.entry(k, j) / GT.entry(k, k);
          report.offdiag_family =
              std::max(report.offdiag_family, std::abs(GT.entry(i, j) - expected));
        }
      }

      // (d) Reciprocal form:
      // 1/G^(T)_ii = 1/G^(Tk)_ii - G^(T)_ik G^(T)_ki / (G^(T)_ii G^(Tk)_ii G^(T)_kk).
      for (int i : H.labels) {
        if (in_T(i) || i == k) continue;
        const Complex expected = 1.0 / GTk.entry(i, i) -
                                 GT.entry(i, k) * GT.entry(k, i) /
                                     (GT.entry(i, i) * GTk.entry(i, i) * GT.entry(k, k));
        report.reciprocal =
            std::max(report.reciprocal, std::abs(1.0 / GT.entry(i, i) - expected));
      }

      // (e) Off-diagonal Schur form: G^(T)_kl = -G^(T)_ll G^(Tl)_kk K_kl with
      // K_kl = h_kl - a_k^{(Tl)*} G^(Tkl) a_l^{(Tk)}. The sign follows from
      // the 2x2 closed form, G_12 = -h_12 / det(H - z).
      for (int l : H.labels) {
        if (in_T(l) || l == k) continue;
        if (H.size() - static_cast<long>(T.size()) < 3) continue;  // needs a nonempty G^(Tkl)
        std::vector<int> Tl = T;
        Tl.push_back(l);
        std::vector<int> Tkl = Tk;
        Tkl.push_back(l);
        const ResolventMatrix& GTl = cache.get(Tl);
        const ResolventMatrix& GTkl = cache.get(Tkl);
        const Complex K = H.entry(k, l) - column_quadratic_form(H, GTkl, k, l);
        const Complex expected = -GT.entry(l, l) * GTl.entry(k, k) * K;
        report.offdiag_schur =
            std::max(report.offdiag_schur, std::abs(GT.entry(k, l) - expected));
      }
    }
  }

  // (f) Ward identity: (1/N^2) sum_{j,k} |G_jk|^2 = Im m / (N eta).
  const Complex m = G.values.trace() / static_cast<double>(N);
  const double lhs = G.values.squaredNorm() / static_cast<double>(N * N);
  const double rhs = m.imag() / (static_cast<double>(N) * z.eta());
  report.ward = std::abs(lhs - rhs);

  report.max_residual = std::max({report.schur_diag, report.minor_diag, report.offdiag_family,
                                  report.reciprocal, report.offdiag_schur, report.ward});
  return report;
}

ErrorDecomposition error_terms(const ensemble::HermitianMatrix& H, const SpectralPoint& z) {
  const long N = H.size();
  if (N < 1) {
    throw ValidationError("error_terms requires N >= 1");
  }
  require_hermitian(H);

  MinorResolventCache cache(H, z);
  const ResolventMatrix& G = cache.get({});
  const Complex m = G.values.trace() / static_cast<double>(N);

  ErrorDecomposition out{z, m, m - semicircle::msc(z), {}, {}, Complex(0.0, 0.0)};
  out.upsilon.reserve(static_cast<std::size_t>(N));
  out.zvar.reserve(static_cast<std::size_t>(N));

  Complex R(0.0, 0.0);
  for (long p = 0; p < N; ++p) {
    const int j = H.labels[static_cast<std::size_t>(p)];
    Complex zj(0.0, 0.0);
    if (N > 1) {
      const ResolventMatrix& Gj = cache.get({j});
      const Complex quad = column_quadratic_form(H, Gj, j, j);
      // E_j a_j^* G^(j) a_j = (1/N) sum_{k != j} G^(j)_kk.
      const Complex conditional_mean = Gj.values.trace() / static_cast<double>(N);
      zj = quad - conditional_mean;
    }
    const Complex gjj = G.values(p, p);
    const Complex row_sum = (G.values.row(p) * G.values.col(p)).value();
    const Complex upsilon =
        -H.entries(p, p) - row_sum / (gjj * static_cast<double>(N)) + zj;
    out.upsilon.push_back(upsilon);
    out.zvar.push_back(zj);
    R += upsilon * gjj;
  }
  out.R = R / static_cast<double>(N);
  return out;
}

Complex lambda_from_R(const SpectralPoint& z, Complex R) {
  const Complex w = z.z() * z.z() / 4.0 - 1.0;
  return semicircle::sqrt_upper(w - R) - semicircle::sqrt_upper(w);
}

}  // namespace sclab::spectral

#pragma once

#include <complex>
#include <string>
#include <vector>

#include "sclab/ensemble.hpp"
#include "sclab/semicircle.hpp"

namespace sclab::expansion {

/// One resolvent entry in a monomial: G^(T)_ij in a numerator, 1/G^(T)_ii in
/// a denominator, or an off-diagonal G^(T)_ij (numerators only).
enum class FactorKind { DiagNumerator, DiagDenominator, OffDiag };

struct ResolventFactor {
  FactorKind kind = FactorKind::DiagNumerator;
  int row = 0;
  int col = 0;
  std::vector<int> upper;  // sorted ascending, excludes row and col
};

/// Signed ordered product of resolvent factors.
struct Monomial {
  int sign = 1;
  std::vector<ResolventFactor> factors;
};

/// Initial monomial: A-type is 1/G_kk, B-type is G_kk.
enum class InitialKind { AType, BType };

struct ExpansionConfig {
  InitialKind initial = InitialKind::AType;
  int k = 1;
  std::vector<int> lone_coords;  // coordinate values of the lone labels
  int q = 1;
};

enum class TerminalReason { MaximallyExpanded, OffdiagOverflow };

struct ExpansionTerm {
  std::string sigma;  // rewrite history, '0' and '1'
  Monomial monomial;
  TerminalReason terminal_reason = TerminalReason::MaximallyExpanded;
};

struct LoneLabels {
  std::vector<int> positions;  // 1-based positions whose coordinate is unique
  std::vector<int> coords;     // the coordinate values at those positions
};

LoneLabels lone_labels(const std::vector<int>& coordinates);

/// A factor is maximally expanded when every lone coordinate appears in its
/// upper set or equals its row or its column.
bool is_maximally_expanded(const ResolventFactor& factor, const std::vector<int>& coords);

/// Runs the rewrite tree to completion. Leaves are produced depth-first
/// with the 0-branch before the 1-branch, so the order is deterministic.
std::vector<ExpansionTerm> expand(const ExpansionConfig& config);

struct StructuralStats {
  int gamma = 0;  // off-diagonal factors
  int delta = 0;  // diagonal factors, numerator and denominator
  int ones = 0;   // count of '1' in sigma
};

StructuralStats structural_stats(const ExpansionTerm& term);

/// Numeric value of a monomial against a concrete matrix: the signed product
/// of minor resolvent entries (reciprocals for denominators).
std::complex<double> evaluate_monomial(const Monomial& monomial,
                                       const ensemble::HermitianMatrix& H,
                                       const semicircle::SpectralPoint& z);

/// Relative residual |sum of leaves - initial| / |initial| for an expansion
/// evaluated numerically; every rewrite is an identity, so this is rounding
/// noise only.
double verify_reconstruction(const ExpansionConfig& config, const ensemble::HermitianMatrix& H,
                             const semicircle::SpectralPoint& z);

/// `kind(i,j|T)` with T comma-separated ascending.
std::string format_factor(const ResolventFactor& factor);

/// One line per leaf: sigma TAB sign TAB factor-list.
std::string dump_terms(const std::vector<ExpansionTerm>& terms);

/// Cardinality bound for the leaf set: sum_{k=0}^{2q} C(4q(2q+3), k).
unsigned long long leaf_count_bound(int q);

}  // namespace sclab::expansion

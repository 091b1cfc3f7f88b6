#include "sclab/expansion.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

#include "sclab/spectral.hpp"

namespace sclab::expansion {

namespace {

bool contains(const std::vector<int>& sorted, int value) {
  return std::binary_search(sorted.begin(), sorted.end(), value);
}

void insert_sorted(std::vector<int>& sorted, int value) {
  sorted.insert(std::upper_bound(sorted.begin(), sorted.end(), value), value);
}

int offdiag_count(const Monomial& m) {
  int gamma = 0;
  for (const auto& f : m.factors) {
    if (f.kind == FactorKind::OffDiag) ++gamma;
  }
  return gamma;
}

struct Expander {
  std::vector<int> coords;  // sorted ascending
  int q = 1;
  std::size_t sigma_cap = 0;
  std::vector<ExpansionTerm> leaves;

  // Smallest lone coordinate not yet covered by the factor.
  int pick_u(const ResolventFactor& f) const {
    for (int c : coords) {
      if (c != f.row && c != f.col && !contains(f.upper, c)) {
        return c;
      }
    }
    throw NumericError("no expansion coordinate available for a non-maximal factor");
  }

  void run(Monomial m, std::string sigma) {
    if (sigma.size() > sigma_cap) {
      throw NumericError("expansion depth cap exceeded: sigma length " +
                         std::to_string(sigma.size()) + " > " + std::to_string(sigma_cap));
    }
    if (offdiag_count(m) > 2 * q) {
      leaves.push_back({std::move(sigma), std::move(m), TerminalReason::OffdiagOverflow});
      return;
    }
    std::size_t target = m.factors.size();
    for (std::size_t i = 0; i < m.factors.size(); ++i) {
      if (!is_maximally_expanded(m.factors[i], coords)) {
        target = i;
        break;
      }
    }
    if (target == m.factors.size()) {
      leaves.push_back({std::move(sigma), std::move(m), TerminalReason::MaximallyExpanded});
      return;
    }

    const ResolventFactor f = m.factors[target];
    const int u = pick_u(f);

    // 0-branch: push u onto the upper set of the targeted factor.
    {
      Monomial child = m;
      insert_sorted(child.factors[target].upper, u);
      run(std::move(child), sigma + '0');
    }

    // 1-branch: replace the factor in place, preserving written order.
    {
      Monomial child = m;
      std::vector<ResolventFactor> repl;
      switch (f.kind) {
        case FactorKind::OffDiag:
          repl = {{FactorKind::DiagDenominator, u, u, f.upper},
                  {FactorKind::OffDiag, f.row, u, f.upper},
                  {FactorKind::OffDiag, u, f.col, f.upper}};
          break;
        case FactorKind::DiagNumerator:
          repl = {{FactorKind::OffDiag, f.row, u, f.upper},
                  {FactorKind::OffDiag, u, f.row, f.upper},
                  {FactorKind::DiagDenominator, u, u, f.upper}};
          break;
        case FactorKind::DiagDenominator: {
          std::vector<int> upper_u = f.upper;
          insert_sorted(upper_u, u);
          repl = {{FactorKind::DiagDenominator, f.row, f.row, f.upper},
                  {FactorKind::DiagDenominator, u, u, f.upper},
                  {FactorKind::DiagDenominator, f.row, f.row, upper_u},
                  {FactorKind::OffDiag, f.row, u, f.upper},
                  {FactorKind::OffDiag, u, f.row, f.upper}};
          child.sign = -child.sign;
          break;
        }
      }
      child.factors.erase(child.factors.begin() + static_cast<std::ptrdiff_t>(target));
      child.factors.insert(child.factors.begin() + static_cast<std::ptrdiff_t>(target),
                           repl.begin(), repl.end());
      run(std::move(child), sigma + '1');
    }
  }
};

void validate_config(const ExpansionConfig& config) {
  if (config.q < 1) {
    throw ValidationError("expansion requires q >= 1");
  }
  if (config.k < 1) {
    throw ValidationError("expansion requires k >= 1");
  }
  for (int c : config.lone_coords) {
    if (c < 1) {
      throw ValidationError("lone coordinates must be >= 1");
    }
    if (c == config.k) {
      throw ValidationError("the expanded index k must not be a lone coordinate");
    }
  }
}

}  // namespace

LoneLabels lone_labels(const std::vector<int>& coordinates) {
  std::map<int, int> counts;
  for (int c : coordinates) {
    ++counts[c];
  }
  LoneLabels out;
  for (std::size_t s = 0; s < coordinates.size(); ++s) {
    if (counts[coordinates[s]] == 1) {
      out.positions.push_back(static_cast<int>(s + 1));
      out.coords.push_back(coordinates[s]);
    }
  }
  std::sort(out.coords.begin(), out.coords.end());
  return out;
}

bool is_maximally_expanded(const ResolventFactor& factor, const std::vector<int>& coords) {
  for (int c : coords) {
    if (c != factor.row && c != factor.col && !contains(factor.upper, c)) {
      return false;
    }
  }
  return true;
}

std::vector<ExpansionTerm> expand(const ExpansionConfig& config) {
  validate_config(config);

  Expander engine;
  engine.coords = config.lone_coords;
  std::sort(engine.coords.begin(), engine.coords.end());
  engine.coords.erase(std::unique(engine.coords.begin(), engine.coords.end()),
                      engine.coords.end());
  engine.q = config.q;
  engine.sigma_cap = static_cast<std::size_t>(2 * config.q) *
                         static_cast<std::size_t>(4 * config.q + 5) +
                     static_cast<std::size_t>(2 * config.q);

  Monomial root;
  root.sign = 1;
  root.factors = {{config.initial == InitialKind::AType ? FactorKind::DiagDenominator
                                                        : FactorKind::DiagNumerator,
                   config.k, config.k, {}}};
  engine.run(std::move(root), "");
  return std::move(engine.leaves);
}

StructuralStats structural_stats(const ExpansionTerm& term) {
  StructuralStats stats;
  for (const auto& f : term.monomial.factors) {
    if (f.kind == FactorKind::OffDiag) {
      ++stats.gamma;
    } else {
      ++stats.delta;
    }
  }
  stats.ones = static_cast<int>(std::count(term.sigma.begin(), term.sigma.end(), '1'));
  return stats;
}

namespace {

std::complex<double> evaluate_with_cache(const Monomial& monomial,
                                         spectral::MinorResolventCache& cache) {
  std::complex<double> value(static_cast<double>(monomial.sign), 0.0);
  for (const auto& f : monomial.factors) {
    if (contains(f.upper, f.row) || contains(f.upper, f.col)) {
      throw ValidationError("factor indices must be disjoint from the upper set");
    }
    const auto& G = cache.get(f.upper);
    const std::complex<double> entry = G.entry(f.row, f.col);
    if (f.kind == FactorKind::DiagDenominator) {
      if (std::abs(entry) < 1e-13) {
        std::ostringstream msg;
        msg << "near-singular evaluation: |G_" << f.row << f.row << "| = " << std::abs(entry);
        throw NumericError(msg.str());
      }
      value /= entry;
    } else {
      value *= entry;
    }
  }
  return value;
}

}  // namespace

std::complex<double> evaluate_monomial(const Monomial& monomial,
                                       const ensemble::HermitianMatrix& H,
                                       const semicircle::SpectralPoint& z) {
  spectral::MinorResolventCache cache(H, z);
  return evaluate_with_cache(monomial, cache);
}

double verify_reconstruction(const ExpansionConfig& config, const ensemble::HermitianMatrix& H,
                             const semicircle::SpectralPoint& z) {
  if (H.size() < static_cast<long>(config.lone_coords.size()) + 2) {
    throw ValidationError("verify_reconstruction requires N >= |coords| + 2");
  }
  const auto terms = expand(config);

  spectral::MinorResolventCache cache(H, z);
  Monomial root;
  root.sign = 1;
  root.factors = {{config.initial == InitialKind::AType ? FactorKind::DiagDenominator
                                                        : FactorKind::DiagNumerator,
                   config.k, config.k, {}}};
  const std::complex<double> initial = evaluate_with_cache(root, cache);

  std::complex<double> sum(0.0, 0.0);
  for (const auto& term : terms) {
    sum += evaluate_with_cache(term.monomial, cache);
  }
  return std::abs(sum - initial) / std::abs(initial);
}

std::string format_factor(const ResolventFactor& factor) {
  std::ostringstream out;
  switch (factor.kind) {
    case FactorKind::DiagNumerator:
      out << "diag_numerator";
      break;
    case FactorKind::DiagDenominator:
      out << "diag_denominator";
      break;
    case FactorKind::OffDiag:
      out << "offdiag";
      break;
  }
  out << '(' << factor.row << ',' << factor.col << '|';
  for (std::size_t i = 0; i < factor.upper.size(); ++i) {
    if (i > 0) out << ',';
    out << factor.upper[i];
  }
  out << ')';
  return out.str();
}

std::string dump_terms(const std::vector<ExpansionTerm>& terms) {
  std::ostringstream out;
  for (const auto& term : terms) {
    out << term.sigma << '\t' << (term.monomial.sign > 0 ? "+1" : "-1") << '\t';
    for (std::size_t i = 0; i < term.monomial.factors.size(); ++i) {
      if (i > 0) out << ' ';
      out << format_factor(term.monomial.factors[i]);
    }
    out << '\n';
  }
  return out.str();
}

unsigned long long leaf_count_bound(int q) {
  if (q < 1) {
    throw ValidationError("leaf_count_bound requires q >= 1");
  }
  const unsigned long long n = static_cast<unsigned long long>(4 * q) *
                               static_cast<unsigned long long>(2 * q + 3);
  unsigned long long total = 0;
  unsigned long long binom = 1;  // C(n, 0)
  for (int k = 0; k <= 2 * q; ++k) {
    if (k > 0) {
      // C(n, k) = C(n, k-1) * (n - k + 1) / k, exact at every step.
      if (binom > std::numeric_limits<unsigned long long>::max() / (n - k + 1)) {
        return std::numeric_limits<unsigned long long>::max();
      }
      binom = binom * (n - static_cast<unsigned long long>(k) + 1) /
              static_cast<unsigned long long>(k);
    }
    if (total > std::numeric_limits<unsigned long long>::max() - binom) {
      return std::numeric_limits<unsigned long long>::max();
    }
    total += binom;
  }
  return total;
}

}  // namespace sclab::expansion

#include "sclab/semicircle.hpp"

#include <cmath>
#include <numbers>

namespace sclab::semicircle {

Complex sqrt_upper(Complex w) {
  Complex s = std::sqrt(w);  // principal branch, Re >= 0
  if (s.imag() < 0.0) {
    s = -s;
  }
  return s;
}

Complex msc(const SpectralPoint& z) {
  const Complex zz = z.z();
  return -zz / 2.0 + sqrt_upper(zz * zz / 4.0 - 1.0);
}

double rho_sc(double x) {
  if (std::abs(x) >= 2.0) {
    return 0.0;
  }
  return std::sqrt(1.0 - x * x / 4.0) / std::numbers::pi;
}

double n_sc_cdf(double E) {
  if (E <= -2.0) {
    return 0.0;
  }
  if (E >= 2.0) {
    return 1.0;
  }
  // Antiderivative of rho_sc; see the derivative check in the unit tests.
  return 0.5 + E * std::sqrt(4.0 - E * E) / (4.0 * std::numbers::pi) +
         std::asin(E / 2.0) / std::numbers::pi;
}

double classical_location(long N, long alpha) {
  if (N < 1) {
    throw ValidationError("classical_location requires N >= 1");
  }
  if (alpha < 1 || alpha > N) {
    throw ValidationError("classical_location requires 1 <= alpha <= N");
  }
  const double target = static_cast<double>(alpha) / static_cast<double>(N);
  if (target >= 1.0) {
    return 2.0;
  }
  if (target <= 0.0) {
    return -2.0;
  }
  // n_sc_cdf is strictly increasing on [-2, 2]; plain bisection.
  double lo = -2.0;
  double hi = 2.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (n_sc_cdf(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> classical_locations(long N) {
  std::vector<double> locs;
  locs.reserve(static_cast<std::size_t>(N));
  for (long alpha = 1; alpha <= N; ++alpha) {
    locs.push_back(classical_location(N, alpha));
  }
  return locs;
}

SemicircleReport check_msc_bounds(const SpectralPoint& z) {
  SemicircleReport report;
  const Complex m = msc(z);
  report.msc = m;

  const double abs_m = std::abs(m);
  const double abs_z = std::abs(z.z());
  const double denom = std::abs(m * m - 1.0);
  const double eta = z.eta();
  const double sqrt_eta = std::sqrt(eta);

  report.bound_lower_ok = 1.0 / (1.0 + abs_z) < abs_m;
  report.bound_upper_ok = abs_m < 1.0;
  report.ratio_im_ok = m.imag() / denom <= 1.0;
  report.ratio_eta_ok = eta / denom <= sqrt_eta * (1.0 + sqrt_eta);
  return report;
}

}  // namespace sclab::semicircle

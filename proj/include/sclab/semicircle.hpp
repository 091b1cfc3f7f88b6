#pragma once

#include <complex>
#include <vector>

#include "sclab/errors.hpp"

namespace sclab::semicircle {

using Complex = std::complex<double>;

/// Evaluation point z = E + i*eta, restricted to the open upper half plane.
class SpectralPoint {
 public:
  SpectralPoint(double E, double eta) : E_(E), eta_(eta) {
    if (!(eta > 0.0)) {
      throw ValidationError("SpectralPoint requires eta > 0");
    }
  }

  double E() const { return E_; }
  double eta() const { return eta_; }

  /// Distance of the energy to the spectral edge, kappa = ||E| - 2|.
  double kappa() const { return std::abs(std::abs(E_) - 2.0); }

  Complex z() const { return Complex(E_, eta_); }

 private:
  double E_;
  double eta_;
};

/// Inequality report for the semicircle Stieltjes transform at one point.
struct SemicircleReport {
  Complex msc;
  bool bound_lower_ok = false;  // (1+|z|)^{-1} < |m|
  bool bound_upper_ok = false;  // |m| < 1
  bool ratio_im_ok = false;     // Im m / |m^2 - 1| <= 1
  bool ratio_eta_ok = false;    // eta / |m^2 - 1| <= sqrt(eta)(1 + sqrt(eta))
};

/// Square root with Im >= 0, nonnegative on the positive real axis. All
/// branch-sensitive formulas in the library route through this function.
Complex sqrt_upper(Complex w);

/// Stieltjes transform of the semicircle law, m = -z/2 + sqrt_upper(z^2/4 - 1).
Complex msc(const SpectralPoint& z);

/// Semicircle density (1/pi) sqrt(1 - x^2/4) on [-2, 2], zero outside.
double rho_sc(double x);

/// Cumulative distribution of the semicircle law (closed form).
double n_sc_cdf(double E);

/// Classical location gamma_alpha: the alpha/N quantile of the semicircle law.
double classical_location(long N, long alpha);

/// All classical locations for dimension N, ascending.
std::vector<double> classical_locations(long N);

SemicircleReport check_msc_bounds(const SpectralPoint& z);

}  // namespace sclab::semicircle

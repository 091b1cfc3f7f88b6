#pragma once

// Test-only numeric oracles. These stay independent of the closed forms and
// identities they are used to validate.

#include <cmath>
#include <functional>

namespace oracles {

using Fn = std::function<double(double)>;

inline double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_impl(const Fn& f, double a, double b, double fa, double fm,
                                    double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson_impl(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_impl(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson quadrature, local tolerance 1e-12 by default.
inline double integrate(const Fn& f, double a, double b, double tol = 1e-12, int depth = 60) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  return adaptive_simpson_impl(f, a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, depth);
}

/// Root of a strictly increasing function on [lo, hi] by plain bisection.
inline double bisect_increasing(const Fn& f, double lo, double hi, double width = 1e-13) {
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracles

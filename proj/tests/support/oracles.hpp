#pragma once

// Independent numerical oracles for the test suites. Nothing here calls into
// the closed forms under test.

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "chainfountain/types.hpp"

namespace oracle {

/// Radical-inverse (van der Corput) value of `index` in `base`.
inline double radical_inverse(unsigned index, unsigned base) {
  double result = 0.0;
  double scale = 1.0 / base;
  while (index > 0) {
    result += scale * (index % base);
    index /= base;
    scale /= base;
  }
  return result;
}

/// `count` quasi-random (chi, theta0) pairs from the 2-3 Halton sequence,
/// mapped into (0, 1] x (0, pi/2). Index 0 is skipped so no point lands on 0.
inline std::vector<std::pair<double, double>> halton_domain(unsigned count) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(count);
  for (unsigned k = 1; k <= count; ++k) {
    const double chi = radical_inverse(k, 2);
    const double theta0 = radical_inverse(k, 3) * chainfountain::kHalfPi;
    pts.emplace_back(chi, theta0);
  }
  return pts;
}

namespace detail {
inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                           double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  // tolerances below the roundoff of the panel value are unreachable
  const double floor = 1e-15 * std::abs(left + right);
  if (depth <= 0 || std::abs(delta) <= 15.0 * std::max(tol, floor)) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

/// Adaptive Simpson quadrature with Richardson correction to absolute tolerance `tol`.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int max_depth = 50) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

/// Integrates over [a, b] split into `pieces` equal panels, each to relative
/// tolerance `rel` of a coarse magnitude estimate.
inline double integrate(const std::function<double(double)>& f, double a, double b, double rel,
                        int pieces = 64) {
  double total = 0.0;
  double magnitude = 0.0;
  const double h = (b - a) / pieces;
  for (int k = 0; k < pieces; ++k) magnitude += std::abs(f(a + (k + 0.5) * h)) * h;
  for (int k = 0; k < pieces; ++k) {
    const double lo = a + k * h;
    const double hi = k == pieces - 1 ? b : lo + h;
    total += adaptive_simpson(f, lo, hi, rel * magnitude / pieces);
  }
  return total;
}

/// Plain bisection for a sign change of f on [lo, hi].
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 300; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace oracle

#pragma once

#include <cmath>

#include "storagegame/model.hpp"

namespace storagegame {

struct BisectionResult {
  double root = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Bisection for a root of a continuous `f` with a sign change on [lo, hi].
/// Stops once the bracket is no wider than `tolerance`, the midpoint stops
/// moving, or `max_iterations` is reached. Throws Error(Numeric) if the
/// endpoints do not bracket a root.
template <typename F>
BisectionResult bisect(F&& f, double lo, double hi, double tolerance, int max_iterations) {
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return {lo, 0, true};
  if (f_hi == 0.0) return {hi, 0, true};
  if (std::signbit(f_lo) == std::signbit(f_hi) || std::isnan(f_lo) || std::isnan(f_hi))
    throw Error(ErrorKind::Numeric, "bisection: endpoints do not bracket a root");

  BisectionResult result;
  for (result.iterations = 1; result.iterations <= max_iterations; ++result.iterations) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) {
      result.converged = true;
      break;
    }
    const double f_mid = f(mid);
    if (f_mid == 0.0) return {mid, result.iterations, true};
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= tolerance) {
      result.converged = true;
      break;
    }
  }
  result.root = lo + 0.5 * (hi - lo);
  return result;
}

}  // namespace storagegame

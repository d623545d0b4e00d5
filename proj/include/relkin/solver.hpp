// Copyright 2026 The relkin Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <concepts>
#include <limits>
#include <sstream>

#include "relkin/errors.hpp"

namespace relkin {

struct ScalarRoot {
  double x = 0;
  double residual = 0;
  int iterations = 0;
};

/// Newton iteration kept inside a sign-change bracket [lo, hi]; a step
/// that leaves the bracket (or a vanishing slope) falls back to bisection.
/// Converges when |r(x)| <= tolerance(x).
template <typename R, typename DR, typename Tol>
  requires std::invocable<R, double> && std::invocable<DR, double> && std::invocable<Tol, double>
ScalarRoot safeguarded_newton(R&& residual, DR&& slope, Tol&& tolerance, double x0, double lo, double hi,
                              int max_iter) {
  double flo = residual(lo);
  const double fhi = residual(hi);
  if (std::abs(flo) <= tolerance(lo)) return {lo, flo, 0};
  if (std::abs(fhi) <= tolerance(hi)) return {hi, fhi, 0};
  if (std::signbit(flo) == std::signbit(fhi)) {
    std::ostringstream os;
    os << "root is not bracketed: r(" << lo << ") = " << flo << ", r(" << hi << ") = " << fhi;
    throw NoConvergence(os.str());
  }
  double x = (x0 > lo && x0 < hi) ? x0 : 0.5 * (lo + hi);
  for (int it = 1; it <= max_iter; ++it) {
    const double fx = residual(x);
    if (std::abs(fx) <= tolerance(x)) return {x, fx, it};
    if (std::signbit(fx) == std::signbit(flo)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
      // bracket exhausted at machine resolution
      return {x, fx, it};
    }
    const double df = slope(x);
    double next = x - fx / df;
    if (!std::isfinite(next) || next <= lo || next >= hi) next = 0.5 * (lo + hi);
    x = next;
  }
  std::ostringstream os;
  os << "safeguarded Newton did not converge in " << max_iter << " iterations (last x = " << x << ")";
  throw NoConvergence(os.str());
}

}  // namespace relkin

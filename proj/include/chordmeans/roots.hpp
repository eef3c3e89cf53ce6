#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "chordmeans/errors.hpp"

namespace chordmeans {

/// Root of f on a sign-changing bracket [lo, hi] by TOMS 748, terminated when
/// the bracket width falls below rel_tol relative to its midpoint.
template <class F>
double solve_bracketed(F&& f, double lo, double hi, double rel_tol = 1e-15,
                       int max_iter = 200) {
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw NumericalError("solve_bracketed: no sign change on [" +
                         std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  std::uintmax_t iters = static_cast<std::uintmax_t>(max_iter);
  auto tol = [rel_tol](double a, double b) {
    return std::abs(b - a) <= rel_tol * std::max(std::abs(a), std::abs(b));
  };
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
  return 0.5 * (a + b);
}

}  // namespace chordmeans

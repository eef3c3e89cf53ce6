#pragma once

// Quadrature rules shared by the chord functionals, the electrostatic energy
// and the Birman-Schwinger assembly.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "chordmeans/errors.hpp"

namespace chordmeans {

struct QuadratureResult {
  double value = 0.0;
  /// Absolute error estimate (difference to a coarser rule plus a roundoff
  /// floor).
  double error = 0.0;
};

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule by Newton iteration on the three-term
/// recurrence.
inline GaussLegendreRule gauss_legendre(int n) {
  detail::require(n >= 1, "gauss_legendre: order must be positive");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    // P_n(z) and P_n'(z)
    auto legendre = [n](double x) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * x * p2 - (j - 1.0) * p3) / j;
      }
      return std::pair{p1, n * (x * p1 - p2) / (x * x - 1.0)};
    };
    for (int iter = 0; iter < 100; ++iter) {
      const auto [pn, dpn] = legendre(z);
      const double step = pn / dpn;
      z -= step;
      if (std::abs(step) < 1e-15) break;
    }
    const double dp = legendre(z).second;
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

namespace detail {

inline double roundoff_floor(double abs_sum, std::size_t n_nodes) {
  return 4.0 * std::numeric_limits<double>::epsilon() *
         std::sqrt(static_cast<double>(std::max<std::size_t>(n_nodes, 1))) *
         abs_sum;
}

}  // namespace detail

/// Trapezoidal rule on the periodic interval [offset, offset + period) with n
/// equispaced nodes. Spectrally accurate for smooth periodic integrands; the
/// error estimate compares against the n/2-point subrule.
template <class F>
QuadratureResult periodic_trapezoid(F&& f, double period, int n,
                                    double offset = 0.0) {
  detail::require(n >= 2 && n % 2 == 0,
                  "periodic_trapezoid: node count must be even and >= 2");
  const double h = period / n;
  double even = 0.0;
  double odd = 0.0;
  double abs_sum = 0.0;
  for (int j = 0; j < n; ++j) {
    const double v = f(offset + j * h);
    (j % 2 == 0 ? even : odd) += v;
    abs_sum += std::abs(v);
  }
  QuadratureResult out;
  out.value = h * (even + odd);
  const double coarse = 2.0 * h * even;
  out.error = std::abs(out.value - coarse) +
              detail::roundoff_floor(h * abs_sum, static_cast<std::size_t>(n));
  return out;
}

/// Composite Gauss-Legendre quadrature over [a, b] split at the given interior
/// break points. Every smooth piece receives panels of `order` nodes, with the
/// panel count proportional to its length so that roughly `target_nodes`
/// nodes are used overall. The error estimate is the difference to the same
/// panels integrated with order/2 nodes.
template <class F>
QuadratureResult piecewise_gauss(F&& f, double a, double b,
                                 std::vector<double> breaks, int target_nodes,
                                 int order = 16) {
  detail::require(b > a, "piecewise_gauss: empty interval");
  const GaussLegendreRule fine = gauss_legendre(order);
  const GaussLegendreRule coarse = gauss_legendre(std::max(order / 2, 1));
  breaks.erase(std::remove_if(breaks.begin(), breaks.end(),
                              [&](double x) { return !(x > a && x < b); }),
               breaks.end());
  breaks.push_back(a);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  const double merge = 1e-13 * (b - a);
  std::vector<double> cuts;
  for (double x : breaks) {
    if (cuts.empty() || x - cuts.back() > merge) cuts.push_back(x);
  }
  cuts.back() = b;

  const double total = b - a;
  const int total_panels = std::max(1, target_nodes / order);
  double sum_fine = 0.0;
  double sum_coarse = 0.0;
  double abs_sum = 0.0;
  std::size_t n_nodes = 0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k];
    const double hi = cuts[k + 1];
    const int panels = std::max(
        1, static_cast<int>(std::lround(total_panels * (hi - lo) / total)));
    const double width = (hi - lo) / panels;
    for (int pnl = 0; pnl < panels; ++pnl) {
      const double p_lo = lo + pnl * width;
      const double half = 0.5 * width;
      const double mid = p_lo + half;
      for (std::size_t i = 0; i < fine.nodes.size(); ++i) {
        const double v = f(mid + half * fine.nodes[i]);
        sum_fine += half * fine.weights[i] * v;
        abs_sum += half * fine.weights[i] * std::abs(v);
      }
      for (std::size_t i = 0; i < coarse.nodes.size(); ++i) {
        sum_coarse += half * coarse.weights[i] * f(mid + half * coarse.nodes[i]);
      }
      n_nodes += fine.nodes.size();
    }
  }
  QuadratureResult out;
  out.value = sum_fine;
  out.error = std::abs(sum_fine - sum_coarse) +
              detail::roundoff_floor(abs_sum, n_nodes);
  return out;
}

}  // namespace chordmeans

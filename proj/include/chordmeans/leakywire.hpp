#pragma once

// Ground state of the leaky-wire operator -Delta - alpha delta(x - Gamma) in
// the plane through the Birman-Schwinger equation
//   (alpha / 2 pi) int_0^L K0(kappa |Gamma(s) - Gamma(s')|) phi(s') ds' = phi(s),
// discretized by a Nystrom rule that integrates the logarithmic diagonal
// singularity exactly against trigonometric polynomials.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "chordmeans/curve.hpp"
#include "chordmeans/errors.hpp"
#include "chordmeans/parallel.hpp"
#include "chordmeans/quadrature.hpp"
#include "chordmeans/roots.hpp"
#include "chordmeans/specfun.hpp"

namespace chordmeans {

inline constexpr int kDenseEigenLimit = 4096;

/// Symmetric Nystrom matrix of the Birman-Schwinger kernel on the grid
/// s_i = i L / n.
struct BSDiscretization {
  double alpha = 0.0;
  double kappa = 0.0;
  int n = 0;
  Eigen::MatrixXd matrix;
  nlohmann::json curve_id;
};

struct EigenPair {
  double value = 0.0;
  Eigen::VectorXd vector;
};

namespace detail {

// Weights R_j with int_0^{2 pi} ln(4 sin^2((t_i - tau)/2)) f(tau) dtau
// ~ sum_j R_{|i-j|} f(t_j), exact for trigonometric polynomials of degree
// < n/2; t_j = 2 pi j / n.
inline std::vector<double> log_weights(int n) {
  const int half = n / 2;
  std::vector<double> r(n);
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * std::numbers::pi * k / n;
    double sum = 0.0;
    for (int m = 1; m < half; ++m) sum += std::cos(m * t) / m;
    r[k] = -(2.0 * std::numbers::pi / half) * sum -
           (std::numbers::pi / (static_cast<double>(half) * half)) * std::cos(half * t);
  }
  return r;
}

// C-infinity step, 0 for x <= 0 and 1 for x >= 1.
inline double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

// Half-width in t of the region where the log part is split off. Outside
// 2 * width the kernel is smooth and I0 would only add cancellation; 0 means
// no window.
inline double split_width(double kappa, double jac, int n) {
  const double width = std::max(3.0 / (kappa * jac), 24.0 * std::numbers::pi / n);
  return 2.0 * width >= std::numbers::pi ? 0.0 : width;
}

inline void require_bs_curve(const ArcLengthCurve& curve) {
  if (curve.dimension() != 2) {
    throw DomainError("leaky wire: the curve must be planar (dimension 2)");
  }
  if (curve.smoothness() == SmoothnessClass::Degenerate) {
    throw DomainError("leaky wire: degenerate curve; the kernel is singular off the diagonal");
  }
}

// Kernel K0(kappa r_ij) integrated against the Nystrom weights in t, without
// the alpha / 2 pi factor and with the ds = (L / 2 pi) dt Jacobian.
inline Eigen::MatrixXd kernel_matrix(const ArcLengthCurve& curve, double kappa, int n) {
  require_bs_curve(curve);
  detail::require(kappa > 0.0, "leaky wire: kappa must be positive");
  detail::require(n >= 8 && n % 2 == 0, "leaky wire: n must be even and at least 8");
  const double length = curve.length();
  const double jac = length / (2.0 * std::numbers::pi);
  const double h = 2.0 * std::numbers::pi / n;
  std::vector<Point> pts(n);
  for (int i = 0; i < n; ++i) pts[i] = curve.eval(length * i / n);
  const std::vector<double> r = log_weights(n);
  std::vector<double> log4sin2(n);
  for (int k = 1; k < n; ++k) {
    const double s = std::sin(0.5 * h * k);
    log4sin2[k] = std::log(4.0 * s * s);
  }
  const double width = split_width(kappa, jac, n);
  std::vector<double> window(n, 1.0);
  if (width > 0.0) {
    for (int k = 1; k < n; ++k) {
      const double sigma = h * std::min(k, n - k);
      window[k] = 1.0 - smooth_step((sigma - width) / width);
    }
  }
  const double diag_b =
      -std::log(kappa * jac) + std::numbers::ln2 - std::numbers::egamma;

  Eigen::MatrixXd m(n, n);
  double closest = std::numeric_limits<double>::infinity();
  std::vector<double> row_closest(n, std::numeric_limits<double>::infinity());
  detail::parallel_for(
      n,
      [&](int i) {
        m(i, i) = jac * (-0.5 * r[0] + diag_b * h);
        for (int j = i + 1; j < n; ++j) {
          const double dist = (pts[i] - pts[j]).norm();
          row_closest[i] = std::min(row_closest[i], dist);
          const int k = j - i;
          double a = 0.0;
          double b = 0.0;
          if (dist > 0.0) {
            const K0Split sp = k0_split(kappa * dist);
            a = -0.5 * sp.log_part_coefficient * window[k];
            b = sp.value - a * log4sin2[k];
          }
          const double v = jac * (a * r[k] + b * h);
          m(i, j) = v;
          m(j, i) = v;
        }
      },
      64);
  for (double c : row_closest) closest = std::min(closest, c);
  if (!(closest > 1e-10 * length)) {
    throw DomainError("leaky wire: two grid points of the curve coincide; the "
                      "kernel is singular off the diagonal");
  }
  return m;
}

inline EigenPair power_iteration(const Eigen::MatrixXd& m, bool want_vector) {
  const int n = static_cast<int>(m.rows());
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
  double lambda = 0.0;
  for (int iter = 0; iter < 10000; ++iter) {
    Eigen::VectorXd w = m * v;
    const double next = v.dot(w);
    const double norm = w.norm();
    if (!(norm > 0.0)) throw NumericalError("power iteration: zero iterate");
    w /= norm;
    const double change = std::abs(next - lambda);
    v = std::move(w);
    lambda = next;
    if (iter > 2 && change <= 1e-15 * std::abs(lambda)) {
      EigenPair out;
      out.value = lambda;
      if (want_vector) out.vector = v;
      return out;
    }
  }
  throw NumericalError("power iteration did not converge");
}

}  // namespace detail

/// Nystrom discretization of the kernel (alpha / 2 pi) K0(kappa |Gamma(s) -
/// Gamma(s')|) on n equispaced arc-length nodes. The kernel is split as
/// A ln(4 sin^2((t - t')/2)) + B with A = -I0(kappa r)/2, so the log factor
/// is integrated with trigonometric weights and B with the trapezoidal rule.
/// Accurate while I0(kappa * diameter) stays moderate (kappa * diameter
/// below ~ 20).
inline BSDiscretization assemble_bs(const ArcLengthCurve& curve, double alpha,
                                    double kappa, int n) {
  detail::require(alpha > 0.0, "assemble_bs: alpha must be positive");
  BSDiscretization d;
  d.alpha = alpha;
  d.kappa = kappa;
  d.n = n;
  d.matrix = (alpha / (2.0 * std::numbers::pi)) * detail::kernel_matrix(curve, kappa, n);
  d.curve_id = curve.descriptor();
  return d;
}

/// Largest eigenvalue of the symmetric Nystrom matrix with its eigenvector,
/// normalized to unit length and positive sum.
inline EigenPair bs_lambda_max(const Eigen::MatrixXd& m, bool want_vector = true) {
  EigenPair out;
  if (m.rows() > kDenseEigenLimit) {
    out = detail::power_iteration(m, want_vector);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        m, want_vector ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
      throw NumericalError("bs_lambda_max: eigensolver did not converge");
    }
    const Eigen::Index last = m.rows() - 1;
    out.value = es.eigenvalues()[last];
    if (want_vector) out.vector = es.eigenvectors().col(last);
  }
  if (want_vector && out.vector.sum() < 0.0) out.vector = -out.vector;
  return out;
}

inline EigenPair bs_lambda_max(const BSDiscretization& d, bool want_vector = true) {
  return bs_lambda_max(d.matrix, want_vector);
}

struct GroundState {
  double epsilon1 = 0.0;
  double kappa_star = 0.0;
  int n = 0;
  /// |lambda_max(kappa_star) - 1|.
  double residual = 0.0;
  /// |kappa_star(n) - kappa_star(n/2)|.
  double kappa_change = 0.0;
  bool converged = false;
  Eigen::VectorXd eigenvector;
};

struct GroundStateOptions {
  /// Stop when kappa_star changes by less than tol between grid doublings.
  double tol = 1e-8;
  int n_initial = 64;
  int n_max = 2048;
};

namespace detail {

// kappa with lambda_max(kappa) = 1 at fixed n. Bracketed by a geometric scan
// from alpha/100 (upward while lambda > 1, downward otherwise) unless a
// bracketing guess is supplied.
inline double kappa_star_at(const ArcLengthCurve& curve, double alpha, int n,
                            double guess) {
  const double c = alpha / (2.0 * std::numbers::pi);
  auto f = [&](double kappa) {
    return c * bs_lambda_max(kernel_matrix(curve, kappa, n), false).value - 1.0;
  };
  double lo = 0.0;
  double hi = 0.0;
  double flo = 0.0;
  double fhi = 0.0;
  if (guess > 0.0) {
    lo = guess * (1.0 - 1e-3);
    hi = guess * (1.0 + 1e-3);
    flo = f(lo);
    fhi = f(hi);
  }
  if (!(flo > 0.0 && fhi < 0.0)) {
    std::ostringstream scan;
    double k = alpha / 100.0;
    double fk = f(k);
    scan << "kappa=" << k << " lambda=" << fk + 1.0;
    const double factor = 2.0;
    int steps = 0;
    if (fk > 0.0) {
      while (fk > 0.0) {
        if (++steps > 60) throw NumericalError("ground_state: no bracket; scanned " + scan.str());
        lo = k;
        flo = fk;
        k *= factor;
        fk = f(k);
        scan << ", kappa=" << k << " lambda=" << fk + 1.0;
      }
      hi = k;
      fhi = fk;
    } else {
      while (!(fk > 0.0)) {
        if (++steps > 60) throw NumericalError("ground_state: no bracket; scanned " + scan.str());
        hi = k;
        fhi = fk;
        k /= factor;
        fk = f(k);
        scan << ", kappa=" << k << " lambda=" << fk + 1.0;
      }
      lo = k;
      flo = fk;
    }
  }
  (void)flo;
  (void)fhi;
  return solve_bracketed(f, lo, hi, 1e-14);
}

}  // namespace detail

/// epsilon_1 = -kappa_star^2 where the largest Birman-Schwinger eigenvalue
/// crosses 1. The grid doubles from n_initial until kappa_star moves by less
/// than tol or n_max is reached (converged = false in that case).
inline GroundState ground_state(const ArcLengthCurve& curve, double alpha,
                                GroundStateOptions opt = {}) {
  detail::require(alpha > 0.0, "ground_state: alpha must be positive");
  detail::require(opt.tol > 0.0, "ground_state: tol must be positive");
  detail::require(opt.n_initial >= 8 && opt.n_initial % 2 == 0,
                  "ground_state: n_initial must be even and at least 8");
  detail::require_bs_curve(curve);
  GroundState g;
  const double jac = curve.length() / (2.0 * std::numbers::pi);
  // grid step in s must resolve the decay length 1/kappa; kappa* -> alpha/2
  // for large alpha
  auto resolved = [&](double k, int m) { return k * jac * 2.0 * std::numbers::pi / m <= 0.25; };
  double prev = -1.0;
  int n = opt.n_initial;
  while (2 * n <= opt.n_max && !resolved(0.5 * alpha, n)) n *= 2;
  for (;; n *= 2) {
    const double k = detail::kappa_star_at(curve, alpha, n, prev);
    g.kappa_star = k;
    g.n = n;
    if (prev > 0.0) {
      g.kappa_change = std::abs(k - prev);
      if (g.kappa_change < opt.tol && resolved(k, n)) {
        g.converged = true;
        break;
      }
    }
    prev = k;
    if (2 * n > opt.n_max) break;
  }
  g.epsilon1 = -g.kappa_star * g.kappa_star;
  const EigenPair top = bs_lambda_max(assemble_bs(curve, alpha, g.kappa_star, g.n));
  g.residual = std::abs(top.value - 1.0);
  g.eigenvector = top.vector;
  return g;
}

struct GreenCheck {
  double kappa = 0.0;
  /// int int K0(kappa |Gamma(s) - Gamma(s')|) ds ds'.
  double lhs = 0.0;
  /// The same for the circle of equal length.
  double rhs = 0.0;
  /// int_0^{L/2} du int_0^L ds [K0(kappa chord) - K0(kappa (L/pi) sin(pi u/L))].
  double f_kappa = 0.0;
  double f_kappa_error = 0.0;
  /// lhs - rhs - 2 F_kappa.
  double identity_residual = 0.0;
};

/// Both sides of the double-integral kernel inequality with the Nystrom rule
/// on n points, and F_kappa computed independently in chord form.
inline GreenCheck green_inequality_check(const ArcLengthCurve& curve, double kappa,
                                         int n_quad = 256) {
  detail::require_bs_curve(curve);
  detail::require(kappa > 0.0, "green_inequality_check: kappa must be positive");
  const double length = curve.length();
  const double h = length / n_quad;
  GreenCheck out;
  out.kappa = kappa;
  out.lhs = detail::kernel_matrix(curve, kappa, n_quad).sum() * h;
  out.rhs = detail::kernel_matrix(make_circle(length), kappa, n_quad).sum() * h;

  double inner_error = 0.0;
  auto g = [&](double u) {
    const double ref = kappa * (length / std::numbers::pi) * std::sin(std::numbers::pi * u / length);
    const double k_ref = bessel_k0(ref);
    const QuadratureResult q = periodic_trapezoid(
        [&](double s) { return bessel_k0(kappa * curve.chord(s, u)) - k_ref; }, length, n_quad);
    inner_error = std::max(inner_error, q.error);
    return q.value;
  };
  const QuadratureResult outer = piecewise_gauss(g, 0.0, 0.5 * length, {}, 128);
  out.f_kappa = outer.value;
  out.f_kappa_error = outer.error + inner_error * 0.5 * length;
  out.identity_residual = out.lhs - out.rhs - 2.0 * out.f_kappa;
  return out;
}

}  // namespace chordmeans

#pragma once

// Multi-start search for planar unit-speed closed curves with large chord
// p-mean. Curves are given by their tangent angle
//   theta(s) = s + sum_{k=1}^K (a_k cos ks + b_k sin ks),  s in [0, 2 pi),
// so |Gamma'| = 1 holds exactly and closure is the condition
// int_0^{2 pi} e^{i theta(s)} ds = 0.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

#include "chordmeans/chordfun.hpp"
#include "chordmeans/curve.hpp"
#include "chordmeans/errors.hpp"
#include "chordmeans/fourier.hpp"
#include "chordmeans/parallel.hpp"

namespace chordmeans {

struct TangentAngleCurve {
  int K = 0;
  std::vector<double> a;
  std::vector<double> b;
  /// |int_0^{2 pi} e^{i theta(s)} ds|.
  double closure_defect = 0.0;
};

inline constexpr int kDefaultTangentSamples = 512;

namespace detail {

// Samples of e^{i theta} and their Fourier coefficients d_m, m = -M/2..M/2-1,
// stored in FFT order (index k holds m = k for k < M/2, m = k - M otherwise).
inline std::vector<Complex> tangent_spectrum(const std::vector<double>& a,
                                             const std::vector<double>& b, int m) {
  std::vector<Complex> e(m);
  const double h = 2.0 * std::numbers::pi / m;
  const int modes = static_cast<int>(a.size());
  for (int j = 0; j < m; ++j) {
    const double s = j * h;
    double theta = s;
    for (int k = 1; k <= modes; ++k) {
      theta += a[k - 1] * std::cos(k * s) + b[k - 1] * std::sin(k * s);
    }
    e[j] = std::polar(1.0, theta);
  }
  Eigen::FFT<double> fft;
  std::vector<Complex> d;
  fft.fwd(d, e);
  for (Complex& z : d) z /= static_cast<double>(m);
  return d;
}

inline int fft_mode(int k, int m) { return k < m / 2 ? k : k - m; }

inline double closure_from_spectrum(const std::vector<Complex>& d) {
  return 2.0 * std::numbers::pi * std::abs(d[0]);
}

// int_0^{2 pi} |Gamma(s + u) - Gamma(s)|^p ds for the closed projection of the
// curve (the d_0 drift removed), by the trapezoidal rule on the same grid.
inline double pmean_from_spectrum(const std::vector<Complex>& d, double p, double u) {
  const int m = static_cast<int>(d.size());
  std::vector<Complex> g(m, Complex{});
  for (int k = 1; k < m; ++k) {
    const int mode = fft_mode(k, m);
    if (mode == -m / 2) continue;
    const Complex im(0.0, static_cast<double>(mode));
    g[k] = d[k] * (std::exp(im * u) - 1.0) / im;
  }
  Eigen::FFT<double> fft;
  std::vector<Complex> chord;
  fft.inv(chord, g);
  double sum = 0.0;
  for (const Complex& z : chord) sum += std::pow(std::abs(z * static_cast<double>(m)), p);
  return 2.0 * std::numbers::pi * sum / m;
}

}  // namespace detail

/// Builds the curve record and its closure defect.
inline TangentAngleCurve make_tangent_curve(std::vector<double> a, std::vector<double> b,
                                            int n_samples = kDefaultTangentSamples) {
  detail::require(a.size() == b.size(), "make_tangent_curve: a and b differ in length");
  detail::require(n_samples >= 16 && n_samples % 2 == 0,
                  "make_tangent_curve: n_samples must be even and at least 16");
  TangentAngleCurve tc;
  tc.K = static_cast<int>(a.size());
  tc.a = std::move(a);
  tc.b = std::move(b);
  tc.closure_defect = detail::closure_from_spectrum(detail::tangent_spectrum(tc.a, tc.b, n_samples));
  return tc;
}

/// Gamma(s) = int_0^s e^{i theta(t)} dt, integrated termwise from the
/// spectrum of e^{i theta}. The sample count doubles until the spectrum tail
/// is below 1e-15.
inline ArcLengthCurve realize_tangent_curve(const TangentAngleCurve& tc,
                                            int n_samples = kDefaultTangentSamples,
                                            double closure_tol = 1e-8) {
  if (!(tc.closure_defect < closure_tol)) {
    throw DomainError("realize_tangent_curve: closure defect " +
                      std::to_string(tc.closure_defect) + " exceeds tolerance");
  }
  int m = n_samples;
  std::vector<Complex> d;
  for (;; m *= 2) {
    d = detail::tangent_spectrum(tc.a, tc.b, m);
    double tail = 0.0;
    for (int k = m / 4; k < 3 * m / 4; ++k) tail = std::max(tail, std::abs(d[k]));
    if (tail < 1e-15 || m >= (1 << 16)) break;
  }
  const int modes = m / 2 - 1;
  Eigen::MatrixXd cos_coef(2, modes);
  Eigen::MatrixXd sin_coef(2, modes);
  for (int k = 1; k <= modes; ++k) {
    const Complex gp = d[k] / Complex(0.0, k);
    const Complex gm = d[m - k] / Complex(0.0, -k);
    const Complex c = gp + gm;
    const Complex s = Complex(0.0, 1.0) * (gp - gm);
    cos_coef(0, k - 1) = c.real();
    cos_coef(1, k - 1) = c.imag();
    sin_coef(0, k - 1) = s.real();
    sin_coef(1, k - 1) = s.imag();
  }
  auto shape = std::make_shared<detail::TrigShape>(2.0 * std::numbers::pi,
                                                   Eigen::VectorXd::Zero(2),
                                                   std::move(cos_coef), std::move(sin_coef));
  CurveInfo info;
  info.dimension = 2;
  info.length = 2.0 * std::numbers::pi;
  info.smoothness = SmoothnessClass::C2;
  info.descriptor = {{"kind", "tangent_angle"},
                     {"params", {{"K", tc.K}, {"a", tc.a}, {"b", tc.b}}},
                     {"dimension", 2},
                     {"length", info.length}};
  return ArcLengthCurve(shape, std::move(info));
}

/// Chord p-mean of the curve's closed projection on an n_samples grid.
inline double tangent_pmean(const TangentAngleCurve& tc, double p, double u,
                            int n_samples = kDefaultTangentSamples) {
  return detail::pmean_from_spectrum(detail::tangent_spectrum(tc.a, tc.b, n_samples), p, u);
}

struct SearchConfig {
  int restarts = 20;
  unsigned seed = 1;
  double mu = 1e4;
  int max_iterations = 400;
  int n_samples = kDefaultTangentSamples;
  double coefficient_bound = 3.0;
  double closure_tol = 1e-8;
};

struct RestartTrace {
  std::string start;
  int iterations = 0;
  double value = 0.0;
  double closure_defect = 0.0;
};

struct SearchResult {
  double p = 0.0;
  double u = 0.0;
  TangentAngleCurve best;
  double value = 0.0;
  double circle_value = 0.0;
  std::string best_start;
  std::vector<RestartTrace> trace;
};

namespace detail {

// Tangent-angle coefficients of the stadium with straight parts of length
// pi a, truncated to K modes with Lanczos sigma factors. Only even modes are
// nonzero, so the truncated curve closes exactly.
inline std::pair<std::vector<double>, std::vector<double>> stadium_start(double a, int k_max) {
  const int m = 4096;
  const double r = 1.0 - a;
  const double seg = std::numbers::pi * a;
  const double arc = std::numbers::pi * r;
  std::vector<Complex> phi(m);
  for (int j = 0; j < m; ++j) {
    const double s = 2.0 * std::numbers::pi * (j + 0.5) / m;
    // angle of the tangent along: half segment, arc, segment, arc, half segment
    double theta;
    const double h = 0.5 * seg;
    if (s < h) theta = 0.0;
    else if (s < h + arc) theta = (s - h) / r;
    else if (s < 3 * h + arc) theta = std::numbers::pi;
    else if (s < 3 * h + 2 * arc) theta = std::numbers::pi + (s - 3 * h - arc) / r;
    else theta = 2.0 * std::numbers::pi;
    phi[j] = theta - s;
  }
  Eigen::FFT<double> fft;
  std::vector<Complex> c;
  fft.fwd(c, phi);
  std::vector<double> av(k_max, 0.0);
  std::vector<double> bv(k_max, 0.0);
  for (int k = 1; k <= k_max; ++k) {
    if (k % 2 == 1) continue;
    // undo the half-sample shift of the grid
    const Complex ck = c[k] / static_cast<double>(m) *
                       std::polar(1.0, std::numbers::pi * k / m);
    const double x = std::numbers::pi * k / (k_max + 1);
    const double sigma = std::sin(x) / x;
    av[k - 1] = 2.0 * ck.real() * sigma;
    bv[k - 1] = -2.0 * ck.imag() * sigma;
  }
  return {av, bv};
}

class PmeanObjective {
 public:
  PmeanObjective(double p, double u, double mu, int samples)
      : p_(p), u_(u), mu_(mu), samples_(samples) {}

  double operator()(const Eigen::VectorXd& x) const {
    const int k = static_cast<int>(x.size()) / 2;
    std::vector<double> a(x.data(), x.data() + k);
    std::vector<double> b(x.data() + k, x.data() + 2 * k);
    const auto d = tangent_spectrum(a, b, samples_);
    const double z = closure_from_spectrum(d);
    return pmean_from_spectrum(d, p_, u_) - mu_ * z * z;
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const {
    Eigen::VectorXd g(x.size());
    const double h = 1e-6;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      Eigen::VectorXd xp = x;
      Eigen::VectorXd xm = x;
      xp[i] += h;
      xm[i] -= h;
      g[i] = ((*this)(xp) - (*this)(xm)) / (2.0 * h);
    }
    return g;
  }

 private:
  double p_;
  double u_;
  double mu_;
  int samples_;
};

inline Eigen::VectorXd clamp_coefficients(Eigen::VectorXd x, double bound) {
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], -bound, bound);
  return x;
}

// Gradient ascent on the penalized objective; directions from a BFGS inverse
// Hessian when it yields ascent, plain gradient otherwise, with
// backtracking on the step.
inline std::pair<Eigen::VectorXd, int> ascend(const PmeanObjective& f, Eigen::VectorXd x,
                                              const SearchConfig& cfg) {
  const Eigen::Index n = x.size();
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
  double fx = f(x);
  Eigen::VectorXd g = f.gradient(x);
  int iter = 0;
  for (; iter < cfg.max_iterations; ++iter) {
    if (g.norm() < 1e-9) break;
    Eigen::VectorXd dir = hinv * g;
    if (dir.dot(g) <= 1e-12 * dir.norm() * g.norm()) {
      hinv.setIdentity();
      dir = g;
    }
    double step = 1.0;
    const double max_move = 0.5;
    if (step * dir.norm() > max_move) step = max_move / dir.norm();
    Eigen::VectorXd xn;
    double fn = fx;
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      xn = clamp_coefficients(x + step * dir, cfg.coefficient_bound);
      fn = f(xn);
      if (fn > fx + 1e-4 * g.dot(xn - x)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (hinv.isIdentity()) break;
      hinv.setIdentity();
      continue;
    }
    const Eigen::VectorXd gn = f.gradient(xn);
    const Eigen::VectorXd sv = xn - x;
    const Eigen::VectorXd yv = g - gn;  // ascent: the Hessian of -f
    const double sy = sv.dot(yv);
    if (sy > 1e-14 * sv.norm() * yv.norm()) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
      hinv = (eye - rho * sv * yv.transpose()) * hinv * (eye - rho * yv * sv.transpose()) +
             rho * sv * sv.transpose();
    }
    const bool stalled = std::abs(fn - fx) <= 1e-15 * std::abs(fx);
    x = xn;
    fx = fn;
    g = gn;
    if (stalled) break;
  }
  return {x, iter};
}

// Newton iteration on (a_1, b_1) driving the closure integral to zero.
inline Eigen::VectorXd close_curve(Eigen::VectorXd x, int samples) {
  const int k = static_cast<int>(x.size()) / 2;
  auto closure = [&](const Eigen::VectorXd& v) {
    std::vector<double> a(v.data(), v.data() + k);
    std::vector<double> b(v.data() + k, v.data() + 2 * k);
    const Complex z = 2.0 * std::numbers::pi * tangent_spectrum(a, b, samples)[0];
    return Eigen::Vector2d(z.real(), z.imag());
  };
  for (int iter = 0; iter < 50; ++iter) {
    const Eigen::Vector2d z = closure(x);
    if (z.norm() < 1e-13) break;
    Eigen::Matrix2d jac;
    const double h = 1e-7;
    for (int c = 0; c < 2; ++c) {
      Eigen::VectorXd xp = x;
      xp[c == 0 ? 0 : k] += h;
      jac.col(c) = (closure(xp) - z) / h;
    }
    const Eigen::Vector2d delta = jac.fullPivLu().solve(-z);
    if (!delta.allFinite()) break;
    x[0] += delta[0];
    x[k] += delta[1];
  }
  return x;
}

}  // namespace detail

/// Multi-start local maximization of chord_pmean over closed tangent-angle
/// curves with K modes. Start 0 is the circle, start 1 a smoothed stadium
/// near the doubled segment, the rest are seeded random draws. The value of
/// each restart is that of its closed projection; the result is evidence, a
/// lower bound for the supremum, not a certificate of optimality.
inline SearchResult maximize_pmean(double p, double u, int K, const SearchConfig& cfg = {}) {
  if (!(u > 0.0 && u <= std::numbers::pi * (1.0 + 1e-15))) {
    throw DomainError("maximize_pmean: u must lie in (0, pi]");
  }
  detail::require(p > 0.0, "maximize_pmean: p must be positive");
  detail::require(K >= 2, "maximize_pmean: K must be at least 2");
  detail::require(cfg.restarts >= 2, "maximize_pmean: need at least two restarts");
  u = std::min(u, std::numbers::pi);

  std::vector<Eigen::VectorXd> starts;
  std::vector<std::string> names;
  starts.push_back(Eigen::VectorXd::Zero(2 * K));
  names.push_back("circle");
  {
    const auto [a, b] = detail::stadium_start(0.9, K);
    Eigen::VectorXd x(2 * K);
    for (int k = 0; k < K; ++k) {
      x[k] = a[k];
      x[K + k] = b[k];
    }
    starts.push_back(detail::clamp_coefficients(x, cfg.coefficient_bound));
    names.push_back("stadium");
  }
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int r = 2; r < cfg.restarts; ++r) {
    Eigen::VectorXd x(2 * K);
    for (int k = 0; k < K; ++k) {
      x[k] = 0.3 * normal(rng) / (k + 1);
      x[K + k] = 0.3 * normal(rng) / (k + 1);
    }
    starts.push_back(detail::clamp_coefficients(x, cfg.coefficient_bound));
    names.push_back("random:" + std::to_string(r - 2));
  }

  const detail::PmeanObjective objective(p, u, cfg.mu, cfg.n_samples);
  std::vector<RestartTrace> trace(starts.size());
  std::vector<TangentAngleCurve> curves(starts.size());
  detail::parallel_for(static_cast<int>(starts.size()), [&](int r) {
    auto [x, iters] = detail::ascend(objective, starts[r], cfg);
    x = detail::close_curve(x, cfg.n_samples);
    std::vector<double> a(x.data(), x.data() + K);
    std::vector<double> b(x.data() + K, x.data() + 2 * K);
    curves[r] = make_tangent_curve(std::move(a), std::move(b), cfg.n_samples);
    trace[r].start = names[r];
    trace[r].iterations = iters;
    trace[r].closure_defect = curves[r].closure_defect;
    trace[r].value = tangent_pmean(curves[r], p, u, cfg.n_samples);
  });

  SearchResult out;
  out.p = p;
  out.u = u;
  out.circle_value = circle_reference(2.0 * std::numbers::pi, p, u);
  int best = -1;
  for (int r = 0; r < static_cast<int>(trace.size()); ++r) {
    if (!(trace[r].closure_defect < cfg.closure_tol)) continue;
    if (best < 0 || trace[r].value > trace[best].value) best = r;
  }
  if (best < 0) best = 0;
  out.best = curves[best];
  out.best_start = trace[best].start;
  out.trace = std::move(trace);
  out.value = chord_pmean(realize_tangent_curve(out.best, cfg.n_samples, 1.0), p, u,
                          cfg.n_samples).value;
  return out;
}

}  // namespace chordmeans

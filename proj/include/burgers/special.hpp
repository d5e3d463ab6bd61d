#pragma once

// Error function family, Gauss-Legendre rules and the Gaussian moment
// integrals PG_m(l, delta, dx) = int_0^dx y^m exp(-(y+l)^2/delta) dy that make
// the diffusion step closed-form.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <mutex>
#include <utility>
#include <numbers>
#include <string>
#include <vector>

#include "burgers/errors.hpp"

namespace burgers {

namespace detail {

inline constexpr double kTwoOverSqrtPi = 2.0 * std::numbers::inv_sqrtpi;

// erf for 0 <= x < 2 from the all-positive series
//   erf(x) = 2/sqrt(pi) exp(-x^2) sum_n 2^n x^(2n+1) / (2n+1)!!
inline double erf_series(double x) {
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int n = 0; n < 200; ++n) {
    term *= 2.0 * x2 / (2.0 * n + 3.0);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return kTwoOverSqrtPi * std::exp(-x2) * sum;
}

// exp(x^2) erfc(x) for x >= 1 from the Laplace continued fraction
//   erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
// evaluated bottom-up.
inline double erfcx_cf(double x) {
  const int terms = x < 1.5 ? 320 : (x < 2.0 ? 160 : (x < 3.0 ? 80 : 40));
  double t = x;
  for (int n = terms; n >= 1; --n) t = x + 0.5 * n / t;
  return std::numbers::inv_sqrtpi / t;
}

inline constexpr double kSeriesLimit = 2.0;  // erf: series below, fraction above
inline constexpr double kFractionLimit = 1.0;  // erfc: 1 - series below, fraction above

}  // namespace detail

/// Error function. Odd by construction: erf(-x) == -erf(x) bit-for-bit.
inline double erf(double x) {
  if (std::isnan(x)) return x;
  const double ax = std::fabs(x);
  double r;
  if (ax < detail::kSeriesLimit) {
    r = detail::erf_series(ax);
  } else if (ax < 6.5) {
    r = 1.0 - detail::erfcx_cf(ax) * std::exp(-ax * ax);
  } else {
    r = 1.0;
  }
  return x < 0.0 ? -r : r;
}

/// Complementary error function with full relative accuracy for large x.
inline double erfc(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.0) return 2.0 - erfc(-x);
  if (x < detail::kFractionLimit) return 1.0 - detail::erf_series(x);
  if (x > 27.3) return 0.0;
  return detail::erfcx_cf(x) * std::exp(-x * x);
}

/// Scaled complementary error function exp(x^2) erfc(x); finite for all
/// x >= -26 and decaying like 1/(x sqrt(pi)) as x grows.
inline double erfcx(double x) {
  if (std::isnan(x)) return x;
  if (x >= detail::kFractionLimit) return detail::erfcx_cf(x);
  return std::exp(x * x) * erfc(x);
}

/// log(erfc(x)) without underflow for large positive x.
inline double log_erfc(double x) {
  if (x >= detail::kFractionLimit) return std::log(detail::erfcx_cf(x)) - x * x;
  return std::log(erfc(x));
}

/// n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline GaussLegendreRule make_gauss_legendre(int n) {
  if (n < 1) throw ContractViolation("Gauss-Legendre rule needs n >= 1");
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  // Legendre P_n(x) and its derivative by the three-term recurrence.
  auto legendre = [n](double x) {
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    return std::pair{p1, dp};
  };
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(x);
      const double step = p / dp;
      x -= step;
      if (std::fabs(step) < 1e-16) break;
    }
    const double dp = legendre(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto a = static_cast<std::size_t>(i);
    const auto b = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[a] = -x;
    rule.nodes[b] = x;
    rule.weights[a] = w;
    rule.weights[b] = w;
  }
  return rule;
}

/// Shared, lazily built rule (thread-safe).
inline const GaussLegendreRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gauss_legendre(n)).first;
  return it->second;
}

/// Kernel window for one (node, segment) pair: delta = 4 nu dt, ell = xi_j - x_i,
/// dx the segment length.
struct GaussianWindow {
  double delta = 1.0;
  double ell = 0.0;
  double dx = 1.0;
};

/// Largest moment order supported by the diffusion machinery.
inline constexpr int kMaxMomentOrder = 112;

/// How a moment vector was produced.
struct MomentDiagnostics {
  /// Orders 0..recursion_orders-1 come from the integration-by-parts
  /// recursion; higher orders from the Gauss-Legendre fallback.
  int recursion_orders = 0;
};

namespace detail {

// Scaled moments M_m = int_0^1 s^m G(s) ds, G(s) = exp(-(dx s + ell)^2 / delta),
// for m in [m_lo, m_hi], by composite Gauss-Legendre in z = (dx s + ell)/sqrt(delta).
inline void scaled_moments_quadrature(const GaussianWindow& w, int m_lo, int m_hi, double* out) {
  const double sd = std::sqrt(w.delta);
  const double z0 = w.ell / sd;
  const double z1 = (w.ell + w.dx) / sd;
  constexpr double zcut = 27.3;  // exp(-zcut^2) underflows
  const double a = std::max(z0, -zcut);
  const double b = std::min(z1, zcut);
  for (int m = m_lo; m <= m_hi; ++m) out[m - m_lo] = 0.0;
  if (!(b > a)) return;

  const auto& rule = gauss_legendre(64);
  const auto panels = static_cast<int>(std::max(1.0, std::ceil((b - a) / 0.25)));
  const double hz = (b - a) / panels;
  const double ds_dz = sd / w.dx;
  for (int p = 0; p < panels; ++p) {
    const double za = a + p * hz;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double z = za + 0.5 * hz * (rule.nodes[q] + 1.0);
      const double s = (z - z0) * ds_dz;
      const double wt = 0.5 * hz * ds_dz * rule.weights[q] * std::exp(-z * z);
      double sp = std::pow(s, m_lo);
      for (int m = m_lo; m <= m_hi; ++m) {
        out[m - m_lo] += wt * sp;
        sp *= s;
      }
    }
  }
}

}  // namespace detail

/// Scaled moments M_m = PG_m / dx^(m+1), m = 0..m_max.
///
/// Orders are produced by the forward recursion
///   M_m = (m-1) a M_{m-2} - b M_{m-1} - a [s^(m-1) G]_0^1,
///   a = delta/(2 dx^2), b = ell/dx,
/// seeded with the closed erf/exp forms of M_0, M_1. A first-order bound on
/// the propagated rounding error is carried alongside; from the first order
/// whose bound exceeds 1e-12 relative, the remaining orders are integrated by
/// composite Gauss-Legendre instead.
inline std::vector<double> scaled_pg_moments(const GaussianWindow& w, int m_max, MomentDiagnostics* diag = nullptr) {
  if (m_max < 0) throw ContractViolation("pg_moments: m_max must be non-negative");
  if (m_max > kMaxMomentOrder) {
    throw ContractViolation("pg_moments: m_max " + std::to_string(m_max) + " exceeds supported order " +
                            std::to_string(kMaxMomentOrder));
  }
  if (!(w.delta > 0.0)) throw ContractViolation("pg_moments: delta must be positive");
  std::vector<double> M(static_cast<std::size_t>(m_max) + 1, 0.0);
  if (!(w.dx > 0.0)) {
    if (diag) diag->recursion_orders = m_max + 1;
    return M;
  }

  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double rel_tol = 1e-12;
  const double sd = std::sqrt(w.delta);
  const double z0 = w.ell / sd;
  const double z1 = (w.ell + w.dx) / sd;
  const double g0 = std::exp(-z0 * z0);
  const double g1 = std::exp(-z1 * z1);
  const double a = w.delta / (2.0 * w.dx * w.dx);
  const double b = w.ell / w.dx;

  // erf(z1) - erf(z0), switching to the erfc difference when both arguments
  // sit on the same side of zero.
  double f_hi;
  double f_lo;
  if (z0 >= 0.0) {
    f_hi = erfc(z0);
    f_lo = erfc(z1);
  } else if (z1 <= 0.0) {
    f_hi = erfc(-z1);
    f_lo = erfc(-z0);
  } else {
    f_hi = erf(z1);
    f_lo = erf(z0);
  }
  const double c0 = 0.5 * std::sqrt(std::numbers::pi * w.delta) / w.dx;
  M[0] = c0 * (f_hi - f_lo);

  std::vector<double> err(M.size(), 0.0);
  err[0] = 4.0 * eps * c0 * (std::fabs(f_hi) + std::fabs(f_lo)) + eps * std::fabs(M[0]);
  if (m_max >= 1) {
    M[1] = -b * M[0] - a * (g1 - g0);
    err[1] = std::fabs(b) * err[0] + 2.0 * eps * (std::fabs(b * M[0]) + a * (g1 + g0)) + eps * std::fabs(M[1]);
  }
  for (int m = 2; m <= m_max; ++m) {
    const auto k = static_cast<std::size_t>(m);
    const double t1 = (m - 1) * a * M[k - 2];
    const double t2 = b * M[k - 1];
    M[k] = t1 - t2 - a * g1;
    err[k] = (m - 1) * a * err[k - 2] + std::fabs(b) * err[k - 1] +
             2.0 * eps * (std::fabs(t1) + std::fabs(t2) + a * g1) + eps * std::fabs(M[k]);
  }

  int good = 0;
  while (good <= m_max && err[static_cast<std::size_t>(good)] <= rel_tol * std::fabs(M[static_cast<std::size_t>(good)])) {
    ++good;
  }
  // exact zeros (kernel underflow over the whole segment) are fine as they are
  while (good <= m_max && M[static_cast<std::size_t>(good)] == 0.0 && err[static_cast<std::size_t>(good)] == 0.0) ++good;
  if (good <= m_max) detail::scaled_moments_quadrature(w, good, m_max, M.data() + good);
  if (diag) diag->recursion_orders = good;
  return M;
}

/// PG_m = int_0^dx y^m exp(-(y+ell)^2/delta) dy for m = 0..m_max.
inline std::vector<double> pg_moments(const GaussianWindow& w, int m_max, MomentDiagnostics* diag = nullptr) {
  auto M = scaled_pg_moments(w, m_max, diag);
  double hk = w.dx;
  for (double& v : M) {
    v *= hk;
    hk *= w.dx;
  }
  return M;
}

/// q_k(y) with d^k/dx_i^k exp(-(y+ell)^2/delta) = q_k(y) exp(-(y+ell)^2/delta),
/// where ell = xi_j - x_i. Built from q_0 = 1,
/// q_k = (2(y+ell)/delta) q_{k-1} - d q_{k-1}/d ell, returned as ascending
/// coefficients in y.
inline std::vector<double> window_weight_polynomial(int k, double ell, double delta) {
  if (k < 0) throw ContractViolation("window_weight_polynomial: k must be non-negative");
  // Work in z = y + ell, where d/d ell acts as d/dz.
  std::vector<double> r{1.0};
  for (int step = 1; step <= k; ++step) {
    std::vector<double> next(r.size() + 1, 0.0);
    for (std::size_t p = 0; p < r.size(); ++p) next[p + 1] += 2.0 / delta * r[p];
    for (std::size_t p = 1; p < r.size(); ++p) next[p - 1] -= static_cast<double>(p) * r[p];
    r = std::move(next);
  }
  // Expand r(y + ell) in powers of y.
  std::vector<double> out(r.size(), 0.0);
  for (std::size_t p = 0; p < r.size(); ++p) {
    if (r[p] == 0.0) continue;
    double binom = 1.0;
    for (std::size_t q = 0; q <= p; ++q) {
      // term: C(p,q) y^q ell^(p-q)
      const double lp = p - q == 0 ? 1.0 : std::pow(ell, static_cast<double>(p - q));
      out[q] += r[p] * binom * lp;
      binom = binom * static_cast<double>(p - q) / static_cast<double>(q + 1);
    }
  }
  return out;
}

}  // namespace burgers

#pragma once

// Reference solutions for the four benchmark problems.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "burgers/errors.hpp"
#include "burgers/special.hpp"

namespace burgers {

/// Adaptive composite Gauss-Legendre on [a, b]: the panel count doubles until
/// two successive estimates agree to `tol`.
template <class F>
double integrate_gl(F&& f, double a, double b, double tol = 1e-13, int max_doublings = 20) {
  const auto& rule = gauss_legendre(20);
  auto composite = [&](std::size_t panels) {
    const double w = (b - a) / static_cast<double>(panels);
    double sum = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
      const double mid = a + (static_cast<double>(p) + 0.5) * w;
      double ps = 0.0;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) ps += rule.weights[q] * f(mid + 0.5 * w * rule.nodes[q]);
      sum += 0.5 * w * ps;
    }
    return sum;
  };
  std::size_t panels = 1;
  double prev = composite(panels);
  for (int d = 0; d < max_doublings; ++d) {
    panels *= 2;
    const double cur = composite(panels);
    if (std::fabs(cur - prev) <= tol) return cur;
    prev = cur;
  }
  throw QuadratureError("quadrature did not converge after " + std::to_string(max_doublings) + " panel doublings");
}

/// A_k = int_0^1 cos(k pi x) exp((cos(pi x) - 1)/(2 pi nu)) dx
inline double compute_Ak(int k, double nu) {
  if (k < 0) throw DomainError("compute_Ak: k must be non-negative");
  if (!(nu > 0.0)) throw DomainError("compute_Ak: nu must be positive");
  const double pi = std::numbers::pi;
  return integrate_gl(
      [&](double x) { return std::cos(k * pi * x) * std::exp((std::cos(pi * x) - 1.0) / (2.0 * pi * nu)); }, 0.0, 1.0);
}

/// Fourier-series solution of the sine-wave problem, valid for t >= t_min.
class FourierSolution {
 public:
  FourierSolution(double nu, double t_min) : nu_(nu), t_min_(t_min) {
    if (!(nu > 0.0)) throw DomainError("FourierSolution: nu must be positive");
    if (!(t_min > 0.0)) throw DomainError("FourierSolution: t_min must be positive");
    const double pi = std::numbers::pi;
    // exp(-K^2 pi^2 nu t_min) < 1e-16
    K_ = static_cast<int>(std::ceil(std::sqrt(-std::log(1e-16) / (pi * pi * nu * t_min)))) + 1;
    A_.resize(static_cast<std::size_t>(K_) + 1);
    for (int k = 0; k <= K_; ++k) A_[static_cast<std::size_t>(k)] = compute_Ak(k, nu);
  }

  double nu() const { return nu_; }
  int terms() const { return K_; }
  const std::vector<double>& coeffs() const { return A_; }

  double operator()(double x, double t) const {
    if (!(t > 0.0)) throw DomainError("sine-wave reference solution needs t > 0");
    if (t < t_min_) throw DomainError("sine-wave reference queried below its t_min");
    const double pi = std::numbers::pi;
    double num = 0.0;
    double den = A_[0];
    for (int k = 1; k <= K_; ++k) {
      const double a = A_[static_cast<std::size_t>(k)] * std::exp(-k * k * pi * pi * nu_ * t);
      num += k * a * std::sin(k * pi * x);
      den += 2.0 * a * std::cos(k * pi * x);
    }
    return 4.0 * pi * nu_ * num / den;
  }

 private:
  double nu_;
  double t_min_;
  int K_ = 0;
  std::vector<double> A_;
};

inline double example1_exact(double x, double t, double nu) { return FourierSolution(nu, t)(x, t); }

/// ln t0 for t0 = exp(1/(8 nu)).
inline double example2_log_t0_classic(double nu) { return 0.125 / nu; }

/// ln t0 for t0 = exp(1/(8 nu)) / nu (gives 0.208318 at x = 0.5, t = 2.4,
/// nu = 0.005). Default.
inline double example2_log_t0_default(double nu) { return 0.125 / nu - std::log(nu); }

/// u = (x/t) / (1 + sqrt(t/t0) exp(x^2/(4 nu t))); any t0 > 0 gives a Burgers
/// solution. ln t0 is passed so that tiny nu does not overflow.
inline double example2_exact_log_t0(double x, double t, double nu, double log_t0) {
  if (!(t > 0.0) || !(nu > 0.0)) throw DomainError("example2_exact: t and nu must be positive");
  const double e = x * x / (4.0 * nu * t) + 0.5 * (std::log(t) - log_t0);
  if (e > 700.0) return 0.0;
  return (x / t) / (1.0 + std::exp(e));
}

inline double example2_exact(double x, double t, double nu) {
  return example2_exact_log_t0(x, t, nu, example2_log_t0_default(nu));
}

/// Travelling erfc front with u(-inf) = 1, u(+inf) = 0.
inline double example3_exact(double x, double t, double nu) {
  if (!(t > 0.0) || !(nu > 0.0)) throw DomainError("example3_exact: t and nu must be positive");
  const double s = 2.0 * std::sqrt(nu * t);
  const double a = (x - t) / s;
  const double b = -x / s;
  const double c = (x - 0.5 * t) / (2.0 * nu);
  const double e = log_erfc(b) + c - log_erfc(a);
  if (e > 700.0) return 0.0;
  return 1.0 / (1.0 + std::exp(e));
}

/// Burgers-Fisher travelling wave (nu = 1).
inline double example4_exact(double x, double t) { return 0.5 * (1.0 - std::tanh(x - 0.5 * t)); }

}  // namespace burgers

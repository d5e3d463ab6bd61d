#pragma once

// Numerical Hopf-Cole transformation.
//
// Forward: u -> phi = exp(-Int(u)/(2 nu)). The exponent E(x) is represented
// per segment by a Hermite polynomial matching E and its derivatives at both
// ends (E' = -u/(2 nu), E'' = -u_x/(2 nu), ...), re-based so that Q_j(0) = 0,
// and exp(Q_j) is replaced by a truncated Taylor series in Q_j with the number
// of terms chosen adaptively per segment.
//
// Backward: u = -2 nu phi'/phi and its x-derivatives by direct substitution.
//
// Overflow control: phi at node i is accumulated relative to exp(E(x_i)). The
// relative exponent E(xi_j) - E(x_i) of every window segment is summed from
// per-segment increments outward from node i, so it never depends on where the
// integral was anchored.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "burgers/diffusion.hpp"
#include "burgers/errors.hpp"
#include "burgers/grid.hpp"
#include "burgers/splines.hpp"

namespace burgers {

struct TaylorConfig {
  int max_terms = 16;
  double rel_tol = 1e-8;
  int sample_points = 5;

  void validate() const {
    if (max_terms < 1) throw ConfigError("taylor max_terms must be >= 1");
    if (!(rel_tol > 0.0)) throw ConfigError("taylor rel_tol must be positive");
    if (sample_points < 2) throw ConfigError("taylor sample_points must be >= 2");
  }
};

/// Exponent of phi on the extended grid.
struct ExponentField {
  /// E_i = -Int(u)_i / (2 nu) at every node.
  std::vector<double> nodes;
  /// Q_j(y) = E(x_j + y) - E_j (zero constant term).
  PiecewisePoly seg_poly;
  /// E(xi_j) for each segment.
  std::vector<double> base;
  /// Q_j(dx) = E_{j+1} - E_j, from the segment integral of u alone.
  std::vector<double> increments;
};

/// phi-space representation of one u field.
struct PhiField {
  ExponentField exponent;
  /// T_j(y), the truncated Taylor series of exp(Q_j(y)); phi = exp(base_j) T_j.
  PiecewisePoly phi_poly;
  /// Terms used per segment.
  std::vector<int> terms;
  /// Segments whose tolerance was not met at max_terms.
  std::size_t capped_segments = 0;
};

namespace detail {

inline double factorial_ratio_series(double q, int terms) {
  // sum_{k<terms} q^k/k!
  double term = 1.0;
  double sum = 0.0;
  for (int k = 0; k < terms; ++k) {
    sum += term;
    term *= q / (k + 1);
  }
  return sum;
}

/// Smallest K <= max_terms meeting the relative tolerance at the sample
/// values q (K = max_terms and met = false otherwise).
inline int choose_terms(std::span<const double> q, const TaylorConfig& tc, bool& met) {
  for (int K = 1; K <= tc.max_terms; ++K) {
    double worst = 0.0;
    for (double v : q) {
      const double e = std::exp(v);
      worst = std::max(worst, std::fabs(factorial_ratio_series(v, K) - e) / e);
    }
    if (worst <= tc.rel_tol) {
      met = true;
      return K;
    }
  }
  met = false;
  return tc.max_terms;
}

/// Coefficients (in s) of sum_{k<K} Q(s)^k / k!, by Horner in polynomial
/// arithmetic: 1 + Q(1 + Q/2 (1 + Q/3 (...))).
inline std::vector<double> compose_taylor(std::span<const double> q, int K) {
  std::vector<double> t{1.0};
  for (int k = K - 1; k >= 1; --k) {
    auto prod = poly::multiply(q, t);
    for (double& v : prod) v /= k;
    prod[0] += 1.0;
    t = std::move(prod);
  }
  return t;
}

/// Per-segment scaled exponent polynomial Q~_j(s) = Q_j(dx s).
inline void exponent_segment(const GridFunction& u, std::size_t j, double increment, double nu, double* out) {
  const std::size_t orders = u.order_count() + 1;
  const double h = u.spec.dx;
  const double f = -1.0 / (2.0 * nu);
  std::array<double, 4> L{};
  std::array<double, 4> R{};
  L[0] = 0.0;
  R[0] = increment;
  double hk = h;
  for (std::size_t k = 1; k < orders; ++k) {
    L[k] = hk * f * u.orders[k - 1][j];
    R[k] = hk * f * u.orders[k - 1][j + 1];
    hk *= h;
  }
  poly::hermite_unit(orders, L.data(), R.data(), out);
}

}  // namespace detail

/// u-space field (already padded with ghosts) -> exponent and Taylor phi
/// polynomials on every segment.
inline PhiField forward_transform(const GridFunction& u, double nu, const TaylorConfig& tc) {
  u.validate();
  tc.validate();
  if (!(nu > 0.0)) throw ConfigError("viscosity nu must be positive");
  const std::size_t nseg = u.size() - 1;
  const double h = u.spec.dx;
  const double f = -1.0 / (2.0 * nu);

  const PiecewisePoly u_spline = build_spline(u);
  const auto integral = cumulative_integral(u_spline);

  PhiField out;
  auto& ex = out.exponent;
  ex.nodes.resize(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) ex.nodes[i] = f * integral[i];
  ex.base.assign(ex.nodes.begin(), ex.nodes.end() - 1);
  ex.increments.resize(nseg);
  const int qdeg = exponent_degree(u.scheme);
  ex.seg_poly = PiecewisePoly(u.spec, qdeg);

  std::vector<std::vector<double>> composed(nseg);
  out.terms.resize(nseg);
  std::vector<double> samples(static_cast<std::size_t>(tc.sample_points));
  int max_deg = 0;
  for (std::size_t j = 0; j < nseg; ++j) {
    ex.increments[j] = f * segment_integral(u_spline, j);
    auto q = ex.seg_poly.segment(j);
    detail::exponent_segment(u, j, ex.increments[j], nu, q.data());
    for (int p = 0; p < tc.sample_points; ++p) {
      samples[static_cast<std::size_t>(p)] = poly::evaluate(q, static_cast<double>(p) / (tc.sample_points - 1));
    }
    bool met = true;
    const int K = detail::choose_terms(samples, tc, met);
    if (!met) ++out.capped_segments;
    out.terms[j] = K;
    composed[j] = detail::compose_taylor(q, K);
    max_deg = std::max(max_deg, static_cast<int>(composed[j].size()) - 1);
    poly::scale_argument(q, 1.0 / h);
  }

  out.phi_poly = PiecewisePoly(u.spec, max_deg);
  for (std::size_t j = 0; j < nseg; ++j) {
    auto seg = out.phi_poly.segment(j);
    std::copy(composed[j].begin(), composed[j].end(), seg.begin());
    poly::scale_argument(seg, 1.0 / h);
  }
  return out;
}

/// phi and its x-derivatives at node i in the gauge exp(-E(x_i)).
///
/// `scaled_phi` holds the Taylor polynomials in s = y/dx (stride
/// `stride`), `degrees` the effective degree of each segment.
inline std::array<double, 4> shifted_window_accumulate(std::span<const double> scaled_phi, std::size_t stride,
                                                       std::span<const int> degrees,
                                                       std::span<const double> increments,
                                                       const DiffusionKernel& kernel, const GridSpec& spec,
                                                       std::size_t i) {
  kernel.check_coverage(spec, i);
  constexpr double kMaxExponent = 700.0;
  const std::ptrdiff_t lo = kernel.offset_lo();
  const std::ptrdiff_t hi = kernel.offset_hi();
  const auto si = static_cast<std::ptrdiff_t>(i);

  // Relative exponents, summed outward from segment i.
  std::array<double, 4> out{};
  const int orders = kernel.params().deriv_count;
  auto add_segment = [&](std::ptrdiff_t r, double rel) {
    if (std::fabs(rel) > kMaxExponent) {
      throw OverflowError("exponent difference " + std::to_string(rel) + " across the kernel window at node " +
                              std::to_string(i) + " (x = " + std::to_string(spec.x(si)) +
                              "); |u| * half_width / (2 nu) is too large for double precision",
                          NumericalError::npos, i);
    }
    const double wgt = std::exp(rel);
    const auto j = static_cast<std::size_t>(si + r);
    const double* seg = scaled_phi.data() + j * stride;
    const auto deg = static_cast<std::size_t>(degrees[j]);
    for (int k = 0; k < orders; ++k) {
      const auto w = kernel.weight(k, r);
      double acc = 0.0;
      for (std::size_t m = 0; m <= deg; ++m) acc += seg[m] * w[m];
      out[static_cast<std::size_t>(k)] += wgt * acc;
    }
  };

  std::array<double, 64> rel_left{};
  std::vector<double> rel_left_heap;
  double* rel = rel_left.data();
  const auto n_left = static_cast<std::size_t>(-lo);
  if (n_left > rel_left.size()) {
    rel_left_heap.resize(n_left);
    rel = rel_left_heap.data();
  }
  double acc = 0.0;
  for (std::ptrdiff_t r = -1; r >= lo; --r) {
    acc -= increments[static_cast<std::size_t>(si + r)];
    rel[static_cast<std::size_t>(-r - 1)] = acc;
  }
  // ascending segment order
  for (std::ptrdiff_t r = lo; r < 0; ++r) add_segment(r, rel[static_cast<std::size_t>(-r - 1)]);
  acc = 0.0;
  for (std::ptrdiff_t r = 0; r <= hi; ++r) {
    add_segment(r, acc);
    acc += increments[static_cast<std::size_t>(si + r)];
  }
  return out;
}

/// Backward transform at one node from phi, phi', phi'', phi''' (as many as
/// the scheme needs). Writes u and its stored derivatives into `u_out`.
inline void backward_node(std::span<const double> phi, double nu, SchemeKind scheme, std::span<double> u_out,
                          std::size_t node = 0) {
  const double p0 = phi[0];
  for (std::size_t k = 0; k < phi.size(); ++k) {
    if (!std::isfinite(phi[k])) {
      throw InstabilityError("non-finite phi at node " + std::to_string(node), NumericalError::npos, node);
    }
  }
  if (!(std::fabs(p0) >= 1e-290)) {
    throw NumericalError("phi degenerate (|phi| = " + std::to_string(p0) + ") at node " + std::to_string(node) +
                             "; re-base the exponent",
                         NumericalError::npos, node);
  }
  const double r1 = phi[1] / p0;
  u_out[0] = -2.0 * nu * r1;
  if (scheme == SchemeKind::LG) return;
  const double r2 = phi[2] / p0;
  u_out[1] = -2.0 * nu * (r2 - r1 * r1);
  if (scheme == SchemeKind::CG) return;
  const double r3 = phi[3] / p0;
  u_out[2] = -2.0 * nu * (r3 - 3.0 * r1 * r2 + 2.0 * r1 * r1 * r1);
}

/// Backward transform on whole arrays: phi_derivs[k][i] is the k-th
/// derivative of phi at node i.
inline GridFunction backward_transform(const std::vector<std::vector<double>>& phi_derivs, double nu,
                                       SchemeKind scheme, const GridSpec& spec) {
  const std::size_t need = phi_order_count(scheme);
  if (phi_derivs.size() < need) {
    throw ContractViolation("backward_transform: scheme " + std::string(to_string(scheme)) + " needs " +
                            std::to_string(need) + " phi orders");
  }
  GridFunction u(spec, scheme);
  std::array<double, 4> phi{};
  std::array<double, 3> uo{};
  for (std::size_t i = 0; i < spec.n; ++i) {
    for (std::size_t k = 0; k < need; ++k) phi[k] = phi_derivs[k].at(i);
    backward_node(phi, nu, scheme, uo, i);
    for (std::size_t k = 0; k < u.order_count(); ++k) u.orders[k][i] = uo[k];
  }
  return u;
}

}  // namespace burgers

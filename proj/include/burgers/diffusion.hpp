#pragma once

// Exact-kernel diffusion step: each segment polynomial is convolved with the
// heat kernel over a window of margin_mult standard deviations around every
// output node. On a uniform grid the relative distance ell = xi_j - x_i only
// takes the values r*dx, so all Gaussian moment weights are tabulated once
// per window offset r.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "burgers/errors.hpp"
#include "burgers/grid.hpp"
#include "burgers/special.hpp"
#include "burgers/splines.hpp"

namespace burgers {

/// Empirical stability threshold on d = nu dt / dx^2.
inline constexpr double kStabilityThreshold = 0.02;

struct DiffusionParams {
  double nu = 1.0;
  double dt = 1.0;
  double margin_mult = 5.0;
  /// Number of output derivative orders (0..deriv_count-1).
  int deriv_count = 1;

  double delta() const { return 4.0 * nu * dt; }
  double sigma() const { return std::sqrt(2.0 * nu * dt); }
  double half_width() const { return margin_mult * sigma(); }
  double diffusion_number(double dx) const { return nu * dt / (dx * dx); }
  /// True when d falls below the empirical stability threshold.
  bool stability_advisory(double dx) const { return diffusion_number(dx) < kStabilityThreshold; }

  void validate() const {
    if (!(nu > 0.0)) throw ConfigError("viscosity nu must be positive");
    if (!(dt > 0.0)) throw ConfigError("time step dt must be positive");
    if (!(margin_mult > 0.0)) throw ConfigError("margin multiplier must be positive");
    if (deriv_count < 1 || deriv_count > 4) throw ConfigError("deriv_count must be in 1..4");
  }
};

/// Inclusive range of segment indices.
struct SegmentRange {
  std::ptrdiff_t first = 0;
  std::ptrdiff_t last = -1;
  std::ptrdiff_t size() const { return last - first + 1; }
};

/// Segments [x_j, x_j + dx] overlapping [x_i - half_width, x_i + half_width]
/// in the infinite index space of `spec` (indices may fall outside 0..n-2).
inline SegmentRange window_segments(const GridSpec& spec, double x_i, double half_width) {
  if (!(half_width > 0.0)) throw ContractViolation("window_segments: half_width must be positive");
  const double lo = (x_i - half_width - spec.x0) / spec.dx;
  const double hi = (x_i + half_width - spec.x0) / spec.dx;
  return {static_cast<std::ptrdiff_t>(std::floor(lo - 1.0)) + 1, static_cast<std::ptrdiff_t>(std::ceil(hi)) - 1};
}

/// Nodes of padding each side needed by the coverage precondition:
/// ceil(half_width/dx) + 1.
inline std::size_t required_padding(const DiffusionParams& params, double dx) {
  return ghost_count_for(params.half_width(), dx);
}

/// Tabulated window weights for fixed (dx, nu, dt, margin, deriv_count).
///
/// weight(k, r)[m] = (pi delta)^(-1/2) int_0^dx (y/dx)^m q_k(y; r dx) exp(-(y + r dx)^2/delta) dy,
/// so a segment written in the scaled variable s = y/dx with coefficients
/// c~_m contributes sum_m c~_m weight(k, r)[m] to the k-th derivative at the node.
class DiffusionKernel {
 public:
  DiffusionKernel(double dx, const DiffusionParams& params, int max_degree)
      : dx_(dx), params_(params), max_degree_(max_degree) {
    params.validate();
    if (!(dx > 0.0)) throw ConfigError("kernel grid spacing must be positive");
    if (max_degree < 0) throw ContractViolation("kernel max_degree must be non-negative");
    const int top = max_degree + params.deriv_count - 1;
    if (top > kMaxMomentOrder) {
      throw ConfigError("polynomial degree " + std::to_string(max_degree) + " needs moments beyond order " +
                        std::to_string(kMaxMomentOrder));
    }
    const double c = params.half_width() / dx;
    offset_lo_ = static_cast<std::ptrdiff_t>(std::floor(-c - 1.0)) + 1;
    offset_hi_ = static_cast<std::ptrdiff_t>(std::ceil(c)) - 1;
    padding_ = required_padding(params, dx);

    const double delta = params.delta();
    const double norm = dx / std::sqrt(std::numbers::pi * delta);
    const auto width = static_cast<std::size_t>(max_degree + 1);
    weights_.assign(static_cast<std::size_t>(params.deriv_count) * offset_count() * width, 0.0);
    for (std::ptrdiff_t r = offset_lo_; r <= offset_hi_; ++r) {
      const double ell = static_cast<double>(r) * dx;
      MomentDiagnostics diag;
      const auto M = scaled_pg_moments({delta, ell, dx}, top, &diag);
      recursion_orders_min_ = std::min(recursion_orders_min_, diag.recursion_orders);
      for (int k = 0; k < params.deriv_count; ++k) {
        auto q = window_weight_polynomial(k, ell, delta);
        // y^p = dx^p s^p
        double dxp = 1.0;
        for (double& v : q) {
          v *= dxp;
          dxp *= dx;
        }
        double* w = weights_.data() + index(k, r);
        for (std::size_t m = 0; m < width; ++m) {
          double acc = 0.0;
          for (std::size_t p = 0; p < q.size(); ++p) acc += q[p] * M[m + p];
          w[m] = norm * acc;
        }
      }
    }
  }

  double dx() const { return dx_; }
  const DiffusionParams& params() const { return params_; }
  int max_degree() const { return max_degree_; }
  std::ptrdiff_t offset_lo() const { return offset_lo_; }
  std::ptrdiff_t offset_hi() const { return offset_hi_; }
  std::size_t offset_count() const { return static_cast<std::size_t>(offset_hi_ - offset_lo_ + 1); }
  /// Nodes required on each side of an output node.
  std::size_t padding() const { return padding_; }
  /// Smallest number of leading orders taken from the moment recursion over
  /// all offsets (the rest came from the quadrature fallback).
  int recursion_orders_min() const { return recursion_orders_min_; }

  std::span<const double> weight(int k, std::ptrdiff_t r) const {
    return {weights_.data() + index(k, r), static_cast<std::size_t>(max_degree_ + 1)};
  }

  /// Throws if node `i` of a grid with `n` nodes lacks the padding the window
  /// needs.
  void check_coverage(const GridSpec& spec, std::size_t i) const {
    if (i < padding_ || i + padding_ >= spec.n) {
      throw ContractViolation("diffusion window not covered at node " + std::to_string(i) +
                              " (x = " + std::to_string(spec.x(static_cast<std::ptrdiff_t>(i))) + "): needs " +
                              std::to_string(padding_) + " nodes each side");
    }
  }

 private:
  std::size_t index(int k, std::ptrdiff_t r) const {
    const auto width = static_cast<std::size_t>(max_degree_ + 1);
    return (static_cast<std::size_t>(k) * offset_count() + static_cast<std::size_t>(r - offset_lo_)) * width;
  }

  double dx_;
  DiffusionParams params_;
  int max_degree_;
  std::ptrdiff_t offset_lo_ = 0;
  std::ptrdiff_t offset_hi_ = -1;
  std::size_t padding_ = 0;
  int recursion_orders_min_ = kMaxMomentOrder + 1;
  std::vector<double> weights_;
};

/// Segment coefficients rewritten in s = y/dx, flat with the same stride.
inline std::vector<double> scaled_coefficients(const PiecewisePoly& p) {
  std::vector<double> out(p.raw().begin(), p.raw().end());
  const std::size_t stride = p.stride();
  for (std::size_t j = 0; j < p.segment_count(); ++j) {
    poly::scale_argument(std::span<double>(out.data() + j * stride, stride), p.spec().dx);
  }
  return out;
}

/// Diffused value and x-derivatives at nodes [first, first + count) of p's grid.
/// Result is indexed [order][node - first]. Segments are summed in ascending
/// index order and coefficients in ascending power, so the result for a node
/// does not depend on which range it was requested in.
inline std::vector<std::vector<double>> diffuse(const PiecewisePoly& p, const DiffusionKernel& kernel,
                                                std::size_t first, std::size_t count) {
  if (p.spec().dx != kernel.dx()) throw ContractViolation("diffuse: kernel built for a different dx");
  if (p.degree() > kernel.max_degree()) throw ContractViolation("diffuse: polynomial degree exceeds kernel");
  const int orders = kernel.params().deriv_count;
  std::vector<std::vector<double>> out(static_cast<std::size_t>(orders), std::vector<double>(count, 0.0));
  const auto scaled = scaled_coefficients(p);
  const std::size_t stride = p.stride();
  for (std::size_t c = 0; c < count; ++c) {
    const std::size_t i = first + c;
    kernel.check_coverage(p.spec(), i);
    for (std::ptrdiff_t r = kernel.offset_lo(); r <= kernel.offset_hi(); ++r) {
      const auto j = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) + r);
      const double* seg = scaled.data() + j * stride;
      for (int k = 0; k < orders; ++k) {
        const auto w = kernel.weight(k, r);
        double acc = 0.0;
        for (std::size_t m = 0; m < stride; ++m) acc += seg[m] * w[m];
        out[static_cast<std::size_t>(k)][c] += acc;
      }
    }
  }
  return out;
}

/// Convenience form building a one-off kernel sized to p's degree.
inline std::vector<std::vector<double>> diffuse(const PiecewisePoly& p, const DiffusionParams& params,
                                                std::size_t first, std::size_t count) {
  DiffusionKernel kernel(p.spec().dx, params, p.degree());
  return diffuse(p, kernel, first, count);
}

}  // namespace burgers

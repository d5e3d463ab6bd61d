#pragma once

// Local Hermite splines on a uniform grid, stored per segment as monomial
// coefficients in the local coordinate y = x - x_j, 0 <= y <= dx.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "burgers/errors.hpp"
#include "burgers/grid.hpp"

namespace burgers {

namespace poly {

/// Coefficients of a*b (ascending powers).
inline std::vector<double> multiply(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

/// order-th derivative of the polynomial at y (Horner on the differentiated
/// coefficients).
inline double evaluate(std::span<const double> c, double y, int order = 0) {
  const int deg = static_cast<int>(c.size()) - 1;
  if (order > deg) return 0.0;
  double acc = 0.0;
  for (int k = deg; k >= order; --k) {
    double f = 1.0;
    for (int r = 0; r < order; ++r) f *= static_cast<double>(k - r);
    acc = acc * y + f * c[static_cast<std::size_t>(k)];
  }
  return acc;
}

/// Rewrites coefficients of p(y) as coefficients of p(h*s), in place.
inline void scale_argument(std::span<double> c, double h) {
  double hk = 1.0;
  for (double& v : c) {
    v *= hk;
    hk *= h;
  }
}

/// Closed-form Hermite interpolant on s in [0,1] for 1..4 matched orders.
/// left[k] / right[k] are the k-th s-derivatives at s = 0 / s = 1; the
/// output has 2*orders coefficients in ascending powers of s.
inline void hermite_unit(std::size_t orders, const double* L, const double* R, double* c) {
  switch (orders) {
    case 1:
      c[0] = L[0];
      c[1] = R[0] - L[0];
      return;
    case 2: {
      const double d = R[0] - L[0];
      c[0] = L[0];
      c[1] = L[1];
      c[2] = 3.0 * d - 2.0 * L[1] - R[1];
      c[3] = -2.0 * d + L[1] + R[1];
      return;
    }
    case 3: {
      const double d = R[0] - L[0];
      c[0] = L[0];
      c[1] = L[1];
      c[2] = 0.5 * L[2];
      c[3] = 10.0 * d - 6.0 * L[1] - 4.0 * R[1] - 1.5 * L[2] + 0.5 * R[2];
      c[4] = -15.0 * d + 8.0 * L[1] + 7.0 * R[1] + 1.5 * L[2] - R[2];
      c[5] = 6.0 * d - 3.0 * L[1] - 3.0 * R[1] - 0.5 * L[2] + 0.5 * R[2];
      return;
    }
    case 4: {
      const double d = R[0] - L[0];
      c[0] = L[0];
      c[1] = L[1];
      c[2] = 0.5 * L[2];
      c[3] = L[3] / 6.0;
      c[4] = 35.0 * d - 20.0 * L[1] - 15.0 * R[1] - 5.0 * L[2] + 2.5 * R[2] - (2.0 / 3.0) * L[3] - R[3] / 6.0;
      c[5] = -84.0 * d + 45.0 * L[1] + 39.0 * R[1] + 10.0 * L[2] - 7.0 * R[2] + L[3] + 0.5 * R[3];
      c[6] = 70.0 * d - 36.0 * L[1] - 34.0 * R[1] - 7.5 * L[2] + 6.5 * R[2] - (2.0 / 3.0) * L[3] - 0.5 * R[3];
      c[7] = -20.0 * d + 10.0 * L[1] + 10.0 * R[1] + 2.0 * L[2] - 2.0 * R[2] + L[3] / 6.0 + R[3] / 6.0;
      return;
    }
    default:
      throw ContractViolation("hermite_unit supports 1..4 matched derivative orders");
  }
}

}  // namespace poly

/// Per-segment polynomials P_j(y) = sum_k c[j][k] y^k over a uniform grid,
/// one segment per adjacent node pair.
class PiecewisePoly {
 public:
  PiecewisePoly() = default;
  PiecewisePoly(GridSpec spec, int degree)
      : spec_(spec), degree_(degree), coeffs_((spec.n - 1) * static_cast<std::size_t>(degree + 1), 0.0) {
    if (degree < 0) throw ContractViolation("polynomial degree must be non-negative");
  }

  const GridSpec& spec() const { return spec_; }
  int degree() const { return degree_; }
  std::size_t stride() const { return static_cast<std::size_t>(degree_ + 1); }
  std::size_t segment_count() const { return spec_.n - 1; }

  std::span<double> segment(std::size_t j) { return {coeffs_.data() + j * stride(), stride()}; }
  std::span<const double> segment(std::size_t j) const { return {coeffs_.data() + j * stride(), stride()}; }

  double coeff(std::size_t j, std::size_t k) const { return coeffs_[j * stride() + k]; }
  double& coeff(std::size_t j, std::size_t k) { return coeffs_[j * stride() + k]; }

  std::span<const double> raw() const { return coeffs_; }

 private:
  GridSpec spec_{};
  int degree_ = 0;
  std::vector<double> coeffs_;
};

/// Hermite spline through the stored orders of g: linear (LG), cubic (CG)
/// or quintic (QG). No linear solves; the interpolation systems are
/// pre-solved in hermite_unit.
inline PiecewisePoly build_spline(const GridFunction& g) {
  g.validate();
  const std::size_t orders = g.order_count();
  const double h = g.spec.dx;
  PiecewisePoly p(g.spec, static_cast<int>(2 * orders - 1));
  std::array<double, 4> L{};
  std::array<double, 4> R{};
  for (std::size_t j = 0; j + 1 < g.size(); ++j) {
    double hk = 1.0;
    for (std::size_t k = 0; k < orders; ++k) {
      L[k] = hk * g.orders[k][j];
      R[k] = hk * g.orders[k][j + 1];
      hk *= h;
    }
    auto seg = p.segment(j);
    poly::hermite_unit(orders, L.data(), R.data(), seg.data());
    poly::scale_argument(seg, 1.0 / h);
  }
  return p;
}

/// Index of the segment containing x (left-closed; the right domain edge
/// belongs to the last segment).
inline std::size_t segment_index(const PiecewisePoly& p, double x) {
  const auto& s = p.spec();
  if (!(x >= s.x0) || !(x <= s.x_last())) {
    throw RangeError("x = " + std::to_string(x) + " outside spline domain [" + std::to_string(s.x0) + ", " +
                     std::to_string(s.x_last()) + "]");
  }
  auto j = static_cast<std::size_t>(std::floor((x - s.x0) / s.dx));
  return std::min(j, p.segment_count() - 1);
}

/// d^order P_j/dy^order at y = x - x_j for the segment containing x.
inline double eval(const PiecewisePoly& p, double x, int order = 0) {
  if (order < 0 || order > p.degree()) {
    throw ContractViolation("eval: derivative order " + std::to_string(order) + " exceeds degree");
  }
  const std::size_t j = segment_index(p, x);
  const double y = x - p.spec().x(static_cast<std::ptrdiff_t>(j));
  return poly::evaluate(p.segment(j), y, order);
}

/// Exact integral of segment j over [0, dx].
inline double segment_integral(const PiecewisePoly& p, std::size_t j) {
  const double h = p.spec().dx;
  const auto c = p.segment(j);
  double acc = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * h + c[k] / static_cast<double>(k + 1);
  return acc * h;
}

/// Running integral from the leftmost node: Int[0] = 0,
/// Int[i] = Int[i-1] + segment_integral(i-1).
inline std::vector<double> cumulative_integral(const PiecewisePoly& p) {
  std::vector<double> out(p.spec().n, 0.0);
  for (std::size_t i = 1; i < out.size(); ++i) out[i] = out[i - 1] + segment_integral(p, i - 1);
  return out;
}

}  // namespace burgers

#pragma once

// Uniform-grid data model: grid geometry, nodal fields with stored
// derivatives, ghost extension per boundary condition and finite-difference
// initialisation of the stored derivatives.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "burgers/errors.hpp"

namespace burgers {

/// Uniform grid: node i sits at x0 + i*dx.
struct GridSpec {
  double x0 = 0.0;
  double dx = 1.0;
  std::size_t n = 2;

  /// Position of node i, computed directly (no accumulated drift). Negative
  /// indices address points left of x0.
  double x(std::ptrdiff_t i) const { return x0 + static_cast<double>(i) * dx; }
  double x_last() const { return x(static_cast<std::ptrdiff_t>(n) - 1); }

  void validate() const {
    if (!(dx > 0.0) || !std::isfinite(dx)) {
      throw ConfigError("grid spacing dx must be positive and finite");
    }
    if (n < 2) throw ConfigError("grid needs at least two nodes");
    if (!std::isfinite(x0)) throw ConfigError("grid origin must be finite");
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Spline family used on the data grid.
enum class SchemeKind { LG, CG, QG };

/// Stored u-space orders: LG {u}, CG {u,u_x}, QG {u,u_x,u_xx}.
constexpr std::size_t u_order_count(SchemeKind s) {
  switch (s) {
    case SchemeKind::LG: return 1;
    case SchemeKind::CG: return 2;
    case SchemeKind::QG: return 3;
  }
  return 0;
}

/// phi-space orders needed by the backward transform (one more than u-space).
constexpr std::size_t phi_order_count(SchemeKind s) { return u_order_count(s) + 1; }

/// Degree of the u-space Hermite spline: 1, 3, 5.
constexpr int spline_degree(SchemeKind s) { return 2 * static_cast<int>(u_order_count(s)) - 1; }

/// Degree of the Hermite exponent polynomial: 3, 5, 7.
constexpr int exponent_degree(SchemeKind s) { return 2 * static_cast<int>(phi_order_count(s)) - 1; }

inline std::string_view to_string(SchemeKind s) {
  switch (s) {
    case SchemeKind::LG: return "lg";
    case SchemeKind::CG: return "cg";
    case SchemeKind::QG: return "qg";
  }
  return "?";
}

inline SchemeKind parse_scheme(std::string_view text) {
  if (text == "lg" || text == "LG") return SchemeKind::LG;
  if (text == "cg" || text == "CG") return SchemeKind::CG;
  if (text == "qg" || text == "QG") return SchemeKind::QG;
  throw ConfigError("unknown scheme '" + std::string(text) + "' (expected lg, cg or qg)");
}

/// Nodal field plus its stored derivatives. `orders[k]` holds the k-th
/// x-derivative at every node; orders[0] is the field itself.
struct GridFunction {
  GridSpec spec;
  SchemeKind scheme = SchemeKind::CG;
  std::vector<std::vector<double>> orders;

  GridFunction() = default;
  GridFunction(GridSpec s, SchemeKind k) : spec(s), scheme(k), orders(u_order_count(k), std::vector<double>(s.n, 0.0)) {}

  std::size_t size() const { return spec.n; }
  std::size_t order_count() const { return orders.size(); }

  std::vector<double>& values() { return orders.at(0); }
  const std::vector<double>& values() const { return orders.at(0); }

  bool has_deriv(std::size_t k) const { return k < orders.size(); }
  const std::vector<double>& deriv(std::size_t k) const {
    if (!has_deriv(k)) {
      throw ContractViolation("grid function has no stored derivative of order " + std::to_string(k));
    }
    return orders[k];
  }

  /// Checks that the derivative layout matches the scheme and lengths agree.
  void validate() const {
    spec.validate();
    if (orders.size() != u_order_count(scheme)) {
      throw ContractViolation("grid function derivative layout does not match scheme " +
                              std::string(to_string(scheme)));
    }
    for (const auto& o : orders) {
      if (o.size() != spec.n) throw ContractViolation("grid function array length differs from node count");
    }
  }
};

struct Periodic {
  friend bool operator==(const Periodic&, const Periodic&) = default;
};

/// Dirichlet wall realised by odd reflection of (u - u_b) about each end node.
struct DirichletInvertedReflection {
  double u_left = 0.0;
  double u_right = 0.0;
  friend bool operator==(const DirichletInvertedReflection&, const DirichletInvertedReflection&) = default;
};

/// Constant far-field state beyond each end, zero derivatives.
struct FixedFarField {
  double u_left = 0.0;
  double u_right = 0.0;
  friend bool operator==(const FixedFarField&, const FixedFarField&) = default;
};

using BoundaryCondition = std::variant<Periodic, DirichletInvertedReflection, FixedFarField>;

/// Number of ghost nodes per side needed to cover a kernel of the given
/// half-width plus one segment: ceil(half_width/dx) + 1.
inline std::size_t ghost_count_for(double half_width, double dx) {
  return static_cast<std::size_t>(std::ceil(half_width / dx)) + 1;
}

/// Returns g padded with n_ghost nodes on each side, filled per `bc`.
inline GridFunction extend_with_ghosts(const GridFunction& g, const BoundaryCondition& bc, std::size_t n_ghost) {
  g.validate();
  const std::size_t n = g.size();
  if (n_ghost < 1) throw ConfigError("n_ghost must be at least 1");
  if (std::holds_alternative<Periodic>(bc) && n_ghost > n) {
    throw ConfigError("periodic extension needs n_ghost <= n (got " + std::to_string(n_ghost) + " > " +
                      std::to_string(n) + ")");
  }
  if (std::holds_alternative<DirichletInvertedReflection>(bc) && n_ghost > n - 1) {
    throw ConfigError("inverted reflection needs n_ghost <= n - 1 (got " + std::to_string(n_ghost) + ")");
  }

  GridSpec ext_spec{g.spec.x(-static_cast<std::ptrdiff_t>(n_ghost)), g.spec.dx, n + 2 * n_ghost};
  GridFunction out(ext_spec, g.scheme);
  for (std::size_t k = 0; k < g.order_count(); ++k) {
    const auto& src = g.orders[k];
    auto& dst = out.orders[k];
    for (std::size_t i = 0; i < n; ++i) dst[n_ghost + i] = src[i];

    for (std::size_t j = 1; j <= n_ghost; ++j) {
      double left = 0.0;
      double right = 0.0;
      if (std::holds_alternative<Periodic>(bc)) {
        left = src[n - j];
        right = src[j - 1];
      } else if (const auto* d = std::get_if<DirichletInvertedReflection>(&bc)) {
        // Odd extension of (u - u_b): value reflected through u_b, first
        // derivative even, second derivative odd.
        const double l_in = src[j];
        const double r_in = src[n - 1 - j];
        switch (k) {
          case 0:
            left = 2.0 * d->u_left - l_in;
            right = 2.0 * d->u_right - r_in;
            break;
          case 1:
            left = l_in;
            right = r_in;
            break;
          default:
            left = -l_in;
            right = -r_in;
            break;
        }
      } else {
        const auto& f = std::get<FixedFarField>(bc);
        left = k == 0 ? f.u_left : 0.0;
        right = k == 0 ? f.u_right : 0.0;
      }
      dst[n_ghost - j] = left;
      dst[n_ghost + n - 1 + j] = right;
    }
  }
  return out;
}

/// Drops n_ghost nodes from each side.
inline GridFunction restrict_interior(const GridFunction& g, std::size_t n_ghost) {
  if (2 * n_ghost + 2 > g.size()) throw ContractViolation("restrict_interior: too many ghosts removed");
  GridSpec s{g.spec.x(static_cast<std::ptrdiff_t>(n_ghost)), g.spec.dx, g.size() - 2 * n_ghost};
  GridFunction out(s, g.scheme);
  for (std::size_t k = 0; k < g.order_count(); ++k) {
    std::copy(g.orders[k].begin() + static_cast<std::ptrdiff_t>(n_ghost),
              g.orders[k].begin() + static_cast<std::ptrdiff_t>(n_ghost + s.n), out.orders[k].begin());
  }
  return out;
}

/// Central first difference inside, first-order one-sided at both ends.
inline std::vector<double> first_difference(std::span<const double> v, double dx) {
  const std::size_t n = v.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  d[0] = (v[1] - v[0]) / dx;
  d[n - 1] = (v[n - 1] - v[n - 2]) / dx;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2.0 * dx);
  return d;
}

/// Central second difference inside; the ends reuse the nearest interior
/// stencil (first-order one-sided).
inline std::vector<double> second_difference(std::span<const double> v, double dx) {
  const std::size_t n = v.size();
  std::vector<double> d(n, 0.0);
  if (n < 3) return d;
  const double h2 = dx * dx;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / h2;
  d[0] = (v[2] - 2.0 * v[1] + v[0]) / h2;
  d[n - 1] = (v[n - 1] - 2.0 * v[n - 2] + v[n - 3]) / h2;
  return d;
}

/// Builds a grid function from node values, initialising whatever
/// derivatives `scheme` stores by finite differences.
inline GridFunction init_derivatives(std::span<const double> values, const GridSpec& spec, SchemeKind scheme) {
  spec.validate();
  if (values.size() != spec.n) {
    throw ContractViolation("init_derivatives: " + std::to_string(values.size()) + " values for " +
                            std::to_string(spec.n) + " nodes");
  }
  GridFunction g(spec, scheme);
  g.orders[0].assign(values.begin(), values.end());
  if (g.order_count() > 1) g.orders[1] = first_difference(values, spec.dx);
  if (g.order_count() > 2) g.orders[2] = second_difference(values, spec.dx);
  return g;
}

/// Same, with the differences taken over one ghost node filled per `bc`, so
/// periodic data gets central differences everywhere.
inline GridFunction init_derivatives(std::span<const double> values, const GridSpec& spec, SchemeKind scheme,
                                     const BoundaryCondition& bc) {
  GridFunction g = init_derivatives(values, spec, SchemeKind::LG);
  if (u_order_count(scheme) == 1) return g;
  if (spec.n < 3) return init_derivatives(values, spec, scheme);
  const auto ext = extend_with_ghosts(g, bc, 1);
  const auto& v = ext.values();
  GridFunction out(spec, scheme);
  out.orders[0].assign(values.begin(), values.end());
  const double h2 = spec.dx * spec.dx;
  for (std::size_t i = 0; i < spec.n; ++i) {
    out.orders[1][i] = (v[i + 2] - v[i]) / (2.0 * spec.dx);
    if (out.order_count() > 2) out.orders[2][i] = (v[i + 2] - 2.0 * v[i + 1] + v[i]) / h2;
  }
  return out;
}

}  // namespace burgers

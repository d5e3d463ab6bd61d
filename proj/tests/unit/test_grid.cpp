#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "burgers/grid.hpp"

using namespace burgers;

namespace {

GridFunction lg(std::vector<double> v, double x0 = 0.0, double dx = 1.0) {
  return init_derivatives(v, GridSpec{x0, dx, v.size()}, SchemeKind::LG);
}

}  // namespace

TEST(GridSpec, NodePositionsAreDirect) {
  GridSpec s{-15.0, 0.87, 501};
  EXPECT_EQ(s.x(0), -15.0);
  EXPECT_EQ(s.x(400), -15.0 + 400 * 0.87);
  EXPECT_EQ(s.x(-3), -15.0 - 3 * 0.87);
  EXPECT_EQ(s.x_last(), s.x(500));
}

TEST(GridSpec, RejectsBadGeometry) {
  EXPECT_THROW((GridSpec{0.0, 0.0, 10}.validate()), ConfigError);
  EXPECT_THROW((GridSpec{0.0, -1.0, 10}.validate()), ConfigError);
  EXPECT_THROW((GridSpec{0.0, 0.1, 1}.validate()), ConfigError);
  EXPECT_NO_THROW((GridSpec{0.0, 0.1, 2}.validate()));
}

TEST(Scheme, OrderAndDegreeTables) {
  EXPECT_EQ(u_order_count(SchemeKind::LG), 1u);
  EXPECT_EQ(u_order_count(SchemeKind::CG), 2u);
  EXPECT_EQ(u_order_count(SchemeKind::QG), 3u);
  EXPECT_EQ(phi_order_count(SchemeKind::QG), 4u);
  EXPECT_EQ(spline_degree(SchemeKind::LG), 1);
  EXPECT_EQ(spline_degree(SchemeKind::CG), 3);
  EXPECT_EQ(spline_degree(SchemeKind::QG), 5);
  EXPECT_EQ(exponent_degree(SchemeKind::CG), 5);
  EXPECT_EQ(parse_scheme("qg"), SchemeKind::QG);
  EXPECT_THROW(parse_scheme("hg"), ConfigError);
}

TEST(GridFunction, LayoutFollowsScheme) {
  GridFunction g(GridSpec{0, 1, 5}, SchemeKind::QG);
  EXPECT_EQ(g.order_count(), 3u);
  EXPECT_TRUE(g.has_deriv(2));
  EXPECT_FALSE(g.has_deriv(3));
  EXPECT_THROW(g.deriv(3), ContractViolation);
  g.orders.pop_back();
  EXPECT_THROW(g.validate(), ContractViolation);
}

TEST(Ghosts, PeriodicWrap) {
  const auto g = lg({1, 2, 3, 4});
  const auto e = extend_with_ghosts(g, Periodic{}, 1);
  EXPECT_EQ(e.values(), (std::vector<double>{4, 1, 2, 3, 4, 1}));
  EXPECT_EQ(e.spec.x0, -1.0);
  EXPECT_EQ(e.spec.n, 6u);
}

TEST(Ghosts, PeriodicCopiesAllOrders) {
  std::vector<double> v{0.1, 0.5, -0.2, 0.7, 0.3};
  const auto g = init_derivatives(v, GridSpec{0, 0.5, 5}, SchemeKind::QG);
  const auto e = extend_with_ghosts(g, Periodic{}, 3);
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t j = 1; j <= 3; ++j) {
      EXPECT_EQ(e.orders[k][3 - j], g.orders[k][5 - j]);
      EXPECT_EQ(e.orders[k][3 + 5 - 1 + j], g.orders[k][j - 1]);
    }
  }
}

TEST(Ghosts, PeriodicExtendThenRestrictIsIdentity) {
  std::vector<double> v{0.1, 0.5, -0.2, 0.7, 0.3, 0.9};
  const auto g = init_derivatives(v, GridSpec{2.0, 0.25, 6}, SchemeKind::CG);
  const auto r = restrict_interior(extend_with_ghosts(g, Periodic{}, 4), 4);
  EXPECT_EQ(r.orders, g.orders);
  EXPECT_EQ(r.spec, g.spec);
}

TEST(Ghosts, DirichletOddReflection) {
  // u(s) = s near the left wall at 0, u_b = 0
  std::vector<double> v{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  GridFunction g = init_derivatives(v, GridSpec{0, 0.1, 6}, SchemeKind::QG);
  g.orders[2] = {0.0, 1.0, 2.0, 3.0, 4.0, 5.0};
  const auto e = extend_with_ghosts(g, DirichletInvertedReflection{0.0, 0.5}, 3);
  for (std::size_t j = 1; j <= 3; ++j) {
    EXPECT_DOUBLE_EQ(e.values()[3 - j], -v[j]);                          // u(-s) = -s
    EXPECT_DOUBLE_EQ(e.orders[1][3 - j], g.orders[1][j]);                // even first derivative
    EXPECT_DOUBLE_EQ(e.orders[2][3 - j], -g.orders[2][j]);               // odd second derivative
    EXPECT_DOUBLE_EQ(e.values()[3 + 5 + j], 2 * 0.5 - v[5 - j]);          // through u_b = 0.5
  }
}

TEST(Ghosts, FarFieldConstants) {
  std::vector<double> v{1.0, 1.0, 0.8, 0.2, 0.0, 0.0};
  const auto g = init_derivatives(v, GridSpec{-15, 0.6, 6}, SchemeKind::CG);
  const auto e = extend_with_ghosts(g, FixedFarField{1.0, 0.0}, 4);
  for (std::size_t j = 0; j < 4; ++j) {
    EXPECT_EQ(e.values()[j], 1.0);
    EXPECT_EQ(e.values()[e.size() - 1 - j], 0.0);
    EXPECT_EQ(e.orders[1][j], 0.0);
    EXPECT_EQ(e.orders[1][e.size() - 1 - j], 0.0);
  }
}

TEST(Ghosts, IdempotentContent) {
  std::vector<double> v{0.3, 0.1, 0.4, 0.1, 0.5, 0.9, 0.2};
  const auto g = init_derivatives(v, GridSpec{0, 0.1, 7}, SchemeKind::QG);
  for (const BoundaryCondition bc :
       {BoundaryCondition{Periodic{}}, BoundaryCondition{DirichletInvertedReflection{0.2, 0.1}},
        BoundaryCondition{FixedFarField{1, 0}}}) {
    EXPECT_EQ(extend_with_ghosts(g, bc, 5).orders, extend_with_ghosts(g, bc, 5).orders);
  }
}

TEST(Ghosts, RangeErrors) {
  const auto g = lg({1, 2, 3, 4});
  EXPECT_THROW(extend_with_ghosts(g, Periodic{}, 0), ConfigError);
  EXPECT_THROW(extend_with_ghosts(g, Periodic{}, 5), ConfigError);
  EXPECT_NO_THROW(extend_with_ghosts(g, Periodic{}, 4));
  EXPECT_THROW(extend_with_ghosts(g, DirichletInvertedReflection{}, 4), ConfigError);
  EXPECT_NO_THROW(extend_with_ghosts(g, FixedFarField{}, 40));
}

TEST(InitDerivatives, LinearDataExact) {
  std::vector<double> v;
  for (int i = 0; i < 9; ++i) v.push_back(0.3 + 0.25 * i);
  const auto g = init_derivatives(v, GridSpec{0.3, 0.25, 9}, SchemeKind::CG);
  for (std::size_t i = 0; i < 9; ++i) EXPECT_NEAR(g.orders[1][i], 1.0, 1e-12);
}

TEST(InitDerivatives, QuadraticCentralStencil) {
  // f = x^2, dx = 0.1, node at x = 1
  std::vector<double> v;
  for (int i = 0; i <= 20; ++i) v.push_back(std::pow(i * 0.1, 2));
  const auto g = init_derivatives(v, GridSpec{0.0, 0.1, 21}, SchemeKind::QG);
  EXPECT_NEAR(g.orders[1][10], 2.0, 1e-12);
  for (std::size_t i = 1; i < 20; ++i) {
    EXPECT_NEAR(g.orders[1][i], 2.0 * i * 0.1, 1e-12);
    EXPECT_NEAR(g.orders[2][i], 2.0, 1e-9);
  }
  // one-sided ends
  EXPECT_NEAR(g.orders[1][0], (v[1] - v[0]) / 0.1, 1e-15);
  EXPECT_NEAR(g.orders[1][20], (v[20] - v[19]) / 0.1, 1e-15);
}

TEST(InitDerivatives, ConstantGivesZero) {
  const auto g = init_derivatives(std::vector<double>(7, 2.5), GridSpec{0, 0.1, 7}, SchemeKind::QG);
  for (std::size_t k = 1; k < 3; ++k) {
    for (double d : g.orders[k]) EXPECT_EQ(d, 0.0);
  }
  EXPECT_EQ(lg({1, 2}).order_count(), 1u);
}

TEST(InitDerivatives, LengthMismatch) {
  EXPECT_THROW(init_derivatives(std::vector<double>(3, 0.0), GridSpec{0, 1, 4}, SchemeKind::CG), ContractViolation);
}

TEST(InitDerivatives, PeriodicWrapsTheStencil) {
  const GridSpec s{0.0, 0.1, 20};
  std::vector<double> v(20);
  for (std::size_t i = 0; i < 20; ++i) v[i] = std::sin(std::numbers::pi * s.x(static_cast<std::ptrdiff_t>(i)));
  const auto g = init_derivatives(v, s, SchemeKind::QG, Periodic{});
  std::vector<double> w(20);
  for (std::size_t i = 0; i < 20; ++i) w[(i + 1) % 20] = v[i];
  const auto h = init_derivatives(w, s, SchemeKind::QG, Periodic{});
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t i = 0; i < 20; ++i) EXPECT_EQ(h.orders[k][(i + 1) % 20], g.orders[k][i]);
  }
  EXPECT_DOUBLE_EQ(g.orders[1][0], (v[1] - v[19]) / 0.2);
  EXPECT_DOUBLE_EQ(g.orders[2][19], (v[0] - 2 * v[19] + v[18]) / 0.01);
  // interior agrees with the plain form
  const auto plain = init_derivatives(v, s, SchemeKind::QG);
  for (std::size_t i = 1; i + 1 < 20; ++i) EXPECT_EQ(g.orders[1][i], plain.orders[1][i]);
}

TEST(InitDerivatives, DirichletReflectionAtWall) {
  const GridSpec s{0.0, 0.25, 5};
  const std::vector<double> v{0.0, 0.5, 0.8, 0.5, 0.0};
  const auto g = init_derivatives(v, s, SchemeKind::QG, DirichletInvertedReflection{0.0, 0.0});
  // ghost at -dx is -0.5
  EXPECT_DOUBLE_EQ(g.orders[1][0], (0.5 - -0.5) / 0.5);
  EXPECT_DOUBLE_EQ(g.orders[2][0], 0.0);
}

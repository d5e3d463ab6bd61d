#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "burgers/special.hpp"
#include "burgers/splines.hpp"
#include "oracles.hpp"

using namespace burgers;

namespace {

/// PG_m by adaptive Simpson in long double, tolerance relative to a coarse
/// first estimate.
long double pg_oracle(const GaussianWindow& w, int m) {
  const long double d = w.delta, l = w.ell;
  auto f = [&](long double y) { return std::pow(y, m) * std::exp(-(y + l) * (y + l) / d); };
  const long double coarse = oracle::adaptive_simpson(f, 0.0L, w.dx, 1e30L, 256, 0);
  const long double tol = 1e-12L * std::max(1.0L, std::fabs(coarse));
  return oracle::adaptive_simpson(f, 0.0L, w.dx, tol, 256, 40);
}

}  // namespace

TEST(Erf, MatchesMaclaurinOracle) {
  double worst = 0.0;
  for (double x = -3.0; x <= 3.0; x += 0.0137) {
    const double ref = static_cast<double>(oracle::erf_maclaurin(x));
    worst = std::max(worst, std::fabs(burgers::erf(x) - ref));
  }
  EXPECT_LE(worst, 1e-14);
}

TEST(Erf, TailAgainstLibm) {
  for (double x = 3.0; x <= 8.0; x += 0.01) EXPECT_NEAR(burgers::erf(x), std::erf(x), 1e-15) << x;
}

TEST(Erf, KnownValuesAndSymmetry) {
  EXPECT_EQ(burgers::erf(0.0), 0.0);
  EXPECT_EQ(burgers::erf(40.0), 1.0);
  EXPECT_EQ(burgers::erf(std::numeric_limits<double>::infinity()), 1.0);
  EXPECT_NEAR(burgers::erf(1.0), 0.842700792949715, 1e-14);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-10.0, 10.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = U(rng);
    EXPECT_EQ(burgers::erf(-x), -burgers::erf(x));
  }
}

TEST(Erfc, RelativeAccuracyIntoTheTail) {
  for (double x = -3.0; x <= 26.0; x += 0.01) {
    EXPECT_NEAR(burgers::erfc(x) / std::erfc(x), 1.0, 1e-13) << x;
  }
}

TEST(Erfc, ScaledAndLogForms) {
  for (double x : {-2.0, 0.0, 0.5, 3.0, 10.0}) {
    EXPECT_NEAR(erfcx(x), std::exp(x * x) * std::erfc(x), 1e-13 * erfcx(x));
    EXPECT_NEAR(log_erfc(x), std::log(std::erfc(x)), 1e-13 * std::max(1.0, std::fabs(log_erfc(x))));
  }
  // far tail: log erfc(x) ~ -x^2 - log(x sqrt(pi))
  const double x = 100.0;
  EXPECT_NEAR(log_erfc(x), -x * x - std::log(x * std::sqrt(std::numbers::pi)), 1e-3);
  EXPECT_NEAR(log_erfc(-30.0), std::log(2.0), 1e-15);
}

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  const auto& r = gauss_legendre(20);
  ASSERT_EQ(r.nodes.size(), 20u);
  for (int m = 0; m < 40; ++m) {
    double s = 0.0;
    for (std::size_t q = 0; q < 20; ++q) s += r.weights[q] * std::pow(r.nodes[q], m);
    const double exact = m % 2 ? 0.0 : 2.0 / (m + 1);
    EXPECT_NEAR(s, exact, 1e-14) << m;
  }
}

TEST(PgMoments, EmptyInterval) {
  for (double v : pg_moments({0.7, 1.3, 0.0}, 10)) EXPECT_EQ(v, 0.0);
}

TEST(PgMoments, BaseCaseClosedForm) {
  const auto M = pg_moments({1.0, 0.0, 1.0}, 0);
  ASSERT_EQ(M.size(), 1u);
  EXPECT_NEAR(M[0], 0.746824132812427, 1e-15);
  const double oracle_value = 0.5 * std::sqrt(std::numbers::pi) * static_cast<double>(oracle::erf_maclaurin(1.0L));
  EXPECT_NEAR(M[0], oracle_value, 1e-15);
}

TEST(PgMoments, HandCaseAgainstQuadrature) {
  const GaussianWindow w{0.7, 0.3, 0.5};
  const auto M = pg_moments(w, 8);
  for (int m = 0; m <= 8; ++m) EXPECT_NEAR(M[static_cast<std::size_t>(m)], static_cast<double>(pg_oracle(w, m)), 1e-11);
}

TEST(PgMoments, NegativeOrderAndCap) {
  EXPECT_THROW(pg_moments({1, 0, 1}, -1), ContractViolation);
  EXPECT_THROW(pg_moments({1, 0, 1}, kMaxMomentOrder + 1), ContractViolation);
  EXPECT_NO_THROW(pg_moments({1, 0, 1}, kMaxMomentOrder));
}

TEST(PgMoments, RandomisedAgainstQuadrature) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> L(-10.0, 10.0), D(0.01, 10.0), H(0.01, 5.0);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const GaussianWindow w{D(rng), L(rng), H(rng)};
    const auto M = pg_moments(w, 80);
    for (int m = 0; m <= 80; ++m) {
      const double ref = static_cast<double>(pg_oracle(w, m));
      const double err = std::fabs(M[static_cast<std::size_t>(m)] - ref) / std::max(1.0, std::fabs(ref));
      worst = std::max(worst, err);
      ASSERT_LE(err, 1e-9) << "delta=" << w.delta << " ell=" << w.ell << " dx=" << w.dx << " m=" << m;
    }
  }
  RecordProperty("worst_scaled_error", std::to_string(worst));
}

TEST(PgMoments, ScaledFormIsConsistent) {
  const GaussianWindow w{0.3, -0.4, 0.7};
  const auto M = pg_moments(w, 12);
  const auto S = scaled_pg_moments(w, 12);
  for (int m = 0; m <= 12; ++m) EXPECT_NEAR(S[static_cast<std::size_t>(m)] * std::pow(0.7, m + 1), M[static_cast<std::size_t>(m)], 1e-15);
}

TEST(PgMoments, CompletenessOverWindow) {
  // unit partition of the kernel mass over a +-5 sigma tiling
  for (double delta : {0.04, 0.4, 3.2}) {
    const double dx = 0.1;
    const double sigma = std::sqrt(delta / 2.0);
    const auto r_lo = static_cast<int>(std::floor(-5.0 * sigma / dx));
    const auto r_hi = static_cast<int>(std::ceil(5.0 * sigma / dx));
    double mass = 0.0;
    for (int r = r_lo; r < r_hi; ++r) mass += pg_moments({delta, r * dx, dx}, 0)[0];
    mass /= std::sqrt(std::numbers::pi * delta);
    EXPECT_NEAR(mass, 1.0, 6e-7) << delta;
  }
}

TEST(WindowWeight, LowOrders) {
  EXPECT_EQ(window_weight_polynomial(0, 0.4, 0.9), std::vector<double>{1.0});
  // k = 1 with delta = 4 nu dt: (y + ell)/(2 nu dt)
  const double nu = 0.3, dt = 0.25, ell = -0.7;
  const auto q1 = window_weight_polynomial(1, ell, 4 * nu * dt);
  ASSERT_EQ(q1.size(), 2u);
  EXPECT_NEAR(q1[0], ell / (2 * nu * dt), 1e-14);
  EXPECT_NEAR(q1[1], 1.0 / (2 * nu * dt), 1e-14);
  // k = 2: (2(y+ell)/delta)^2 - 2/delta
  const double delta = 0.8;
  const auto q2 = window_weight_polynomial(2, ell, delta);
  for (double y : {-0.3, 0.0, 0.45}) {
    const double z = 2 * (y + ell) / delta;
    EXPECT_NEAR(poly::evaluate(q2, y), z * z - 2 / delta, 1e-12);
  }
  EXPECT_THROW(window_weight_polynomial(-1, 0, 1), ContractViolation);
}

TEST(WindowWeight, FiniteDifferenceInNodePosition) {
  // G(x_i) = exp(-(xi + y - x_i)^2/delta), derivatives in x_i
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const double delta = 0.6;
  for (int trial = 0; trial < 5; ++trial) {
    const double xi = U(rng), y = 0.5 * (U(rng) + 1.0), xi_node = U(rng);
    auto G = [&](double xn) { return std::exp(-std::pow(xi + y - xn, 2) / delta); };
    const double ell = xi - xi_node;
    const double h = 1e-3;
    const double g0 = G(xi_node);
    const double d1 = (G(xi_node + h) - G(xi_node - h)) / (2 * h);
    auto second = [&](double hh) { return (G(xi_node + hh) - 2 * g0 + G(xi_node - hh)) / (hh * hh); };
    const double d2 = (4.0 * second(0.5 * h) - second(h)) / 3.0;  // Richardson
    const double d3 = (G(xi_node + 2 * h) - 2 * G(xi_node + h) + 2 * G(xi_node - h) - G(xi_node - 2 * h)) / (2 * h * h * h);
    const double q1 = poly::evaluate(window_weight_polynomial(1, ell, delta), y) * g0;
    const double q2 = poly::evaluate(window_weight_polynomial(2, ell, delta), y) * g0;
    const double q3 = poly::evaluate(window_weight_polynomial(3, ell, delta), y) * g0;
    EXPECT_NEAR(q1, d1, 1e-5 * std::max(1.0, std::fabs(q1)));
    EXPECT_NEAR(q2, d2, 1e-7 * std::max(1.0, std::fabs(q2)));
    EXPECT_NEAR(q3, d3, 1e-4 * std::max(1.0, std::fabs(q3)));
  }
}

TEST(WindowWeight, HermiteClosedForm) {
  // q_k(y) = delta^(-k/2) He_k(z) with z = sqrt(2/delta)(y+ell) scaled as
  // physicists' H_k(u)/delta^(k/2), u = (y+ell)/sqrt(delta)
  const double delta = 1.7, ell = 0.35;
  auto H = [](int k, double u) {
    double h0 = 1.0, h1 = 2.0 * u;
    if (k == 0) return h0;
    for (int n = 1; n < k; ++n) {
      const double h2 = 2.0 * u * h1 - 2.0 * n * h0;
      h0 = h1;
      h1 = h2;
    }
    return h1;
  };
  for (int k = 0; k <= 3; ++k) {
    const auto q = window_weight_polynomial(k, ell, delta);
    for (double y : {0.0, 0.2, 0.9}) {
      const double u = (y + ell) / std::sqrt(delta);
      EXPECT_NEAR(poly::evaluate(q, y), H(k, u) / std::pow(delta, k / 2.0), 1e-12) << k;
    }
  }
}

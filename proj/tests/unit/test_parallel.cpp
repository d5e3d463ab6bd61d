#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "burgers/analytic.hpp"
#include "burgers/parallel.hpp"

using namespace burgers;

namespace {

struct Case {
  const char* name;
  SolverConfig cfg;
  std::vector<double> u0;
};

std::vector<double> sample(const GridSpec& g, auto f) {
  std::vector<double> v(g.n);
  for (std::size_t i = 0; i < g.n; ++i) v[i] = f(g.x(static_cast<std::ptrdiff_t>(i)));
  return v;
}

std::vector<Case> cases() {
  std::vector<Case> out;
  {
    SolverConfig c;
    c.scheme = SchemeKind::CG;
    c.nu = 0.1;
    c.dt = 0.01;
    c.grid = GridSpec{0.0, 0.02, 100};
    c.bc = Periodic{};
    out.push_back({"sine", c, sample(c.grid, [](double x) { return std::sin(std::numbers::pi * x); })});
  }
  {
    SolverConfig c;
    c.scheme = SchemeKind::QG;
    c.nu = 0.005;
    c.dt = 0.02;
    c.grid = GridSpec{0.0, 0.01, 121};
    c.bc = DirichletInvertedReflection{0.0, 0.0};
    out.push_back({"parabolic", c, sample(c.grid, [](double x) { return example2_exact(x, 1.0, 0.005); })});
  }
  {
    SolverConfig c;
    c.scheme = SchemeKind::CG;
    c.nu = 1.0;
    c.dt = 0.04;
    c.grid = GridSpec{-15.0, 0.6, 101};
    c.bc = FixedFarField{1.0, 0.0};
    out.push_back({"front", c, sample(c.grid, [](double x) { return example3_exact(x, 10.0, 1.0); })});
  }
  {
    SolverConfig c;
    c.scheme = SchemeKind::CG;
    c.nu = 1.0;
    c.dt = 0.04;
    c.grid = GridSpec{-15.0, 0.6, 101};
    c.bc = FixedFarField{1.0, 0.0};
    c.reaction = Reaction::BurgersFisher;
    out.push_back({"fisher", c, sample(c.grid, [](double x) { return example4_exact(x, 10.0); })});
  }
  return out;
}

}  // namespace

TEST(ParallelStep, BitIdenticalToSerial) {
  for (const auto& cs : cases()) {
    const Stepper st(cs.cfg);
    const auto u = init_derivatives(cs.u0, cs.cfg.grid, cs.cfg.scheme, cs.cfg.bc);
    const auto serial = st.step(u);
    for (std::size_t w : {1u, 2u, 4u, 7u}) {
      const auto par = parallel_step(u, st, make_partition(cs.cfg, w));
      EXPECT_EQ(par.orders, serial.orders) << cs.name << " workers=" << w;
    }
  }
}

TEST(ParallelRun, BitIdenticalToSerialRun) {
  for (const auto& cs : cases()) {
    const std::size_t steps = 12;
    const auto serial = run(cs.u0, cs.cfg, steps);
    const Stepper st(cs.cfg);
    const auto u = init_derivatives(cs.u0, cs.cfg.grid, cs.cfg.scheme, cs.cfg.bc);
    for (std::size_t w : {1u, 2u, 4u, 7u}) {
      const auto par = parallel_run(u, st, make_partition(cs.cfg, w), steps);
      EXPECT_EQ(par.orders, serial.u.orders) << cs.name << " workers=" << w;
    }
  }
}

TEST(ParallelRun, ZeroStepsIsIdentity) {
  const auto cs = cases()[0];
  const Stepper st(cs.cfg);
  const auto u = init_derivatives(cs.u0, cs.cfg.grid, cs.cfg.scheme, cs.cfg.bc);
  EXPECT_EQ(parallel_run(u, st, make_partition(cs.cfg, 3), 0).orders, u.orders);
}

TEST(ParallelRun, NonFiniteFieldStopsAllWorkers) {
  auto cs = cases()[2];
  cs.u0[40] = std::numeric_limits<double>::infinity();
  const Stepper st(cs.cfg);
  const auto u = init_derivatives(cs.u0, cs.cfg.grid, cs.cfg.scheme, cs.cfg.bc);
  EXPECT_THROW(parallel_run(u, st, make_partition(cs.cfg, 4), 5), InstabilityError);
}

TEST(Partition, TilesTheGrid) {
  const auto p = make_partition(103, 7, 9);
  ASSERT_EQ(p.owned.size(), 7u);
  std::size_t expect = 0;
  for (const auto& [b, e] : p.owned) {
    EXPECT_EQ(b, expect);
    EXPECT_GE(e - b, 14u);
    EXPECT_LE(e - b, 15u);
    expect = e;
  }
  EXPECT_EQ(expect, 103u);
  EXPECT_THROW(make_partition(10, 0, 1), ConfigError);
  EXPECT_THROW(make_partition(3, 4, 1), ConfigError);
}

TEST(Partition, HaloMustCoverTheWindow) {
  const ScalingCase sc{1, 1, 0.8, 1.0};
  const auto cfg = sc.config(SchemeKind::CG);
  EXPECT_EQ(required_halo(cfg), 9u);
  auto p = make_partition(cfg, 2);
  EXPECT_EQ(p.halo_width, 9u);
  p.halo_width = 8;
  const Stepper st(cfg);
  std::vector<double> u0(cfg.grid.n, 0.5);
  EXPECT_THROW(parallel_step(init_derivatives(u0, cfg.grid, cfg.scheme), st, p), ConfigError);
}

TEST(ScalingCase, Geometry) {
  const std::size_t expect_n[] = {501, 1001, 1501};
  for (std::size_t Ns = 1; Ns <= 3; ++Ns) {
    const ScalingCase sc{Ns, 1, 0.8, 1.0};
    EXPECT_EQ(sc.n_x(), expect_n[Ns - 1]);
    EXPECT_GT(sc.dx(), 0.8);
    EXPECT_LE(sc.dx(), 0.87 + 1e-12);
    EXPECT_EQ(sc.steps(), 1000 * Ns);
    EXPECT_NEAR(sc.config(SchemeKind::CG).grid.x(static_cast<std::ptrdiff_t>(sc.n_x() - 1)), sc.x1(), 1e-9);
  }
  // 5 sigma = 6.32 covers 15 to 16 segments at dx = 0.87
  const DiffusionParams p{1.0, 0.8, 5.0, 3};
  EXPECT_NEAR(p.half_width(), 6.3246, 1e-4);
}

TEST(WeakScaling, SingleSizeHasUnitEfficiency) {
  const auto rows = weak_scaling_run({1}, 3.2, SchemeKind::CG, 1.0, 1);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].Ns, 1u);
  EXPECT_EQ(rows[0].n_workers, 1u);
  EXPECT_EQ(rows[0].n_x, 501u);
  EXPECT_GT(rows[0].wall_seconds, 0.0);
  EXPECT_EQ(rows[0].efficiency, 1.0);
  EXPECT_THROW(weak_scaling_run({}, 0.8), ConfigError);
  EXPECT_THROW(weak_scaling_run({0}, 0.8), ConfigError);
}

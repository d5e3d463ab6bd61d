#pragma once

// Shared-memory domain decomposition. Each worker owns a contiguous span of
// interior nodes and steps it from a halo-extended view of the pre-step
// field. The per-node arithmetic is the serial code path, so results are
// bit-identical to Stepper::step for any worker count.

#include <algorithm>
#include <barrier>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "burgers/analytic.hpp"
#include "burgers/errors.hpp"
#include "burgers/grid.hpp"
#include "burgers/solver.hpp"

namespace burgers {

struct Partition {
  std::size_t n_workers = 1;
  /// Half-open [begin, end) interior index span per worker.
  std::vector<std::pair<std::size_t, std::size_t>> owned;
  std::size_t halo_width = 0;
};

/// Halo width needed by a configuration: ceil(margin * sigma / dx) + 1.
inline std::size_t required_halo(const SolverConfig& cfg) {
  return required_padding(cfg.diffusion_params(), cfg.grid.dx);
}

/// Splits n nodes into n_workers near-equal contiguous spans.
inline Partition make_partition(std::size_t n, std::size_t n_workers, std::size_t halo_width) {
  if (n_workers < 1) throw ConfigError("partition needs at least one worker");
  if (n_workers > n) {
    throw ConfigError("partition: " + std::to_string(n_workers) + " workers for only " + std::to_string(n) + " nodes");
  }
  Partition p;
  p.n_workers = n_workers;
  p.halo_width = halo_width;
  const std::size_t base = n / n_workers;
  const std::size_t extra = n % n_workers;
  std::size_t begin = 0;
  for (std::size_t w = 0; w < n_workers; ++w) {
    const std::size_t len = base + (w < extra ? 1 : 0);
    p.owned.emplace_back(begin, begin + len);
    begin += len;
  }
  return p;
}

inline Partition make_partition(const SolverConfig& cfg, std::size_t n_workers) {
  return make_partition(cfg.grid.n, n_workers, required_halo(cfg));
}

namespace detail {

inline void check_partition(const Partition& part, const Stepper& stepper, std::size_t n) {
  if (part.owned.size() != part.n_workers) throw ConfigError("partition: owned range count differs from n_workers");
  std::size_t expect = 0;
  for (const auto& [b, e] : part.owned) {
    if (b != expect || e <= b) throw ConfigError("partition: owned ranges must tile the interior without gaps");
    expect = e;
  }
  if (expect != n) throw ConfigError("partition: owned ranges do not cover all " + std::to_string(n) + " nodes");
  if (part.halo_width < stepper.padding()) {
    throw ConfigError("halo width " + std::to_string(part.halo_width) + " is below the " +
                      std::to_string(stepper.padding()) + " nodes the diffusion window needs");
  }
}

/// Copy of nodes [begin, begin + len) of g as a standalone grid function.
inline GridFunction slice(const GridFunction& g, std::size_t begin, std::size_t len) {
  GridFunction v(GridSpec{g.spec.x(static_cast<std::ptrdiff_t>(begin)), g.spec.dx, len}, g.scheme);
  for (std::size_t k = 0; k < g.order_count(); ++k) {
    std::copy_n(g.orders[k].begin() + static_cast<std::ptrdiff_t>(begin), len, v.orders[k].begin());
  }
  return v;
}

/// Worker w's share of one step: reads the ghost-extended field `ext`
/// (halo = part.halo_width), writes its owned span of `out`.
inline void worker_step(const GridFunction& ext, const Stepper& stepper, const Partition& part, std::size_t w,
                        GridFunction& out, StepStats* stats) {
  const auto [b, e] = part.owned[w];
  const std::size_t h = part.halo_width;
  const GridFunction view = slice(ext, b, (e - b) + 2 * h);
  stepper.advance_view(view, h, e - b, out, b, stats);
}

}  // namespace detail

/// One Burgers step computed by part.n_workers threads.
inline GridFunction parallel_step(const GridFunction& u, const Stepper& stepper, const Partition& part) {
  stepper.check_input(u);
  detail::check_partition(part, stepper, u.size());
  const GridFunction ext = extend_with_ghosts(u, stepper.config().bc, part.halo_width);
  GridFunction out(u.spec, u.scheme);
  if (part.n_workers == 1) {
    detail::worker_step(ext, stepper, part, 0, out, nullptr);
    return out;
  }
  std::vector<std::exception_ptr> errors(part.n_workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(part.n_workers);
    for (std::size_t w = 0; w < part.n_workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          detail::worker_step(ext, stepper, part, w, out, nullptr);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

inline GridFunction parallel_step(const GridFunction& u, const SolverConfig& cfg, const Partition& part) {
  return parallel_step(u, Stepper(cfg), part);
}

/// n_steps of split stepping with persistent workers synchronised by a
/// barrier. The barrier completion step swaps buffers, applies the reaction
/// stage, screens for non-finite values and refreshes the ghost-extended
/// field that every worker reads next.
inline GridFunction parallel_run(const GridFunction& u0, const Stepper& stepper, const Partition& part,
                                 std::size_t n_steps) {
  stepper.check_input(u0);
  detail::check_partition(part, stepper, u0.size());
  const auto& cfg = stepper.config();

  GridFunction cur = u0;
  GridFunction next(u0.spec, u0.scheme);
  GridFunction ext = extend_with_ghosts(cur, cfg.bc, part.halo_width);
  std::size_t step = 0;
  bool stop = n_steps == 0;
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto record = [&](std::exception_ptr e) {
    std::lock_guard lock(failure_mu);
    if (!failure) failure = e;
  };

  auto on_phase = [&]() noexcept {
    if (failure) {
      stop = true;
      return;
    }
    ++step;
    try {
      std::swap(cur, next);
      if (cfg.reaction == Reaction::BurgersFisher) cur = reaction_step(cur, cfg.dt, cfg.bc);
      std::size_t bad = 0;
      if (!all_finite(cur, &bad)) {
        throw InstabilityError("non-finite value at node " + std::to_string(bad) + " after step " +
                                   std::to_string(step),
                               step, bad);
      }
      if (step < n_steps) ext = extend_with_ghosts(cur, cfg.bc, part.halo_width);
    } catch (...) {
      failure = std::current_exception();
    }
    stop = failure != nullptr || step >= n_steps;
  };
  std::barrier sync(static_cast<std::ptrdiff_t>(part.n_workers), on_phase);

  auto body = [&](std::size_t w) {
    while (!stop) {
      try {
        detail::worker_step(ext, stepper, part, w, next, nullptr);
      } catch (...) {
        record(std::current_exception());
      }
      sync.arrive_and_wait();
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < part.n_workers; ++w) pool.emplace_back(body, w);
    body(0);
  }
  if (failure) std::rethrow_exception(failure);
  return cur;
}

/// One weak-scaling configuration: n_x = 500 Ns + 1 nodes on
/// [-15, 400 Ns + 20], erfc front from t = 10 to t = 800 Ns + 10.
struct ScalingCase {
  std::size_t Ns = 1;
  std::size_t n_workers = 1;
  double dt = 0.8;
  double nu = 1.0;

  std::size_t n_x() const { return 500 * Ns + 1; }
  double x0() const { return -15.0; }
  double x1() const { return 400.0 * static_cast<double>(Ns) + 20.0; }
  double dx() const { return (x1() - x0()) / static_cast<double>(n_x() - 1); }
  double t0() const { return 10.0; }
  double t_end() const { return 800.0 * static_cast<double>(Ns) + 10.0; }
  std::size_t steps() const { return static_cast<std::size_t>(std::llround((t_end() - t0()) / dt)); }

  SolverConfig config(SchemeKind scheme) const {
    SolverConfig c;
    c.scheme = scheme;
    c.nu = nu;
    c.dt = dt;
    c.grid = GridSpec{x0(), dx(), n_x()};
    c.bc = FixedFarField{1.0, 0.0};
    return c;
  }
};

struct ScalingRow {
  std::size_t Ns = 1;
  std::size_t n_workers = 1;
  std::size_t n_x = 0;
  double dt = 0.0;
  double wall_seconds = 0.0;
  double efficiency = 1.0;
};

inline std::size_t host_parallelism() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Wall time of one scaling case.
inline double time_scaling_case(const ScalingCase& sc, SchemeKind scheme) {
  const SolverConfig cfg = sc.config(scheme);
  const Stepper stepper(cfg);
  std::vector<double> u0(cfg.grid.n);
  for (std::size_t i = 0; i < u0.size(); ++i) {
    u0[i] = example3_exact(cfg.grid.x(static_cast<std::ptrdiff_t>(i)), sc.t0(), sc.nu);
  }
  const GridFunction g = init_derivatives(u0, cfg.grid, scheme, cfg.bc);
  const Partition part = make_partition(cfg, sc.n_workers);
  const auto t0 = std::chrono::steady_clock::now();
  parallel_run(g, stepper, part, sc.steps());
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Times each Ns with n_workers = min(Ns^2, host threads); efficiency is
/// R(1)/R(Ns).
inline std::vector<ScalingRow> weak_scaling_run(const std::vector<std::size_t>& Ns_list, double dt,
                                                SchemeKind scheme = SchemeKind::CG, double nu = 1.0,
                                                std::size_t max_workers = 0) {
  if (Ns_list.empty()) throw ConfigError("weak scaling needs at least one Ns value");
  const std::size_t cap = max_workers == 0 ? host_parallelism() : max_workers;
  std::vector<ScalingRow> rows;
  double r1 = -1.0;
  for (std::size_t Ns : Ns_list) {
    if (Ns < 1) throw ConfigError("Ns must be >= 1");
    ScalingCase sc{Ns, std::min(Ns * Ns, cap), dt, nu};
    ScalingRow row{Ns, sc.n_workers, sc.n_x(), dt, time_scaling_case(sc, scheme), 1.0};
    if (Ns == 1) r1 = row.wall_seconds;
    rows.push_back(row);
  }
  if (r1 < 0.0) r1 = time_scaling_case(ScalingCase{1, 1, dt, nu}, scheme);
  for (auto& row : rows) row.efficiency = r1 / row.wall_seconds;
  return rows;
}

}  // namespace burgers

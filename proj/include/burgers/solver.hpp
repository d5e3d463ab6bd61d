#pragma once

// One Burgers time step = ghost extension -> forward Hopf-Cole transform ->
// exact-kernel diffusion of phi -> backward transform, plus the pointwise
// Burgers-Fisher reaction stage and the driver loop.

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <iostream>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "burgers/diffusion.hpp"
#include "burgers/errors.hpp"
#include "burgers/grid.hpp"
#include "burgers/hopfcole.hpp"
#include "burgers/splines.hpp"

namespace burgers {

enum class Reaction { None, BurgersFisher };

struct SolverConfig {
  SchemeKind scheme = SchemeKind::CG;
  double nu = 1.0;
  double dt = 0.01;
  GridSpec grid{};
  BoundaryCondition bc = Periodic{};
  TaylorConfig taylor{};
  double margin_mult = 5.0;
  Reaction reaction = Reaction::None;

  DiffusionParams diffusion_params() const {
    return {nu, dt, margin_mult, static_cast<int>(phi_order_count(scheme))};
  }
  double diffusion_number() const { return nu * dt / (grid.dx * grid.dx); }
  bool stability_warning() const { return diffusion_number() < kStabilityThreshold; }

  void validate() const {
    grid.validate();
    diffusion_params().validate();
    taylor.validate();
  }
};

/// Counters gathered while stepping.
struct StepStats {
  std::size_t capped_segments = 0;
};

/// Precomputed state for repeated steps with one configuration. Immutable
/// after construction; safe to share between threads.
class Stepper {
 public:
  explicit Stepper(const SolverConfig& cfg)
      : cfg_(cfg),
        kernel_(std::make_shared<DiffusionKernel>(cfg.grid.dx, (cfg.validate(), cfg.diffusion_params()),
                                                  exponent_degree(cfg.scheme) * (cfg.taylor.max_terms - 1))) {}

  const SolverConfig& config() const { return cfg_; }
  const DiffusionKernel& kernel() const { return *kernel_; }
  /// Ghost / halo nodes needed on each side of an output node.
  std::size_t padding() const { return kernel_->padding(); }

  /// Computes the stepped solution for nodes [first, first + count) of a padded
  /// view and writes them to out at [out_offset, out_offset + count).
  void advance_view(const GridFunction& view, std::size_t first, std::size_t count, GridFunction& out,
                    std::size_t out_offset, StepStats* stats = nullptr) const {
    if (view.scheme != cfg_.scheme) throw ContractViolation("advance_view: scheme mismatch");
    for (std::size_t i : {first, first + count - 1}) kernel_->check_coverage(view.spec, i);

    const PhiField phi = forward_transform(view, cfg_.nu, cfg_.taylor);
    if (stats) stats->capped_segments += phi.capped_segments;
    const auto scaled = scaled_coefficients(phi.phi_poly);
    const int qdeg = exponent_degree(cfg_.scheme);
    std::vector<int> degrees(phi.terms.size());
    for (std::size_t j = 0; j < degrees.size(); ++j) degrees[j] = (phi.terms[j] - 1) * qdeg;

    std::array<double, 3> uo{};
    for (std::size_t c = 0; c < count; ++c) {
      const std::size_t i = first + c;
      const auto phid = shifted_window_accumulate(scaled, phi.phi_poly.stride(), degrees, phi.exponent.increments,
                                                  *kernel_, view.spec, i);
      backward_node(phid, cfg_.nu, cfg_.scheme, uo, out_offset + c);
      for (std::size_t k = 0; k < out.order_count(); ++k) out.orders[k][out_offset + c] = uo[k];
    }
  }

  /// One serial Burgers step on the interior grid. The input is not modified.
  GridFunction step(const GridFunction& u, StepStats* stats = nullptr) const {
    check_input(u);
    const std::size_t g = padding();
    const GridFunction ext = extend_with_ghosts(u, cfg_.bc, g);
    GridFunction out(u.spec, u.scheme);
    advance_view(ext, g, u.size(), out, 0, stats);
    return out;
  }

  void check_input(const GridFunction& u) const {
    u.validate();
    if (u.scheme != cfg_.scheme) throw ContractViolation("step: grid function scheme differs from configuration");
    if (!(u.spec == cfg_.grid)) throw ContractViolation("step: grid function grid differs from configuration");
  }

 private:
  SolverConfig cfg_;
  std::shared_ptr<const DiffusionKernel> kernel_;
};

inline GridFunction step(const GridFunction& u, const SolverConfig& cfg) { return Stepper(cfg).step(u); }

/// Exact solution of u_t = -3u(1-u)(1-2u) over dt at one point:
///   A = (1 - 1/(2u-1)^2)/4,  u' = (1 + s/sqrt(1 - 4A exp(-3 dt)))/2,
/// with s = sign(2u - 1) (continuity at dt = 0); u = 1/2 stays 1/2.
inline double reaction_value(double u, double dt, std::size_t node = 0) {
  const double w = 2.0 * u - 1.0;
  if (w == 0.0) return 0.5;
  const double A = 0.25 * (1.0 - 1.0 / (w * w));
  const double radicand = 1.0 - 4.0 * A * std::exp(-3.0 * dt);
  if (!(radicand > 0.0)) {
    throw DomainError("reaction step: non-positive radicand " + std::to_string(radicand) + " at node " +
                      std::to_string(node) + " (u = " + std::to_string(u) + ")");
  }
  const double s = w > 0.0 ? 1.0 : -1.0;
  return 0.5 * (1.0 + s / std::sqrt(radicand));
}

/// Pointwise reaction stage; stored derivatives are re-initialised by finite
/// differences afterwards.
inline GridFunction reaction_step(const GridFunction& u, double dt, const BoundaryCondition& bc) {
  std::vector<double> v(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) v[i] = reaction_value(u.values()[i], dt, i);
  return init_derivatives(v, u.spec, u.scheme, bc);
}

/// Lie splitting: Burgers stage, then the reaction stage (if configured).
inline GridFunction split_step(const GridFunction& u, const Stepper& stepper, StepStats* stats = nullptr) {
  GridFunction next = stepper.step(u, stats);
  if (stepper.config().reaction == Reaction::BurgersFisher) next = reaction_step(next, stepper.config().dt, stepper.config().bc);
  return next;
}

inline GridFunction split_step(const GridFunction& u, const SolverConfig& cfg) {
  return split_step(u, Stepper(cfg));
}

/// Callback invoked at step 0 and then every `every` steps.
struct Observer {
  std::size_t every = 1;
  std::function<void(std::size_t step, double t, const GridFunction& u)> fn;
};

struct RunOptions {
  double t0 = 0.0;
  std::vector<Observer> observers;
  /// Print a warning to stderr when d is below the stability threshold.
  bool warn = false;
};

struct RunResult {
  GridFunction u;
  std::size_t steps = 0;
  double t = 0.0;
  StepStats stats;
};

inline bool all_finite(const GridFunction& u, std::size_t* bad = nullptr) {
  for (const auto& o : u.orders) {
    for (std::size_t i = 0; i < o.size(); ++i) {
      if (!std::isfinite(o[i])) {
        if (bad) *bad = i;
        return false;
      }
    }
  }
  return true;
}

/// Advances an initial condition n_steps times. Derivatives are initialised
/// by finite differences; a non-finite value raises InstabilityError naming
/// the step.
inline RunResult run(std::span<const double> u0, const SolverConfig& cfg, std::size_t n_steps,
                     const RunOptions& opts = {}) {
  const Stepper stepper(cfg);
  if (opts.warn && cfg.stability_warning()) {
    std::cerr << "warning: diffusion number d = " << cfg.diffusion_number() << " is below "
              << kStabilityThreshold << "; the scheme is likely unstable\n";
  }
  RunResult res;
  res.u = init_derivatives(u0, cfg.grid, cfg.scheme, cfg.bc);
  res.t = opts.t0;
  auto notify = [&](std::size_t k) {
    for (const auto& ob : opts.observers) {
      if (ob.fn && (ob.every == 0 ? k == 0 : k % ob.every == 0)) ob.fn(k, res.t, res.u);
    }
  };
  notify(0);
  for (std::size_t k = 1; k <= n_steps; ++k) {
    try {
      res.u = split_step(res.u, stepper, &res.stats);
    } catch (const OverflowError& e) {
      throw OverflowError(std::string(e.what()) + " [step " + std::to_string(k) + "]", k, e.node());
    } catch (const InstabilityError& e) {
      throw InstabilityError(std::string(e.what()) + " [step " + std::to_string(k) + "]", k, e.node());
    } catch (const DomainError& e) {
      throw InstabilityError(std::string(e.what()) + " [step " + std::to_string(k) + "]", k);
    } catch (const NumericalError& e) {
      throw NumericalError(std::string(e.what()) + " [step " + std::to_string(k) + "]", k, e.node());
    }
    std::size_t bad = 0;
    if (!all_finite(res.u, &bad)) {
      throw InstabilityError("non-finite value at node " + std::to_string(bad) + " after step " + std::to_string(k),
                             k, bad);
    }
    res.steps = k;
    res.t = opts.t0 + static_cast<double>(k) * cfg.dt;
    notify(k);
  }
  return res;
}

}  // namespace burgers

#pragma once

// run / sweep / scale front ends and their CSV output.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "burgers/cli/config.hpp"
#include "burgers/errors.hpp"
#include "burgers/metrics.hpp"
#include "burgers/parallel.hpp"
#include "burgers/solver.hpp"

namespace burgers::cli {

inline constexpr const char* kSnapshotHeader = "x,u_numeric,u_exact,abs_error";
inline constexpr const char* kNormsHeader = "t,l1,l2,linf,d,scheme,dx,dt,nu";
inline constexpr const char* kSweepHeader = "scheme,dx,dt,nu,d,status,diverged_step,l1,l2,linf";
inline constexpr const char* kScalingHeader = "Ns,n_workers,n_x,dt,wall_seconds,efficiency";

/// A sweep cell whose relative l2 error exceeds this is counted as diverged.
inline constexpr double kDivergedL2 = 1.0;

namespace detail {

inline std::filesystem::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir + "'" + (ec ? ": " + ec.message() : ""));
  }
  return dir;
}

inline std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream f(p);
  if (!f) throw IoError("cannot open '" + p.string() + "' for writing");
  return f;
}

inline void close_out(std::ofstream& f, const std::filesystem::path& p) {
  f.close();
  if (!f) throw IoError("error writing '" + p.string() + "'");
}

inline std::string time_tag(double t) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", t);
  return buf;
}

}  // namespace detail

/// Node values against the reference; unknown reference written as nan.
inline void write_snapshot(const std::filesystem::path& path, const GridSpec& grid, const std::vector<double>& u,
                           const std::vector<double>& exact) {
  auto f = detail::open_out(path);
  f << kSnapshotHeader << '\n';
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double e = exact.empty() ? std::numeric_limits<double>::quiet_NaN() : exact[i];
    f << format_double(grid.x(static_cast<std::ptrdiff_t>(i))) << ',' << format_double(u[i]) << ','
      << format_double(e) << ',' << format_double(std::fabs(u[i] - e)) << '\n';
  }
  detail::close_out(f, path);
}

struct NormRow {
  double t = 0.0;
  ErrorReport report;
};

struct RunOutputs {
  std::vector<std::filesystem::path> files;
  std::vector<NormRow> norms;
  GridFunction final_state;
};

/// Runs one configuration, writing snapshot CSVs and norms.csv into
/// cfg.output.
inline RunOutputs cmd_run(const ExperimentConfig& cfg, std::ostream& log = std::cerr) {
  const RunPlan plan = resolve(cfg);
  const auto dir = detail::prepare_dir(cfg.output);
  const auto& s = plan.solver;
  if (s.stability_warning()) {
    log << "warning: diffusion number d = " << s.diffusion_number() << " is below " << kStabilityThreshold
        << "; expect instability\n";
  }
  RunOutputs out;
  auto exact_at = [&](double t) {
    std::vector<double> e;
    if (!plan.exact) return e;
    e.resize(s.grid.n);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = plan.exact(s.grid.x(static_cast<std::ptrdiff_t>(i)), t);
    return e;
  };
  auto contains = [](const std::vector<std::size_t>& v, std::size_t k) {
    return std::find(v.begin(), v.end(), k) != v.end();
  };

  Observer ob;
  ob.every = 1;
  ob.fn = [&](std::size_t k, double, const GridFunction& u) {
    const double t = plan.time_at(k);
    const bool snap = contains(plan.snapshot_steps, k);
    const bool norm = contains(plan.norm_steps, k) && plan.exact;
    if (!snap && !norm) return;
    const auto e = exact_at(t);
    if (snap) {
      const auto path = dir / ("snapshot_t" + detail::time_tag(t) + ".csv");
      write_snapshot(path, s.grid, u.values(), e);
      out.files.push_back(path);
    }
    if (norm) {
      const std::span<const double> uu(u.values().data(), plan.norm_nodes);
      const std::span<const double> ee(e.data(), plan.norm_nodes);
      out.norms.push_back({t, error_norms(uu, ee, t)});
    }
  };
  RunOptions opts;
  opts.t0 = plan.t_start;
  opts.observers.push_back(ob);
  RunResult res = run(plan.u0, s, plan.steps, opts);
  if (res.stats.capped_segments > 0) {
    log << "note: " << res.stats.capped_segments << " segment(s) hit the Taylor term cap\n";
  }
  out.final_state = std::move(res.u);

  if (plan.exact) {
    const auto path = dir / "norms.csv";
    auto f = detail::open_out(path);
    f << kNormsHeader << '\n';
    for (const auto& r : out.norms) {
      f << format_double(r.t) << ',' << format_double(r.report.l1) << ',' << format_double(r.report.l2) << ','
        << format_double(r.report.linf) << ',' << format_double(s.diffusion_number()) << ','
        << to_string(s.scheme) << ',' << format_double(s.grid.dx) << ',' << format_double(s.dt) << ','
        << format_double(s.nu) << '\n';
    }
    detail::close_out(f, path);
    out.files.push_back(path);
  }
  return out;
}

struct SweepRow {
  SchemeKind scheme = SchemeKind::CG;
  double dx = 0.0, dt = 0.0, nu = 0.0, d = 0.0;
  bool stable = true;
  std::size_t diverged_step = 0;
  ErrorReport report;
};

/// Cartesian product over the non-empty sweep axes; norms at the final
/// step. Unstable cells record the step at which the run failed.
inline std::vector<SweepRow> cmd_sweep(const ExperimentConfig& cfg, std::ostream& log = std::cerr) {
  if (cfg.sweep_dx.empty() && cfg.sweep_dt.empty() && cfg.sweep_nu.empty()) {
    throw ConfigError("sweep needs at least one non-empty axis (sweep_dx, sweep_dt, sweep_nu)");
  }
  const auto dir = detail::prepare_dir(cfg.output);
  const auto axis = [](const std::vector<double>& v, double base) { return v.empty() ? std::vector<double>{base} : v; };
  std::vector<SweepRow> rows;
  for (double dx : axis(cfg.sweep_dx, cfg.dx)) {
    for (double dt : axis(cfg.sweep_dt, cfg.dt)) {
      for (double nu : axis(cfg.sweep_nu, cfg.nu)) {
        ExperimentConfig c = cfg;
        c.dx = dx;
        c.dt = dt;
        c.nu = nu;
        c.snapshot_times.clear();
        c.norm_times.clear();
        const RunPlan plan = resolve(c);
        SweepRow row;
        row.scheme = c.scheme;
        row.dx = dx;
        row.dt = dt;
        row.nu = nu;
        row.d = plan.solver.diffusion_number();
        auto norms_at = [&](std::size_t k, const GridFunction& u) {
          const double t = plan.time_at(k);
          std::vector<double> e(plan.norm_nodes);
          for (std::size_t i = 0; i < e.size(); ++i) e[i] = plan.exact(plan.solver.grid.x(static_cast<std::ptrdiff_t>(i)), t);
          return error_norms(std::span(u.values()).first(plan.norm_nodes), e, t);
        };
        RunOptions opts;
        if (plan.exact) {
          opts.observers.push_back({1, [&](std::size_t k, double, const GridFunction& u) {
                                      if (k == 0) return;
                                      const ErrorReport e = norms_at(k, u);
                                      if (!(e.l2 <= kDivergedL2)) {
                                        throw InstabilityError("l2 error " + format_double(e.l2) + " after step " +
                                                                   std::to_string(k),
                                                               k);
                                      }
                                      if (k == plan.steps) row.report = e;
                                    }});
        }
        try {
          run(plan.u0, plan.solver, plan.steps, opts);
        } catch (const NumericalError& e) {
          row.stable = false;
          row.diverged_step = e.step();
          log << "dx=" << dx << " dt=" << dt << " nu=" << nu << ": " << e.what() << '\n';
        }
        rows.push_back(row);
      }
    }
  }
  const auto path = dir / "sweep.csv";
  auto f = detail::open_out(path);
  f << kSweepHeader << '\n';
  for (const auto& r : rows) {
    f << to_string(r.scheme) << ',' << format_double(r.dx) << ',' << format_double(r.dt) << ','
      << format_double(r.nu) << ',' << format_double(r.d) << ',' << (r.stable ? "ok" : "unstable") << ',';
    if (r.stable) {
      f << ',' << format_double(r.report.l1) << ',' << format_double(r.report.l2) << ','
        << format_double(r.report.linf) << '\n';
    } else {
      f << r.diverged_step << ",,,\n";
    }
  }
  detail::close_out(f, path);
  return rows;
}

/// Weak-scaling timings for every (dt, Ns) pair, written to scaling.csv.
inline std::vector<ScalingRow> cmd_scale(const ExperimentConfig& cfg, std::ostream& log = std::cout) {
  const std::vector<std::size_t> ns = cfg.scale_ns.empty() ? std::vector<std::size_t>{1} : cfg.scale_ns;
  const std::vector<double> dts = cfg.scale_dt.empty() ? std::vector<double>{0.8} : cfg.scale_dt;
  const auto dir = detail::prepare_dir(cfg.output);
  log << "host parallelism: " << host_parallelism() << " thread(s)\n";
  std::vector<ScalingRow> all;
  for (double dt : dts) {
    const auto rows = weak_scaling_run(ns, dt, cfg.scheme, 1.0, cfg.workers);
    for (const auto& r : rows) {
      log << "dt=" << r.dt << " Ns=" << r.Ns << " workers=" << r.n_workers << " n_x=" << r.n_x
          << " wall=" << r.wall_seconds << "s efficiency=" << r.efficiency << '\n';
    }
    all.insert(all.end(), rows.begin(), rows.end());
  }
  const auto path = dir / "scaling.csv";
  auto f = detail::open_out(path);
  f << kScalingHeader << '\n';
  for (const auto& r : all) {
    f << r.Ns << ',' << r.n_workers << ',' << r.n_x << ',' << format_double(r.dt) << ','
      << format_double(r.wall_seconds) << ',' << format_double(r.efficiency) << '\n';
  }
  detail::close_out(f, path);
  return all;
}

}  // namespace burgers::cli

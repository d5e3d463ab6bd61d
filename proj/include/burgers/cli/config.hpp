#pragma once

// Experiment configuration: key=value text (with # comments), per-example
// defaults and resolution into a concrete solver setup.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "burgers/analytic.hpp"
#include "burgers/cli/expression.hpp"
#include "burgers/errors.hpp"
#include "burgers/grid.hpp"
#include "burgers/solver.hpp"

namespace burgers::cli {

struct ExperimentConfig {
  int example = 1;  // 1..4, or 0 for a custom `initial` expression
  std::string initial;
  SchemeKind scheme = SchemeKind::CG;
  double nu = 0.1;
  double dx = 0.02;
  double dt = 0.01;
  std::optional<double> t_start;
  std::optional<double> t_end;
  std::optional<std::size_t> steps;
  std::optional<double> x0;
  std::optional<double> x1;
  std::optional<std::size_t> nx;
  std::optional<std::string> bc;  // periodic | dirichlet | farfield
  std::optional<double> bc_left;
  std::optional<double> bc_right;
  std::optional<std::string> reaction;  // none | fisher
  TaylorConfig taylor{};
  double margin = 5.0;
  std::string output = "out";
  std::vector<double> snapshot_times;
  std::vector<double> norm_times;
  std::vector<double> sweep_dx;
  std::vector<double> sweep_dt;
  std::vector<double> sweep_nu;
  std::vector<std::size_t> scale_ns;
  std::vector<double> scale_dt;
  std::size_t workers = 0;  // 0 = host parallelism

  friend bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
    return a.example == b.example && a.initial == b.initial && a.scheme == b.scheme && a.nu == b.nu &&
           a.dx == b.dx && a.dt == b.dt && a.t_start == b.t_start && a.t_end == b.t_end && a.steps == b.steps &&
           a.x0 == b.x0 && a.x1 == b.x1 && a.nx == b.nx && a.bc == b.bc && a.bc_left == b.bc_left &&
           a.bc_right == b.bc_right && a.reaction == b.reaction && a.taylor.max_terms == b.taylor.max_terms &&
           a.taylor.rel_tol == b.taylor.rel_tol && a.taylor.sample_points == b.taylor.sample_points &&
           a.margin == b.margin && a.output == b.output && a.snapshot_times == b.snapshot_times &&
           a.norm_times == b.norm_times && a.sweep_dx == b.sweep_dx && a.sweep_dt == b.sweep_dt &&
           a.sweep_nu == b.sweep_nu && a.scale_ns == b.scale_ns && a.scale_dt == b.scale_dt &&
           a.workers == b.workers;
  }
};

using KeyValues = std::map<std::string, std::string>;

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

/// Parses key=value lines; '#' starts a comment. Later keys win.
inline KeyValues parse_key_values(std::string_view text, const std::string& origin = "config") {
  KeyValues kv;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> problems;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      problems.push_back(origin + ":" + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    if (key.empty()) {
      problems.push_back(origin + ":" + std::to_string(lineno) + ": empty key");
      continue;
    }
    kv[key] = trim(std::string_view(t).substr(eq + 1));
  }
  if (!problems.empty()) {
    std::string msg;
    for (const auto& p : problems) msg += (msg.empty() ? "" : "\n") + p;
    throw ConfigError(msg);
  }
  return kv;
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline double to_double(const std::string& s) {
  if (s.empty()) throw ConfigError("empty number");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) throw ConfigError("'" + s + "' is not a finite number");
  return v;
}

inline std::size_t to_size(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw ConfigError("'" + s + "' is not a non-negative integer");
  }
  return static_cast<std::size_t>(std::stoull(s));
}

inline int to_int(const std::string& s) {
  const bool neg = !s.empty() && s[0] == '-';
  const auto v = static_cast<int>(to_size(neg ? s.substr(1) : s));
  return neg ? -v : v;
}

template <class F>
auto to_list(const std::string& s, F conv) {
  std::vector<decltype(conv(std::string{}))> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    const std::string t = trim(item);
    if (!t.empty()) out.push_back(conv(t));
  }
  return out;
}

template <class T, class F>
std::string join(const std::vector<T>& v, F fmt) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s;
}

inline std::string size_str(std::size_t v) { return std::to_string(v); }

}  // namespace detail

/// Every key understood by the configuration, in serialization order.
inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "example", "initial", "scheme", "nu", "dx", "dt", "t_start", "t_end", "steps", "x0",
      "x1", "nx", "bc", "bc_left", "bc_right", "reaction", "taylor_max_terms", "taylor_rel_tol",
      "taylor_samples", "margin", "output", "snapshot_times", "norm_times", "sweep_dx", "sweep_dt",
      "sweep_nu", "scale_ns", "scale_dt", "workers"};
  return keys;
}

/// Applies key/value pairs on top of `cfg`. All unknown keys and malformed
/// values are reported together.
inline void apply(ExperimentConfig& cfg, const KeyValues& kv) {
  using namespace detail;
  std::vector<std::string> problems;
  for (const auto& [key, value] : kv) {
    try {
      if (key == "example") cfg.example = to_int(value);
      else if (key == "initial") cfg.initial = value;
      else if (key == "scheme") cfg.scheme = parse_scheme(value);
      else if (key == "nu") cfg.nu = to_double(value);
      else if (key == "dx") cfg.dx = to_double(value);
      else if (key == "dt") cfg.dt = to_double(value);
      else if (key == "t_start") cfg.t_start = to_double(value);
      else if (key == "t_end") cfg.t_end = to_double(value);
      else if (key == "steps") cfg.steps = to_size(value);
      else if (key == "x0") cfg.x0 = to_double(value);
      else if (key == "x1") cfg.x1 = to_double(value);
      else if (key == "nx") cfg.nx = to_size(value);
      else if (key == "bc") {
        if (value != "periodic" && value != "dirichlet" && value != "farfield") {
          throw ConfigError("'" + value + "' is not one of periodic, dirichlet, farfield");
        }
        cfg.bc = value;
      } else if (key == "bc_left") cfg.bc_left = to_double(value);
      else if (key == "bc_right") cfg.bc_right = to_double(value);
      else if (key == "reaction") {
        if (value != "none" && value != "fisher") throw ConfigError("'" + value + "' is not one of none, fisher");
        cfg.reaction = value;
      } else if (key == "taylor_max_terms") cfg.taylor.max_terms = to_int(value);
      else if (key == "taylor_rel_tol") cfg.taylor.rel_tol = to_double(value);
      else if (key == "taylor_samples") cfg.taylor.sample_points = to_int(value);
      else if (key == "margin") cfg.margin = to_double(value);
      else if (key == "output") cfg.output = value;
      else if (key == "snapshot_times") cfg.snapshot_times = to_list(value, to_double);
      else if (key == "norm_times") cfg.norm_times = to_list(value, to_double);
      else if (key == "sweep_dx") cfg.sweep_dx = to_list(value, to_double);
      else if (key == "sweep_dt") cfg.sweep_dt = to_list(value, to_double);
      else if (key == "sweep_nu") cfg.sweep_nu = to_list(value, to_double);
      else if (key == "scale_ns") cfg.scale_ns = to_list(value, to_size);
      else if (key == "scale_dt") cfg.scale_dt = to_list(value, to_double);
      else if (key == "workers") cfg.workers = to_size(value);
      else throw ConfigError("unknown key");
    } catch (const ConfigError& e) {
      problems.push_back(key + ": " + e.what());
    } catch (const std::exception& e) {
      problems.push_back(key + ": " + e.what());
    }
  }
  if (!problems.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ConfigError(msg);
  }
}

inline ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  cli::apply(cfg, parse_key_values(text));
  return cfg;
}

/// Key/value form of every set field; parse_config(serialize(c)) == c.
inline KeyValues to_key_values(const ExperimentConfig& c) {
  using namespace detail;
  KeyValues kv;
  kv["example"] = std::to_string(c.example);
  if (!c.initial.empty()) kv["initial"] = c.initial;
  kv["scheme"] = std::string(to_string(c.scheme));
  kv["nu"] = format_double(c.nu);
  kv["dx"] = format_double(c.dx);
  kv["dt"] = format_double(c.dt);
  if (c.t_start) kv["t_start"] = format_double(*c.t_start);
  if (c.t_end) kv["t_end"] = format_double(*c.t_end);
  if (c.steps) kv["steps"] = std::to_string(*c.steps);
  if (c.x0) kv["x0"] = format_double(*c.x0);
  if (c.x1) kv["x1"] = format_double(*c.x1);
  if (c.nx) kv["nx"] = std::to_string(*c.nx);
  if (c.bc) kv["bc"] = *c.bc;
  if (c.bc_left) kv["bc_left"] = format_double(*c.bc_left);
  if (c.bc_right) kv["bc_right"] = format_double(*c.bc_right);
  if (c.reaction) kv["reaction"] = *c.reaction;
  kv["taylor_max_terms"] = std::to_string(c.taylor.max_terms);
  kv["taylor_rel_tol"] = format_double(c.taylor.rel_tol);
  kv["taylor_samples"] = std::to_string(c.taylor.sample_points);
  kv["margin"] = format_double(c.margin);
  kv["output"] = c.output;
  if (!c.snapshot_times.empty()) kv["snapshot_times"] = join(c.snapshot_times, format_double);
  if (!c.norm_times.empty()) kv["norm_times"] = join(c.norm_times, format_double);
  if (!c.sweep_dx.empty()) kv["sweep_dx"] = join(c.sweep_dx, format_double);
  if (!c.sweep_dt.empty()) kv["sweep_dt"] = join(c.sweep_dt, format_double);
  if (!c.sweep_nu.empty()) kv["sweep_nu"] = join(c.sweep_nu, format_double);
  if (!c.scale_ns.empty()) kv["scale_ns"] = join(c.scale_ns, size_str);
  if (!c.scale_dt.empty()) kv["scale_dt"] = join(c.scale_dt, format_double);
  kv["workers"] = std::to_string(c.workers);
  return kv;
}

inline std::string serialize(const ExperimentConfig& c) {
  const auto kv = to_key_values(c);
  std::string out;
  for (const auto& key : config_keys()) {
    if (auto it = kv.find(key); it != kv.end()) out += key + " = " + it->second + "\n";
  }
  return out;
}

/// A configuration turned into something runnable.
struct RunPlan {
  SolverConfig solver;
  double t_start = 0.0;
  std::size_t steps = 0;
  std::vector<double> u0;
  /// Reference solution u(x, t); empty for custom profiles.
  std::function<double(double, double)> exact;
  /// Norms use nodes [0, norm_nodes).
  std::size_t norm_nodes = 0;
  /// Step indices at which snapshots / norms are taken.
  std::vector<std::size_t> snapshot_steps;
  std::vector<std::size_t> norm_steps;

  double time_at(std::size_t k) const { return t_start + static_cast<double>(k) * solver.dt; }
};

namespace detail {

inline std::size_t steps_for(double span, double dt, const char* what) {
  const double r = span / dt;
  const double n = std::round(r);
  if (n < 0.0 || std::fabs(r - n) > 1e-6 * std::max(1.0, r)) {
    throw ConfigError(std::string(what) + " (" + format_double(span) + ") is not a whole number of time steps of " +
                      format_double(dt));
  }
  return static_cast<std::size_t>(n);
}

}  // namespace detail

/// Applies per-example defaults and builds the grid, initial condition and
/// reference solution.
inline RunPlan resolve(const ExperimentConfig& c) {
  if (c.example < 0 || c.example > 4) throw ConfigError("example must be 0 (custom) or 1..4");
  if (c.example == 0 && c.initial.empty()) throw ConfigError("custom runs (example = 0) need an initial expression");
  if (c.example != 0 && !c.initial.empty()) throw ConfigError("initial is only valid with example = 0");
  if (!(c.dx > 0.0)) throw ConfigError("dx must be positive");
  if (!(c.dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(c.nu > 0.0)) throw ConfigError("nu must be positive");

  struct Defaults {
    double x0, x1, t_start;
    std::optional<double> t_end;
    const char* bc;
    double left, right;
    const char* reaction;
  };
  const Defaults table[] = {
      {0.0, 1.0, 0.0, std::nullopt, "periodic", 0.0, 0.0, "none"},
      {0.0, 2.0, 0.0, 1.0, "periodic", 0.0, 0.0, "none"},
      {0.0, 1.2, 1.0, 2.4, "dirichlet", 0.0, 0.0, "none"},
      {-15.0, 435.0, 10.0, 50.0, "farfield", 1.0, 0.0, "none"},
      {-15.0, 45.0, 10.0, 20.0, "farfield", 1.0, 0.0, "fisher"},
  };
  const Defaults& d = table[c.example];

  RunPlan plan;
  SolverConfig& s = plan.solver;
  s.scheme = c.scheme;
  s.nu = c.nu;
  s.dt = c.dt;
  s.taylor = c.taylor;
  s.margin_mult = c.margin;
  s.reaction = c.reaction.value_or(d.reaction) == std::string("fisher") ? Reaction::BurgersFisher : Reaction::None;

  const std::string bc = c.bc.value_or(d.bc);
  const double left = c.bc_left.value_or(d.left);
  const double right = c.bc_right.value_or(d.right);
  if (bc == "periodic") s.bc = Periodic{};
  else if (bc == "dirichlet") s.bc = DirichletInvertedReflection{left, right};
  else s.bc = FixedFarField{left, right};

  const double x0 = c.x0.value_or(d.x0);
  const double x1 = c.x1.value_or(d.x1);
  std::size_t n = 0;
  if (c.nx) {
    n = *c.nx;
  } else {
    if (!(x1 > x0)) throw ConfigError("x1 must exceed x0");
    const double cells = (x1 - x0) / c.dx;
    const double rc = std::round(cells);
    if (std::fabs(cells - rc) > 1e-6 * std::max(1.0, cells)) {
      throw ConfigError("domain length " + format_double(x1 - x0) + " is not a multiple of dx = " +
                        format_double(c.dx) + " (give nx instead)");
    }
    n = static_cast<std::size_t>(rc) + (bc == "periodic" ? 0 : 1);
  }
  s.grid = GridSpec{x0, c.dx, n};
  s.validate();

  plan.t_start = c.t_start.value_or(d.t_start);
  if (c.steps) {
    plan.steps = *c.steps;
  } else {
    const auto t_end = c.t_end ? c.t_end : d.t_end;
    if (!t_end) throw ConfigError("t_end or steps is required for custom runs");
    plan.steps = detail::steps_for(*t_end - plan.t_start, c.dt, "t_end - t_start");
  }

  const double nu = c.nu;
  switch (c.example) {
    case 0: {
      auto expr = std::make_shared<Expression>(Expression::parse(c.initial));
      plan.u0.resize(n);
      for (std::size_t i = 0; i < n; ++i) plan.u0[i] = (*expr)(s.grid.x(static_cast<std::ptrdiff_t>(i)));
      break;
    }
    case 1: {
      // The series needs t > 0; the earliest time it is asked for is one step in.
      const double t_min = plan.t_start > 0.0 ? plan.t_start : c.dt;
      auto fs = std::make_shared<FourierSolution>(nu, t_min);
      plan.exact = [fs](double x, double t) { return t == 0.0 ? std::sin(std::numbers::pi * x) : (*fs)(x, t); };
      break;
    }
    case 2: plan.exact = [nu](double x, double t) { return example2_exact(x, t, nu); }; break;
    case 3: plan.exact = [nu](double x, double t) { return example3_exact(x, t, nu); }; break;
    case 4: plan.exact = [](double x, double t) { return example4_exact(x, t); }; break;
    default: break;
  }
  if (plan.exact) {
    plan.u0.resize(n);
    for (std::size_t i = 0; i < n; ++i) plan.u0[i] = plan.exact(s.grid.x(static_cast<std::ptrdiff_t>(i)), plan.t_start);
  }

  // Sine-wave norms are taken over [0, 1], half the periodic cell.
  plan.norm_nodes = n;
  if (c.example == 1) {
    plan.norm_nodes = 0;
    while (plan.norm_nodes < n && s.grid.x(static_cast<std::ptrdiff_t>(plan.norm_nodes)) <= 1.0 + 1e-9) {
      ++plan.norm_nodes;
    }
  }

  auto to_steps = [&](const std::vector<double>& times, const char* what) {
    std::vector<std::size_t> out;
    for (double t : times) {
      const std::size_t k = detail::steps_for(t - plan.t_start, c.dt, what);
      if (k > plan.steps) throw ConfigError(std::string(what) + " " + format_double(t) + " lies beyond the run end");
      out.push_back(k);
    }
    if (out.empty()) out.push_back(plan.steps);
    return out;
  };
  plan.snapshot_steps = to_steps(c.snapshot_times, "snapshot time");
  plan.norm_steps = to_steps(c.norm_times, "norm time");
  return plan;
}

}  // namespace burgers::cli

#pragma once

// Relative l1 / l2 / l-infinity error norms.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>

#include "burgers/errors.hpp"

namespace burgers {

struct ErrorReport {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
  std::size_t n = 0;
  double t = 0.0;
};

inline ErrorReport error_norms(std::span<const double> u, std::span<const double> f, double t = 0.0) {
  if (u.size() != f.size()) {
    throw ContractViolation("error_norms: lengths differ (" + std::to_string(u.size()) + " vs " +
                            std::to_string(f.size()) + ")");
  }
  double d1 = 0.0, f1 = 0.0, d2 = 0.0, f2 = 0.0, dm = 0.0, fm = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = std::fabs(u[i] - f[i]);
    const double a = std::fabs(f[i]);
    d1 += d;
    f1 += a;
    d2 += d * d;
    f2 += a * a;
    dm = std::max(dm, d);
    fm = std::max(fm, a);
  }
  if (!(f1 > 0.0) || !(fm > 0.0)) throw UndefinedNormError("error norm undefined: reference is identically zero");
  ErrorReport r;
  r.l1 = d1 / f1;
  r.l2 = std::sqrt(d2) / std::sqrt(f2);
  r.linf = dm / fm;
  r.n = u.size();
  r.t = t;
  return r;
}

}  // namespace burgers

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

#include "rdlab/grid/grid.hpp"

namespace rdlab {

/// (h sum |f_j|^p)^(1/p); p = infinity gives the max norm.
inline double lp_norm(std::span<const double> f, double p, const Grid1D& grid) {
  detail::require(p >= 1.0, "lp_norm requires p >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : f) m = std::max(m, std::abs(v));
    return m;
  }
  double s = 0.0;
  if (p == 1.0) {
    for (double v : f) s += std::abs(v);
    return grid.h() * s;
  }
  if (p == 2.0) {
    for (double v : f) s += v * v;
    return std::sqrt(grid.h() * s);
  }
  for (double v : f) s += std::pow(std::abs(v), p);
  return std::pow(grid.h() * s, 1.0 / p);
}

/// h sum |f_j|^p without taking the root.
inline double lp_power(std::span<const double> f, double p, const Grid1D& grid) {
  double s = 0.0;
  for (double v : f) s += std::pow(std::abs(v), p);
  return grid.h() * s;
}

inline double h1_seminorm(std::span<const double> f, const Grid1D& grid) {
  double s = 0.0;
  for (std::size_t j = 0; j + 1 < f.size(); ++j) {
    const double d = f[j + 1] - f[j];
    s += d * d;
  }
  return std::sqrt(s / grid.h());
}

/// Full discrete H1 norm squared: ||f||_2^2 + |f|_{H1}^2.
inline double h1_norm_squared(std::span<const double> f, const Grid1D& grid) {
  const double l2 = lp_norm(f, 2.0, grid);
  const double semi = h1_seminorm(f, grid);
  return l2 * l2 + semi * semi;
}

inline double x_log_abs_x(double x) { return x == 0.0 ? 0.0 : x * std::abs(std::log(x)); }

/// h sum f_j |log f_j| with 0 log 0 := 0.
inline double llogl(std::span<const double> f, const Grid1D& grid) {
  double s = 0.0;
  for (double v : f) {
    if (v < 0.0) throw InvalidInput("llogl requires a non-negative field");
    s += x_log_abs_x(v);
  }
  return grid.h() * s;
}

inline double total_mass(std::span<const double> f, const Grid1D& grid) {
  double s = 0.0;
  for (double v : f) s += v;
  return grid.h() * s;
}

}  // namespace rdlab

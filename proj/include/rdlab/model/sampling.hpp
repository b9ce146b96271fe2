#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace rdlab {

/// Sampling budget for the assumption checkers.
struct SamplerConfig {
  double u_max = 1e3;
  double delta_floor = 1e-8;
  std::size_t samples = 10000;
  std::size_t rays = 64;
  double s_min = 1.0;
  double s_max = 1e3;
  std::size_t ray_points = 16;
  double slope_tol = 0.1;
  std::vector<double> times = {0.0};
  std::uint64_t seed = 20240607;
};

/// Slack above which an inequality counts as violated: 1e-9 (1 + |rhs|).
inline bool exceeds_tolerance(double lhs, double rhs) { return lhs - rhs > 1e-9 * (1.0 + std::abs(rhs)); }

namespace detail {

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> uni(std::log(lo), std::log(hi));
  return std::exp(uni(rng));
}

/// All points of {0,1}^m in lexicographic order.
inline std::vector<std::vector<double>> unit_lattice(std::size_t m) {
  std::vector<std::vector<double>> points;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    std::vector<double> p(m);
    for (std::size_t j = 0; j < m; ++j) p[j] = (mask >> (m - 1 - j)) & 1u ? 1.0 : 0.0;
    points.push_back(std::move(p));
  }
  return points;
}

/// Directions in the closed positive orthant normalized to unit coordinate sum: coordinate axes,
/// pairwise diagonals, the full diagonal, then random directions up to `count`.
inline std::vector<std::vector<double>> ray_directions(std::size_t m, std::size_t count, std::mt19937_64& rng) {
  std::vector<std::vector<double>> dirs;
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<double> e(m, 0.0);
    e[k] = 1.0;
    dirs.push_back(e);
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      std::vector<double> e(m, 0.0);
      e[a] = e[b] = 0.5;
      dirs.push_back(e);
    }
  }
  if (m > 2) dirs.push_back(std::vector<double>(m, 1.0 / static_cast<double>(m)));
  std::normal_distribution<double> normal;
  while (dirs.size() < count) {
    std::vector<double> e(m);
    double s = 0.0;
    for (auto& v : e) s += (v = std::abs(normal(rng)));
    for (auto& v : e) v /= s;
    dirs.push_back(std::move(e));
  }
  return dirs;
}

inline std::vector<double> geometric_points(double lo, double hi, std::size_t count) {
  std::vector<double> s(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double frac = count == 1 ? 1.0 : static_cast<double>(k) / static_cast<double>(count - 1);
    s[k] = lo * std::pow(hi / lo, frac);
  }
  return s;
}

}  // namespace detail

/// Result of probing the growth of the positive part of a scalar function along rays u = s e.
struct RayGrowth {
  double exponent = -std::numeric_limits<double>::infinity();  // worst log-log slope at large s
  std::vector<double> far_point;                                 // ray point at s_max on the worst ray
  double t = 0.0;
  double fitted_constant = 0.0;  // max over samples of value_+ / reference(u)
  std::size_t samples = 0;
};

/// Least-squares slope of log y against log s over the trailing run of positive values
/// among the last four ray points; -inf when the positive part vanishes at the far end.
inline double trailing_log_slope(const std::vector<double>& s, const std::vector<double>& y) {
  const std::size_t n = s.size();
  const std::size_t window = std::min<std::size_t>(4, n);
  std::size_t first = n;
  while (first > n - window && y[first - 1] > 0.0) --first;
  if (n - first < 2) return -std::numeric_limits<double>::infinity();
  double mx = 0.0, my = 0.0;
  for (std::size_t k = first; k < n; ++k) {
    mx += std::log(s[k]);
    my += std::log(y[k]);
  }
  mx /= static_cast<double>(n - first);
  my /= static_cast<double>(n - first);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = first; k < n; ++k) {
    const double dx = std::log(s[k]) - mx;
    sxy += dx * (std::log(y[k]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

namespace detail {

/// The last three ray values are all zero, or all positive with agreeing local log-log slopes.
inline bool settled(const std::vector<double>& s, const std::vector<double>& y, double tol = 0.02) {
  const std::size_t n = y.size();
  if (n < 3) return true;
  const double a = y[n - 3], b = y[n - 2], c = y[n - 1];
  if (a == 0.0 && b == 0.0 && c == 0.0) return true;
  if (!(a > 0.0 && b > 0.0 && c > 0.0)) return false;
  const double s1 = std::log(b / a) / std::log(s[n - 2] / s[n - 3]);
  const double s2 = std::log(c / b) / std::log(s[n - 1] / s[n - 2]);
  return std::abs(s1 - s2) <= tol;
}

}  // namespace detail

/// `value(u, t)` is the quantity whose positive part is probed; `reference(u)` the growth
/// envelope used to fit the constant (e.g. (1 + sum u)^r).
template <class Value, class Reference>
RayGrowth probe_ray_growth(std::size_t m, const SamplerConfig& cfg, Value&& value, Reference&& reference) {
  std::mt19937_64 rng(cfg.seed);
  const auto dirs = detail::ray_directions(m, cfg.rays, rng);
  const auto s = detail::geometric_points(cfg.s_min, cfg.s_max, cfg.ray_points);
  RayGrowth out;
  std::vector<double> u(m), ray_s, y;
  for (double t : cfg.times) {
    for (const auto& e : dirs) {
      ray_s = s;
      y.assign(s.size(), 0.0);
      auto sample = [&](std::size_t k) {
        for (std::size_t j = 0; j < m; ++j) u[j] = ray_s[k] * e[j];
        y[k] = std::max(0.0, value(u, t));
        out.fitted_constant = std::max(out.fitted_constant, y[k] / reference(u));
        ++out.samples;
      };
      for (std::size_t k = 0; k < s.size(); ++k) sample(k);
      // Lower-order terms can still compete at s_max (a sign change near the end of the ray
      // inflates the slope); extend by decades until the local slope settles.
      for (int extra = 0; extra < 9 && !detail::settled(ray_s, y); ++extra) {
        ray_s.push_back(ray_s.back() * 10.0);
        y.push_back(0.0);
        sample(y.size() - 1);
      }
      const double slope = trailing_log_slope(ray_s, y);
      if (slope > out.exponent || out.far_point.empty()) {
        out.exponent = std::max(out.exponent, slope);
        out.far_point.resize(m);
        for (std::size_t j = 0; j < m; ++j) out.far_point[j] = ray_s.back() * e[j];
        out.t = t;
      }
    }
  }
  // Bounded-box samples so the fitted constant also covers small concentrations.
  std::uniform_real_distribution<double> uni(0.0, cfg.s_min);
  for (double t : cfg.times) {
    for (std::size_t k = 0; k < cfg.samples / 10; ++k) {
      for (auto& v : u) v = uni(rng);
      out.fitted_constant = std::max(out.fitted_constant, std::max(0.0, value(u, t)) / reference(u));
      ++out.samples;
    }
  }
  return out;
}

}  // namespace rdlab

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "rdlab/grid/grid.hpp"

namespace rdlab {

struct HolderEstimate {
  double exponent = 1.0;
  double constant = 0.0;
  double fit_residual = 0.0;
  std::vector<std::pair<double, double>> levels;  // (separation, max oscillation)
  std::vector<std::pair<double, double>> candidates;  // (exponent, max_k M_k / delta_k^exponent)
};

namespace detail {

inline constexpr double kMinHolderExponent = 1e-6;

/// Dyadic oscillation fit shared by the space and time estimators. `scale(delta)` maps a
/// separation to the variable the power law is expressed in (delta itself, or sqrt(delta)).
template <class Scale>
HolderEstimate dyadic_holder_fit(std::span<const double> f, double spacing, std::span<const double> candidates,
                                 Scale scale) {
  const std::size_t n = f.size();
  std::vector<std::size_t> shifts;
  for (std::size_t s = 1; 2 * s <= n; s *= 2) shifts.push_back(s);
  require(shifts.size() >= 3, "holder_fit needs at least 3 dyadic levels");

  HolderEstimate est;
  for (std::size_t s : shifts) {
    double m = 0.0;
    for (std::size_t j = 0; j + s < n; ++j) m = std::max(m, std::abs(f[j + s] - f[j]));
    est.levels.emplace_back(scale(static_cast<double>(s) * spacing), m);
  }

  const bool degenerate = std::all_of(est.levels.begin(), est.levels.end(), [](auto& l) { return l.second == 0.0; });
  if (degenerate) {
    est.exponent = 1.0;
    est.constant = 0.0;
    for (double c : candidates) est.candidates.emplace_back(c, 0.0);
    return est;
  }

  // The finest separations are dominated by where the cell centers sit relative to a
  // singularity; fit on the coarser half of the levels (at least three).
  const std::size_t first = std::min(est.levels.size() / 2, est.levels.size() - 3);
  std::vector<double> xs, ys;
  for (std::size_t k = first; k < est.levels.size(); ++k) {
    if (est.levels[k].second <= 0.0) continue;
    xs.push_back(std::log(est.levels[k].first));
    ys.push_back(std::log(est.levels[k].second));
  }
  double slope = 1.0;
  double intercept = 0.0;
  if (xs.size() >= 2) {
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      sxy += (xs[k] - mx) * (ys[k] - my);
      sxx += (xs[k] - mx) * (xs[k] - mx);
    }
    slope = sxy / sxx;
    intercept = my - slope * mx;
    double r2 = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      const double e = ys[k] - (intercept + slope * xs[k]);
      r2 += e * e;
    }
    est.fit_residual = std::sqrt(r2 / xs.size());
  }
  est.exponent = std::clamp(slope, kMinHolderExponent, 1.0);

  auto constant_for = [&](double gamma) {
    double h = 0.0;
    for (auto [delta, m] : est.levels) h = std::max(h, m / std::pow(delta, gamma));
    return h;
  };
  est.constant = constant_for(est.exponent);
  for (double c : candidates) est.candidates.emplace_back(c, constant_for(c));
  return est;
}

}  // namespace detail

/// Spatial Hölder estimate |f(x) - f(x')| <= H |x - x'|^gamma from dyadic oscillations.
inline HolderEstimate holder_fit(std::span<const double> f, double spacing, std::span<const double> candidates = {}) {
  for (double v : f) detail::require(std::isfinite(v), "holder_fit requires finite values");
  return detail::dyadic_holder_fit(f, spacing, candidates, [](double d) { return d; });
}

inline HolderEstimate holder_fit(std::span<const double> f, const Grid1D& grid, std::span<const double> candidates = {}) {
  detail::require(f.size() == grid.size(), "field size does not match grid");
  return holder_fit(f, grid.h(), candidates);
}

/// Time-direction estimate |f(t) - f(t')| <= H |t - t'|^(theta/2) over a uniformly spaced
/// series; the returned exponent is theta.
inline HolderEstimate holder_fit_time(std::span<const double> series, double cadence,
                                      std::span<const double> candidates = {}) {
  for (double v : series) detail::require(std::isfinite(v), "holder_fit_time requires finite values");
  return detail::dyadic_holder_fit(series, cadence, candidates, [](double d) { return std::sqrt(d); });
}

/// Face differences (f_{j+1} - f_j)/h padded with the zero Neumann fluxes at both ends.
inline Field face_gradient(std::span<const double> f, const Grid1D& grid) {
  Field g(f.size() + 1, 0.0);
  for (std::size_t j = 0; j + 1 < f.size(); ++j) g[j + 1] = (f[j + 1] - f[j]) / grid.h();
  return g;
}

}  // namespace rdlab

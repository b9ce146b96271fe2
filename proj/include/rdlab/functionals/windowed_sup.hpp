#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "rdlab/error.hpp"

namespace rdlab {

struct WindowedSupConfig {
  double plateau_tolerance = 1.05;
  double last_fraction = 0.25;
  double middle_fraction = 0.25;
  std::size_t min_windows = 10;
};

struct WindowedSupResult {
  bool bounded = false;
  std::vector<double> y;  // window maxima
  double plateau_ratio = 0.0;
  double increase_growth = 0.0;  // late max over the increase set relative to the early one
};

/// y_n = max of the series over [t0 + n w, t0 + (n+1) w). Bounded when the last quarter of y stays
/// within tolerance of the middle quarter and, on the increase set {n : y_{n-1} <= y_n}, the second
/// half does not exceed the first half (or y_0) beyond tolerance.
inline WindowedSupResult windowed_sup_test(std::span<const double> t, std::span<const double> series, double window,
                                           const WindowedSupConfig& cfg = {}) {
  detail::require(t.size() == series.size() && !t.empty(), "series and times must have the same non-zero length");
  detail::require(window > 0.0, "window must be positive");
  const double t0 = t.front();
  const auto count = static_cast<std::size_t>(std::ceil((t.back() - t0) / window - 1e-9));
  if (count < cfg.min_windows) {
    throw InvalidInput("series covers " + std::to_string(count) + " windows; at least " +
                       std::to_string(cfg.min_windows) + " are required");
  }
  WindowedSupResult out;
  out.y.assign(count, 0.0);
  for (std::size_t k = 0; k < t.size(); ++k) {
    auto n = static_cast<std::size_t>(std::max(0.0, std::floor((t[k] - t0) / window)));
    n = std::min(n, count - 1);
    out.y[n] = std::max(out.y[n], series[k]);
  }
  const auto& y = out.y;
  const auto span_max = [&](double a, double b) {
    const auto lo = static_cast<std::size_t>(std::floor(a * count));
    const auto hi = std::max(lo + 1, static_cast<std::size_t>(std::ceil(b * count)));
    return *std::max_element(y.begin() + lo, y.begin() + std::min(hi, count));
  };
  const double mid_lo = 0.5 - 0.5 * cfg.middle_fraction;
  const double middle = span_max(mid_lo, mid_lo + cfg.middle_fraction);
  const double last = span_max(1.0 - cfg.last_fraction, 1.0);
  out.plateau_ratio = middle > 0.0 ? last / middle : (last > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);

  double early = y[0];
  double late = 0.0;
  for (std::size_t n = 1; n < count; ++n) {
    if (y[n - 1] > y[n]) continue;
    if (2 * n < count) {
      early = std::max(early, y[n]);
    } else {
      late = std::max(late, y[n]);
    }
  }
  out.increase_growth = early > 0.0 ? late / early : (late > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  out.bounded = out.plateau_ratio <= cfg.plateau_tolerance && out.increase_growth <= cfg.plateau_tolerance;
  return out;
}

}  // namespace rdlab

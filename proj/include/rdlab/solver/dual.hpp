#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "rdlab/error.hpp"
#include "rdlab/grid/grid.hpp"
#include "rdlab/grid/operators.hpp"
#include "rdlab/model/polynomial.hpp"
#include "rdlab/model/reaction_system.hpp"
#include "rdlab/solver/trajectory.hpp"

namespace rdlab {

/// Trapezoidal accumulation of the duality variable, fed one state at a time.
class DualAccumulator {
 public:
  DualAccumulator(const ReactionSystem& system, const GridState& init) : grid_(init.grid) {
    const std::size_t m = system.size();
    d_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      if (!system.diffusion.is_constant(i)) {
        throw Unsupported("duality diagnostics need constant diffusion per species");
      }
      d_[i] = system.diffusion.constant_value(i);
    }
    b_lower_ = 1.0 / *std::max_element(d_.begin(), d_.end());
    b_upper_ = 1.0 / *std::min_element(d_.begin(), d_.end());
    Polynomial total;
    for (const auto& p : system.f) total = sum(total, p);
    total = canonicalize(total);
    g_exact_ = degree(total) == 0;
    if (g_exact_) g_ = total;
    const std::size_t n = grid_.size();
    v_.assign(n, 0.0);
    G_.assign(n, 0.0);
    for (const auto& field : init.u) {
      for (std::size_t j = 0; j < n; ++j) G_[j] += field[j];
    }
    weighted_ = weighted_sum(init);
    t_ = init.t;
  }

  void add(const GridState& state) {
    const double dt = state.t - t_;
    const Field w = weighted_sum(state);
    for (std::size_t j = 0; j < w.size(); ++j) v_[j] += 0.5 * dt * (weighted_[j] + w[j]);
    if (g_exact_ && !g_.empty()) {
      const std::vector<double> origin(d_.size(), 0.0);
      const double g = 0.5 * dt * (evaluate(g_, origin, t_) + evaluate(g_, origin, state.t));
      for (double& x : G_) x += g;
    }
    weighted_ = w;
    t_ = state.t;
  }

  double residual(const GridState& state) const {
    const Field lap = laplacian_neumann(v_, grid_);
    double r = 0.0;
    for (std::size_t j = 0; j < grid_.size(); ++j) {
      double s = 0.0;
      for (const auto& field : state.u) s += field[j];
      r = std::max(r, std::abs(s - lap[j] - G_[j]));
    }
    return r;
  }

  DualDiagnostics diagnostics(const GridState& state) const {
    DualDiagnostics out;
    out.v = v_;
    out.G = G_;
    out.g_exact = g_exact_;
    out.residual = residual(state);
    out.b_lower = b_lower_;
    out.b_upper = b_upper_;
    out.b = b_field(state);
    return out;
  }

  /// b = sum u / sum d u where the denominator exceeds `floor`, else the midpoint of the bounds.
  Field b_field(const GridState& state, double floor = 1e-300) const {
    const std::size_t n = grid_.size();
    Field b(n);
    for (std::size_t j = 0; j < n; ++j) {
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < d_.size(); ++i) {
        num += state.u[i][j];
        den += d_[i] * state.u[i][j];
      }
      b[j] = den > floor ? num / den : 0.5 * (b_lower_ + b_upper_);
    }
    return b;
  }

 private:
  Field weighted_sum(const GridState& state) const {
    Field w(grid_.size(), 0.0);
    for (std::size_t i = 0; i < d_.size(); ++i) {
      for (std::size_t j = 0; j < w.size(); ++j) w[j] += d_[i] * state.u[i][j];
    }
    return w;
  }

  Grid1D grid_;
  std::vector<double> d_;
  double b_lower_ = 0.0, b_upper_ = 0.0;
  Polynomial g_;
  bool g_exact_ = true;
  Field v_, G_, weighted_;
  double t_ = 0.0;
};

inline DualDiagnostics dual_accumulate(const Trajectory& trajectory, const ReactionSystem& system) {
  const auto& snaps = trajectory.snapshots;
  if (snaps.size() < 2) throw InvalidInput("dual accumulation needs at least two snapshots");
  DualAccumulator acc(system, snaps.front());
  for (std::size_t k = 1; k < snaps.size(); ++k) acc.add(snaps[k]);
  return acc.diagnostics(snaps.back());
}

}  // namespace rdlab

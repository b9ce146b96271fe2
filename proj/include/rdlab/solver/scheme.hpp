#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "rdlab/grid/grid.hpp"
#include "rdlab/solver/diffusion.hpp"
#include "rdlab/solver/nonlinearity.hpp"

namespace rdlab {

enum class SchemeMode { ConservativeExplicit, RobustPatankar };

inline std::string to_string(SchemeMode mode) {
  return mode == SchemeMode::ConservativeExplicit ? "conservative-explicit" : "robust-patankar";
}

inline SchemeMode scheme_mode_from_string(const std::string& s) {
  if (s == "conservative-explicit") return SchemeMode::ConservativeExplicit;
  if (s == "robust-patankar") return SchemeMode::RobustPatankar;
  throw ConfigError("unknown scheme mode '" + s + "'");
}

struct SchemeConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  SchemeMode mode = SchemeMode::RobustPatankar;
  std::size_t snapshot_every = 100;
  std::size_t diagnostics_every = 0;  // 0: same cadence as snapshots
  double blowup_threshold = 1e8;
  double dt_safety = 0.5;  // explicit mode: substep shrink factor when u* < 0
  unsigned max_refinements = 40;
  bool diffusion = true;

  void validate() const {
    detail::require_config(dt > 0.0 && std::isfinite(dt), "scheme.dt must be positive");
    detail::require_config(t_end > 0.0 && std::isfinite(t_end), "scheme.t_end must be positive");
    detail::require_config(dt < t_end, "scheme.dt must be smaller than scheme.t_end");
    detail::require_config(blowup_threshold > 0.0, "scheme.M_max must be positive");
    detail::require_config(snapshot_every >= 1, "scheme.snapshot_every must be >= 1");
    detail::require_config(dt_safety > 0.0 && dt_safety < 1.0, "scheme.dt_safety must lie in (0, 1)");
  }

  std::size_t diagnostics_cadence() const { return diagnostics_every == 0 ? snapshot_every : diagnostics_every; }
  std::size_t total_steps() const { return static_cast<std::size_t>(std::llround(t_end / dt)); }
};

/// Lie splitting: pointwise reaction substep, then one backward-Euler diffusion solve per species.
template <Nonlinearity N>
class Stepper {
 public:
  Stepper(N nonlinearity, const Grid1D& grid, const DiffusionField& diffusion, SchemeConfig cfg)
      : nl_(std::move(nonlinearity)), cfg_(cfg), grid_(grid) {
    cfg_.validate();
    if (cfg_.mode == SchemeMode::RobustPatankar && !nl_.splittable()) {
      throw Unsupported("reaction terms are not symbolically quasi-positive; use conservative-explicit mode");
    }
    if (cfg_.diffusion) diffusion_ = ImplicitDiffusion(grid, diffusion, cfg.dt);
    const std::size_t m = nl_.species();
    cell_.resize(m);
    a_.resize(m);
    b_.resize(m);
    trial_.resize(m);
  }

  const SchemeConfig& config() const { return cfg_; }
  const N& nonlinearity() const { return nl_; }

  void step(GridState& state) {
    react(state);
    if (cfg_.diffusion) {
      for (std::size_t i = 0; i < state.species(); ++i) diffusion_.solve(i, state.u[i]);
    }
    state.t += cfg_.dt;
  }

  void react(GridState& state) {
    const std::size_t m = state.species();
    for (std::size_t j = 0; j < grid_.size(); ++j) {
      for (std::size_t i = 0; i < m; ++i) cell_[i] = state.u[i][j];
      if (cfg_.mode == SchemeMode::RobustPatankar) {
        nl_.split(cell_, state.t, a_, b_);
        for (std::size_t i = 0; i < m; ++i) cell_[i] = (cell_[i] + cfg_.dt * a_[i]) / (1.0 + cfg_.dt * b_[i]);
      } else {
        explicit_advance(state.t, cfg_.dt, 0);
      }
      for (std::size_t i = 0; i < m; ++i) state.u[i][j] = cell_[i];
    }
  }

 private:
  // u <- u + dt f(u); refined into equal substeps until every trial value is non-negative.
  void explicit_advance(double t, double dt, unsigned depth) {
    const std::size_t m = cell_.size();
    nl_.evaluate(cell_, t, a_);
    bool positive = true;
    for (std::size_t i = 0; i < m; ++i) {
      trial_[i] = cell_[i] + dt * a_[i];
      positive = positive && trial_[i] >= 0.0;
    }
    if (positive) {
      cell_.swap(trial_);
      return;
    }
    if (depth >= cfg_.max_refinements) {
      throw StiffnessError("explicit reaction substep cannot keep the state non-negative at t = " +
                           std::to_string(t) + "; use robust-patankar mode");
    }
    const auto pieces = static_cast<unsigned>(std::lround(1.0 / cfg_.dt_safety));
    const double sub = dt / pieces;
    for (unsigned k = 0; k < pieces; ++k) explicit_advance(t + k * sub, sub, depth + 1);
  }

  N nl_;
  SchemeConfig cfg_;
  Grid1D grid_;
  ImplicitDiffusion diffusion_;
  std::vector<double> cell_, a_, b_, trial_;
};

/// One step of the scheme from `state`.
template <Nonlinearity N>
GridState step(const GridState& state, const N& nonlinearity, const DiffusionField& diffusion,
               const SchemeConfig& cfg) {
  state.validate();
  Stepper<N> stepper(nonlinearity, state.grid, diffusion, cfg);
  GridState next = state;
  stepper.step(next);
  return next;
}

inline GridState step(const GridState& state, const ReactionSystem& system, const SchemeConfig& cfg) {
  return step(state, PolynomialNonlinearity(system), system.diffusion, cfg);
}

}  // namespace rdlab

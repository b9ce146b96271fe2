#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "rdlab/functionals/energy.hpp"
#include "rdlab/functionals/entropy.hpp"
#include "rdlab/grid/norms.hpp"
#include "rdlab/model/reaction_system.hpp"
#include "rdlab/solver/dual.hpp"
#include "rdlab/solver/scheme.hpp"
#include "rdlab/solver/trajectory.hpp"

namespace rdlab {

struct RunOptions {
  bool entropy = true;
  bool dual = true;
  std::optional<EnergySpec> e2;      // default: closed-form theta at p = 2
  std::vector<EnergySpec> energies;  // further E_p columns
  double truncation_eps = 0.0;       // 0: untruncated
  bool keep_snapshots = true;
};

namespace detail {

inline double max_abs(const GridState& s, bool& finite) {
  double m = 0.0;
  finite = true;
  for (const auto& field : s.u) {
    for (double v : field) {
      if (!std::isfinite(v)) finite = false;
      m = std::max(m, std::abs(v));
    }
  }
  return m;
}

}  // namespace detail

/// Integrates to t_end, recording diagnostics every `diagnostics_cadence()` steps and snapshots every
/// `snapshot_every` steps (plus the initial and final states). Stops early with a blow-up result
/// when the sup-norm exceeds M_max or a non-finite value appears.
template <Nonlinearity N>
RunResult run(const N& nonlinearity, const ReactionSystem& system, GridState init, const SchemeConfig& scheme,
              const RunOptions& options = {}) {
  init.validate();
  detail::require(init.species() == system.size(), "initial state and system have different species counts");
  detail::require(init.min_value() >= 0.0, "initial data must be non-negative");
  Stepper<N> stepper(nonlinearity, init.grid, system.diffusion, scheme);

  const std::size_t m = system.size();
  const EnergySpec e2 = options.e2 ? *options.e2 : make_energy_spec(system.diffusion.species_minima(), 2);
  const std::vector<double> mu = system.entropy ? system.entropy->mu : std::vector<double>(m, 0.0);
  std::optional<DualAccumulator> dual;
  if (options.dual && scheme.diffusion && system.diffusion.is_constant()) dual.emplace(system, init);

  RunResult result;
  double b_lo = std::numeric_limits<double>::infinity();
  double b_hi = -std::numeric_limits<double>::infinity();
  auto finish_dual = [&](const GridState& s) {
    if (!dual) return;
    result.dual = dual->diagnostics(s);
    result.dual->b_min_observed = b_lo;
    result.dual->b_max_observed = b_hi;
  };
  auto record = [&](const GridState& s) {
    DiagnosticsRow row;
    row.t = s.t;
    for (const auto& field : s.u) {
      row.mass.push_back(total_mass(field, s.grid));
      row.supnorm.push_back(lp_norm(field, std::numeric_limits<double>::infinity(), s.grid));
      row.l2.push_back(lp_norm(field, 2.0, s.grid));
    }
    const double lo = s.min_value();
    const bool usable = lo >= 0.0 && std::isfinite(row.max_supnorm());
    const double nan = std::numeric_limits<double>::quiet_NaN();
    row.entropy = options.entropy && usable ? entropy_functional(s, mu) : nan;
    row.e2 = usable ? lp_energy(s, e2) : nan;
    for (const auto& spec : options.energies) row.energies.push_back(usable ? lp_energy(s, spec) : nan);
    row.dual_residual = nan;
    if (dual && usable) {
      row.dual_residual = dual->residual(s);
      for (double b : dual->b_field(s)) {
        b_lo = std::min(b_lo, b);
        b_hi = std::max(b_hi, b);
      }
    }
    row.min_value = lo;
    result.trajectory.diagnostics.push_back(std::move(row));
  };
  auto snapshot = [&](const GridState& s) {
    if (options.keep_snapshots) result.trajectory.append(s);
  };

  GridState state = std::move(init);
  result.min_value = state.min_value();
  record(state);
  snapshot(state);

  const std::size_t total = scheme.total_steps();
  const std::size_t diag_every = scheme.diagnostics_cadence();
  const double t0 = state.t;
  for (std::size_t k = 1; k <= total; ++k) {
    stepper.step(state);
    state.t = t0 + static_cast<double>(k) * scheme.dt;
    result.steps = k;
    bool finite = true;
    const double sup = detail::max_abs(state, finite);
    if (finite) result.min_value = std::min(result.min_value, state.min_value());
    if (dual && finite) dual->add(state);
    if (!finite || sup > scheme.blowup_threshold) {
      result.termination = Termination::BlowUp;
      result.blowup = BlowUpDetected{state.t, sup, !finite};
      record(state);
      if (finite) snapshot(state);
      if (finite) finish_dual(state);
      return result;
    }
    if (k % diag_every == 0 || k == total) record(state);
    if (k % scheme.snapshot_every == 0 || k == total) snapshot(state);
  }
  finish_dual(state);
  return result;
}

inline RunResult run(const ReactionSystem& system, GridState init, const SchemeConfig& scheme,
                     const RunOptions& options = {}) {
  if (options.truncation_eps > 0.0) return run(truncate(system, options.truncation_eps), system, std::move(init), scheme, options);
  return run(PolynomialNonlinearity(system), system, std::move(init), scheme, options);
}

}  // namespace rdlab

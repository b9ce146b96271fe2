#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "rdlab/grid/grid.hpp"
#include "rdlab/grid/norms.hpp"
#include "rdlab/inequality_report.hpp"
#include "rdlab/multi_index.hpp"
#include "rdlab/solver/trajectory.hpp"
#include "rdlab/theta/theta.hpp"

namespace rdlab {

struct EnergyTerm {
  std::vector<unsigned> beta;
  double coefficient = 0.0;  // p! / prod beta_i!
  double weight = 0.0;       // prod theta_i^{beta_i^2}
};

/// E_p[u] = sum_{|beta| = p} (p over beta) theta^{beta^2} u^beta.
struct EnergySpec {
  unsigned p = 2;
  ThetaWeights theta;
  std::vector<EnergyTerm> table;

  EnergySpec() = default;

  explicit EnergySpec(ThetaWeights weights) : p(weights.p), theta(std::move(weights)) {
    detail::require(p >= 2, "energy order p must be >= 2");
    for (auto& beta : multi_indices(theta.theta.size(), p)) {
      EnergyTerm term;
      term.coefficient = multinomial(beta);
      term.weight = 1.0;
      for (std::size_t i = 0; i < beta.size(); ++i) {
        term.weight *= std::pow(theta.theta[i], static_cast<double>(beta[i]) * beta[i]);
      }
      term.beta = std::move(beta);
      table.push_back(std::move(term));
    }
  }

  std::size_t species() const { return theta.theta.size(); }

  double density(std::span<const double> u) const {
    double e = 0.0;
    for (const auto& term : table) {
      double mono = term.coefficient * term.weight;
      for (std::size_t i = 0; i < term.beta.size(); ++i) {
        for (unsigned k = 0; k < term.beta[i]; ++k) mono *= u[i];
      }
      e += mono;
    }
    return e;
  }
};

/// Energy spec with closed-form theta for the given diffusion constants.
inline EnergySpec make_energy_spec(std::span<const double> d, unsigned p) { return EnergySpec(find_theta(d, p)); }

inline double lp_energy(const GridState& state, const EnergySpec& spec) {
  detail::require(state.species() == spec.species(), "energy spec and state have different species counts");
  std::vector<double> cell(state.species());
  double total = 0.0;
  for (std::size_t j = 0; j < state.grid.size(); ++j) {
    for (std::size_t i = 0; i < cell.size(); ++i) cell[i] = state.u[i][j];
    total += spec.density(cell);
  }
  return state.grid.h() * total;
}

/// Dissipation term alpha_p sum_i |d/dx (u_i^{p/2})|^2, powers taken cellwise.
inline double energy_dissipation(const GridState& state, const EnergySpec& spec) {
  const double half = 0.5 * spec.p;
  double s = 0.0;
  Field power(state.grid.size());
  for (const auto& field : state.u) {
    for (std::size_t j = 0; j < field.size(); ++j) power[j] = std::pow(field[j], half);
    const double g = h1_seminorm(power, state.grid);
    s += g * g;
  }
  return spec.theta.alpha_p * s;
}

struct EnergyCheckOptions {
  double constant = std::numeric_limits<double>::quiet_NaN();  // when set, `satisfied` is measured against it
  double step = 0.0;           // integrator time step; > 0 enables the roundoff floor
  double amplification = 1.0;  // error growth of one step, e.g. 1 + 4 d_max dt / h^2 for implicit diffusion
  double roundoff_factor = 4.0;
};

/// Options for a trajectory produced with time step `dt` on `grid` with the given diffusion.
inline EnergyCheckOptions energy_check_options(double dt, const Grid1D& grid, const DiffusionField& diffusion) {
  double d_max = 0.0;
  for (std::size_t i = 0; i < diffusion.species(); ++i) d_max = std::max(d_max, diffusion.species_max(i));
  EnergyCheckOptions o;
  o.step = dt;
  o.amplification = 1.0 + 4.0 * d_max * dt / (grid.h() * grid.h());
  return o;
}

/// Differential inequality dE/dt + dissipation <= C (1 + sum int u_i^{p-1+r}) checked at each
/// interior snapshot with centered differences. The fitted constant is the smallest C >= 0 that
/// makes it hold. With a positive `step`, left sides within the accumulated rounding of the
/// integrator, roundoff_factor * eps * amplification * E / step, count as zero; the unfloored constant is kept
/// in `raw_constant`.
struct EnergyCheck {
  InequalityReport report;
  double raw_constant = 0.0;
  std::vector<double> lhs;
  std::vector<double> rhs;
};

inline EnergyCheck energy_inequality_monitor(const Trajectory& trajectory, const EnergySpec& spec, double r,
                                             const EnergyCheckOptions& opts = {}) {
  const auto& snaps = trajectory.snapshots;
  if (snaps.size() < 3) throw InvalidInput("energy inequality check needs at least three snapshots");
  EnergyCheck out;
  InequalityReport& rep = out.report;
  rep.name = "energy-p" + std::to_string(spec.p);
  const double q = spec.p - 1.0 + r;
  std::vector<double> energy(snaps.size());
  for (std::size_t k = 0; k < snaps.size(); ++k) energy[k] = lp_energy(snaps[k], spec);
  double worst = -std::numeric_limits<double>::infinity();
  double raw = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k + 1 < snaps.size(); ++k) {
    const double rate = (energy[k + 1] - energy[k - 1]) / (snaps[k + 1].t - snaps[k - 1].t);
    const double l = rate + energy_dissipation(snaps[k], spec);
    double r0 = 1.0;
    for (const auto& field : snaps[k].u) r0 += lp_power(field, q, snaps[k].grid);
    double floor = 0.0;
    if (opts.step > 0.0) {
      floor = opts.roundoff_factor * opts.amplification * std::numeric_limits<double>::epsilon() *
              std::max(std::abs(energy[k - 1]), std::abs(energy[k + 1])) / opts.step;
    }
    const double effective = l > floor ? l : std::min(l, 0.0);
    out.lhs.push_back(effective);
    out.rhs.push_back(r0);
    raw = std::max(raw, l / r0);
    if (effective / r0 > worst) {
      worst = effective / r0;
      rep.worst_t = snaps[k].t;
      rep.worst_slack = effective - r0;
    }
  }
  rep.fitted_constant = std::max(0.0, worst);
  out.raw_constant = std::max(0.0, raw);
  rep.holds = std::isfinite(rep.fitted_constant);
  const double c = std::isnan(opts.constant) ? rep.fitted_constant : opts.constant;
  for (std::size_t k = 0; k < out.lhs.size(); ++k) {
    ++rep.checked;
    if (out.lhs[k] > c * out.rhs[k] * (1.0 + 1e-12)) ++rep.violations;
  }
  if (!std::isnan(opts.constant)) rep.holds = rep.holds && rep.violations == 0;
  rep.satisfied = 1.0 - static_cast<double>(rep.violations) / static_cast<double>(rep.checked);
  char note[160];
  std::snprintf(note, sizeof note, "alpha_p = %.6g, r = %g, unfloored constant = %.6g", spec.theta.alpha_p, r,
                out.raw_constant);
  rep.note = note;
  return out;
}

inline InequalityReport energy_inequality_check(const Trajectory& trajectory, const EnergySpec& spec, double r,
                                                const EnergyCheckOptions& opts = {}) {
  return energy_inequality_monitor(trajectory, spec, r, opts).report;
}

}  // namespace rdlab

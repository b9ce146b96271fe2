#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "rdlab/error.hpp"
#include "rdlab/grid/grid.hpp"
#include "rdlab/inequality_report.hpp"
#include "rdlab/model/reaction_system.hpp"
#include "rdlab/solver/trajectory.hpp"

namespace rdlab {

/// u (log u + mu) - u with 0 log 0 = 0.
inline double entropy_density(double u, double mu) {
  if (u < 0.0) throw InvalidInput("entropy is only defined for non-negative states");
  return u == 0.0 ? 0.0 : u * (std::log(u) + mu) - u;
}

inline double entropy_functional(const GridState& state, std::span<const double> mu) {
  detail::require(mu.size() == state.species(), "mu must have one entry per species");
  double s = 0.0;
  for (std::size_t i = 0; i < state.species(); ++i) {
    for (double u : state.u[i]) s += entropy_density(u, mu[i]);
  }
  return state.grid.h() * s;
}

inline double entropy_functional(const GridState& state) {
  const std::vector<double> mu(state.species(), 0.0);
  return entropy_functional(state, mu);
}

/// Checks H(t_{k+1}) - H(t_k) <= dt (k2 H(t_k) + k3 |Omega|) + slack (1 + |H(t_k)|) on a time series.
/// `fitted_constant` is the largest per-step increase beyond the allowed bound (0 when none).
inline InequalityReport entropy_dissipation_check(std::span<const double> t, std::span<const double> H,
                                                  const EntropyStructure& spec, double domain_length,
                                                  double slack = 1e-6) {
  detail::require(t.size() == H.size(), "entropy series length mismatch");
  detail::require(t.size() >= 2, "entropy check needs at least two time points");
  InequalityReport rep;
  rep.name = "entropy";
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    const double dt = t[k + 1] - t[k];
    const double bound = dt * (spec.k2 * H[k] + spec.k3 * domain_length);
    const double excess = H[k + 1] - H[k] - bound;
    ++rep.checked;
    if (excess > slack * (1.0 + std::abs(H[k]))) ++rep.violations;
    if (excess > worst) {
      worst = excess;
      rep.worst_t = t[k + 1];
      rep.worst_slack = excess;
    }
  }
  rep.fitted_constant = std::max(0.0, worst);
  rep.holds = rep.violations == 0;
  rep.satisfied = 1.0 - static_cast<double>(rep.violations) / static_cast<double>(rep.checked);
  rep.note = "total change " + std::to_string(H.back() - H.front());
  return rep;
}

inline InequalityReport entropy_dissipation_check(const Trajectory& trajectory, const EntropyStructure& spec,
                                                  double slack = 1e-6) {
  detail::require(!trajectory.snapshots.empty(), "trajectory has no snapshots");
  std::vector<double> t, H;
  for (const auto& s : trajectory.snapshots) {
    t.push_back(s.t);
    H.push_back(entropy_functional(s, spec.mu));
  }
  return entropy_dissipation_check(t, H, spec, trajectory.snapshots.front().grid.length(), slack);
}

}  // namespace rdlab

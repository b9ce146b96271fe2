#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rdlab/grid/grid.hpp"
#include "rdlab/model/polynomial.hpp"

namespace rdlab {

/// sum_i alpha_i f_i <= k0 + k1 sum_i u_i
struct MassControl {
  double k0 = 0.0;
  double k1 = 0.0;
};

/// sum_i f_i (log u_i + mu_i) <= k2 sum_i u_i (log u_i + mu_i - 1) + k3
struct EntropyStructure {
  std::vector<double> mu;
  double k2 = 0.0;
  double k3 = 0.0;
};

/// Lower-triangular A with sum_{j<=i} a_ij f_j <= C (1 + sum u)^r for every row i.
struct IntermediateSum {
  std::vector<std::vector<double>> A;
  double r = 3.0;
};

/// One reversible mass-action reaction  sum nu^-_i S_i  <=>  sum nu^+_i S_i.
struct Reaction {
  std::vector<unsigned> reactants;
  std::vector<unsigned> products;
  double k_forward = 1.0;
  double k_backward = 0.0;
};

struct MassActionNetwork {
  std::size_t species = 0;
  std::vector<Reaction> reactions;

  void validate() const {
    for (const auto& r : reactions) {
      detail::require_config(r.reactants.size() == species && r.products.size() == species,
                             "stoichiometric vectors must have one entry per species");
      detail::require_config(r.k_forward >= 0.0 && r.k_backward >= 0.0, "rate constants must be non-negative");
    }
  }

  /// f_i = sum_r (nu+_i - nu-_i)(k_f u^{nu-} - k_b u^{nu+}), canonicalized.
  std::vector<Polynomial> compile() const {
    validate();
    std::vector<Polynomial> f(species);
    for (const auto& r : reactions) {
      for (std::size_t i = 0; i < species; ++i) {
        const double net = static_cast<double>(r.products[i]) - static_cast<double>(r.reactants[i]);
        if (net == 0.0) continue;
        if (r.k_forward != 0.0) f[i].push_back(Monomial{net * r.k_forward, 0.0, r.reactants});
        if (r.k_backward != 0.0) f[i].push_back(Monomial{-net * r.k_backward, 0.0, r.products});
      }
    }
    for (auto& p : f) p = canonicalize(std::move(p));
    return f;
  }

  /// Direct rate-law evaluation, independent of the compiled polynomials.
  std::vector<double> rates(std::span<const double> u) const {
    std::vector<double> out(species, 0.0);
    for (const auto& r : reactions) {
      double fwd = r.k_forward, bwd = r.k_backward;
      for (std::size_t j = 0; j < species; ++j) {
        fwd *= std::pow(u[j], r.reactants[j]);
        bwd *= std::pow(u[j], r.products[j]);
      }
      for (std::size_t i = 0; i < species; ++i) {
        const double net = static_cast<double>(r.products[i]) - static_cast<double>(r.reactants[i]);
        out[i] += net * (fwd - bwd);
      }
    }
    return out;
  }

  /// Net stoichiometric matrix S (species x reactions), S_{ir} = nu+_i - nu-_i.
  std::vector<std::vector<double>> stoichiometry() const {
    std::vector<std::vector<double>> s(species, std::vector<double>(reactions.size()));
    for (std::size_t r = 0; r < reactions.size(); ++r) {
      for (std::size_t i = 0; i < species; ++i) {
        s[i][r] = static_cast<double>(reactions[r].products[i]) - static_cast<double>(reactions[r].reactants[i]);
      }
    }
    return s;
  }

  bool detailed_balance_unit() const {
    for (const auto& r : reactions) {
      if (r.k_forward != r.k_backward || r.k_forward <= 0.0) return false;
    }
    return true;
  }
};

struct ReactionSystem {
  std::vector<std::string> species;
  std::vector<Polynomial> f;
  DiffusionField diffusion;
  std::optional<MassControl> mass_control;
  std::optional<std::vector<double>> weights;
  std::optional<EntropyStructure> entropy;
  std::optional<IntermediateSum> isc;
  std::optional<MassActionNetwork> network;  // set when compiled from a mass-action network

  std::size_t size() const { return f.size(); }

  void validate() const {
    const std::size_t m = f.size();
    detail::require_config(m > 0, "system needs at least one species");
    detail::require_config(species.size() == m, "species names must match the number of equations");
    detail::require_config(diffusion.species() == m, "diffusion must be given for every species");
    for (const auto& poly : f) {
      for (const auto& mono : poly) {
        detail::require_config(mono.exponents.size() == m, "monomial exponent vector must have one entry per species");
        detail::require_config(std::isfinite(mono.coefficient) && std::isfinite(mono.time_rate),
                               "monomial coefficients must be finite");
      }
    }
    if (mass_control) detail::require_config(mass_control->k0 >= 0.0, "mass control k0 must be non-negative");
    if (weights) {
      detail::require_config(weights->size() == m, "mass weights must have one entry per species");
      for (double a : *weights) detail::require_config(a > 0.0 && std::isfinite(a), "mass weights must be positive");
    }
    if (entropy) {
      detail::require_config(entropy->mu.size() == m, "entropy mu must have one entry per species");
      detail::require_config(entropy->k2 >= 0.0 && entropy->k3 >= 0.0, "entropy k2, k3 must be non-negative");
    }
    if (isc) {
      detail::require_config(isc->A.size() == m, "intermediate-sum matrix must be m x m");
      detail::require_config(isc->r >= 1.0, "intermediate-sum order r must be >= 1");
      for (std::size_t i = 0; i < m; ++i) {
        detail::require_config(isc->A[i].size() == m, "intermediate-sum matrix must be m x m");
        for (std::size_t j = 0; j < m; ++j) {
          const double a = isc->A[i][j];
          if (j > i) detail::require_config(a == 0.0, "intermediate-sum matrix must be lower triangular");
          detail::require_config(a >= 0.0, "intermediate-sum matrix entries must be non-negative");
        }
        detail::require_config(isc->A[i][i] > 0.0, "intermediate-sum matrix needs a positive diagonal");
      }
    }
  }

  bool is_autonomous() const {
    for (const auto& p : f) {
      if (!rdlab::is_autonomous(p)) return false;
    }
    return true;
  }
};

/// Builds a system from a network; names default to u1, u2, ...
inline ReactionSystem compile_network(const MassActionNetwork& network, DiffusionField diffusion,
                                      std::vector<std::string> names = {}) {
  ReactionSystem sys;
  sys.f = network.compile();
  if (names.empty()) {
    for (std::size_t i = 0; i < network.species; ++i) names.push_back("u" + std::to_string(i + 1));
  }
  sys.species = std::move(names);
  sys.diffusion = std::move(diffusion);
  sys.network = network;
  return sys;
}

inline std::vector<double> evaluate_f(const ReactionSystem& system, std::span<const double> u, double t) {
  detail::require(u.size() == system.size(), "state has wrong number of species");
  for (double v : u) detail::require(std::isfinite(v), "evaluate_f requires finite u");
  std::vector<double> out(system.size());
  for (std::size_t i = 0; i < system.size(); ++i) out[i] = evaluate(system.f[i], u, t);
  return out;
}

/// Row-major m x m matrix J[i][j] = d f_i / d u_j.
inline std::vector<std::vector<double>> jacobian_f(const ReactionSystem& system, std::span<const double> u, double t) {
  detail::require(u.size() == system.size(), "state has wrong number of species");
  for (double v : u) detail::require(std::isfinite(v), "jacobian_f requires finite u");
  const std::size_t m = system.size();
  std::vector<std::vector<double>> J(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& mono : system.f[i]) {
      for (std::size_t j = 0; j < m; ++j) {
        const unsigned e = mono.exponents[j];
        if (e == 0) continue;
        Monomial d = mono;
        d.coefficient *= e;
        d.exponents[j] = e - 1;
        J[i][j] += d.evaluate(u, t);
      }
    }
  }
  return J;
}

struct GrowthDegree {
  std::vector<unsigned> per_species;
  unsigned overall = 0;
};

inline GrowthDegree growth_degree(const ReactionSystem& system) {
  GrowthDegree g;
  for (const auto& p : system.f) {
    g.per_species.push_back(degree(canonicalize(p)));
    g.overall = std::max(g.overall, g.per_species.back());
  }
  return g;
}

}  // namespace rdlab

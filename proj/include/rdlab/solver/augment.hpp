#pragma once

#include <cmath>
#include <vector>

#include "rdlab/error.hpp"
#include "rdlab/model/polynomial.hpp"
#include "rdlab/model/reaction_system.hpp"

namespace rdlab {

/// Rewrites the system in w_i = e^{-k1 t} u_i with g_i = e^{-k1 t} f_i(e^{k1 t} w) - k1 w_i, and
/// appends w_{m+1} with g_{m+1} = k0 e^{-k1 t} - sum g_i and unit diffusion, so that the m + 1
/// reaction terms sum to k0 e^{-k1 t} identically.
inline ReactionSystem augment_mass_control(const ReactionSystem& system) {
  if (!system.mass_control) throw InvalidInput("augmentation needs mass control constants (k0, k1)");
  if (!system.is_autonomous()) throw Unsupported("augmentation needs autonomous reaction terms");
  const double k0 = system.mass_control->k0;
  const double k1 = system.mass_control->k1;
  const std::size_t m = system.size();

  ReactionSystem out;
  out.species = system.species;
  out.species.push_back("w" + std::to_string(m + 1));
  Polynomial total;
  for (std::size_t i = 0; i < m; ++i) {
    Polynomial g = extend_variables(system.f[i], m + 1);
    for (auto& mono : g) mono.time_rate = (static_cast<double>(mono.degree()) - 1.0) * k1;
    if (k1 != 0.0) {
      std::vector<unsigned> e(m + 1, 0);
      e[i] = 1;
      g.push_back(make_monomial(-k1, e));
    }
    g = canonicalize(std::move(g));
    total = sum(total, g);
    out.f.push_back(std::move(g));
  }
  Polynomial last = scaled(total, -1.0);
  if (k0 != 0.0) last.push_back(make_monomial(k0, std::vector<unsigned>(m + 1, 0), -k1));
  out.f.push_back(canonicalize(std::move(last)));

  std::vector<Field> d;
  for (std::size_t i = 0; i < m; ++i) d.push_back(system.diffusion.raw(i));
  d.push_back({1.0});
  out.diffusion = DiffusionField::per_cell(std::move(d));
  out.mass_control = MassControl{k0, 0.0};
  out.weights = std::vector<double>(m + 1, 1.0);
  return out;
}

}  // namespace rdlab

#pragma once

#include <cstddef>
#include <span>

#include "rdlab/grid/grid.hpp"

namespace rdlab {

/// Discrete Neumann Laplacian with reflecting ghost cells (f_{-1} = f_0, f_n = f_{n-1}).
inline Field laplacian_neumann(std::span<const double> f, const Grid1D& grid) {
  const std::size_t n = grid.size();
  detail::require(f.size() == n, "field size does not match grid");
  const double inv_h2 = 1.0 / (grid.h() * grid.h());
  // Accumulate face fluxes so that the output telescopes.
  Field out(n, 0.0);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double flux = (f[j + 1] - f[j]) * inv_h2;
    out[j] += flux;
    out[j + 1] -= flux;
  }
  return out;
}

/// Harmonic mean used as the face value of a discontinuous coefficient.
inline double harmonic_face(double left, double right) { return 2.0 * left * right / (left + right); }

/// Flux-form div(D grad f) with zero boundary fluxes.
inline Field variable_diffusion_div(std::span<const double> f, std::span<const double> D, const Grid1D& grid) {
  const std::size_t n = grid.size();
  detail::require(f.size() == n && D.size() == n, "field size does not match grid");
  for (double d : D) {
    if (!(d > 0.0) || !std::isfinite(d)) throw ConfigError("diffusion coefficients must be positive");
  }
  const double inv_h2 = 1.0 / (grid.h() * grid.h());
  Field out(n, 0.0);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double flux = harmonic_face(D[j], D[j + 1]) * (f[j + 1] - f[j]) * inv_h2;
    out[j] += flux;
    out[j + 1] -= flux;
  }
  return out;
}

/// Even extension onto (-L, 2L): mirror about x = 0 and x = L.
inline Field reflect_extend(std::span<const double> f) {
  const std::size_t n = f.size();
  Field out(3 * n);
  for (std::size_t j = 0; j < n; ++j) {
    out[n - 1 - j] = f[j];
    out[n + j] = f[j];
    out[3 * n - 1 - j] = f[j];
  }
  return out;
}

/// Middle block of an extended field.
inline Field restrict_middle(std::span<const double> extended) {
  detail::require(extended.size() % 3 == 0, "extended field length must be a multiple of 3");
  const std::size_t n = extended.size() / 3;
  return Field(extended.begin() + static_cast<std::ptrdiff_t>(n), extended.begin() + static_cast<std::ptrdiff_t>(2 * n));
}

}  // namespace rdlab

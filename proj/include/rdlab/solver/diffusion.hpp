#pragma once

#include <span>
#include <vector>

#include "rdlab/grid/grid.hpp"
#include "rdlab/grid/operators.hpp"

namespace rdlab {

/// Backward-Euler diffusion (I - dt div(D grad)) u' = u*, factored once per species.
/// The matrix is a symmetric M-matrix with unit column sums, so the solve preserves
/// non-negativity and the discrete mass.
class ImplicitDiffusion {
 public:
  ImplicitDiffusion() = default;

  ImplicitDiffusion(const Grid1D& grid, const DiffusionField& diffusion, double dt) : n_(grid.size()) {
    const double inv_h2 = 1.0 / (grid.h() * grid.h());
    factors_.resize(diffusion.species());
    for (std::size_t i = 0; i < diffusion.species(); ++i) {
      const Field D = diffusion.cells(i, n_);
      // Face couplings kappa_{j+1/2}, zero at the boundary faces.
      std::vector<double> kappa(n_ - 1);
      for (std::size_t j = 0; j + 1 < n_; ++j) kappa[j] = dt * harmonic_face(D[j], D[j + 1]) * inv_h2;
      Factor& fac = factors_[i];
      fac.lower.assign(n_, 0.0);
      fac.inv_pivot.assign(n_, 0.0);
      fac.upper.assign(n_, 0.0);
      double prev_upper_ratio = 0.0;
      for (std::size_t j = 0; j < n_; ++j) {
        const double left = j > 0 ? kappa[j - 1] : 0.0;
        const double right = j + 1 < n_ ? kappa[j] : 0.0;
        const double diag = 1.0 + left + right;
        // pivot_j = b_j - a_j c'_{j-1} with a_j = -kappa_{j-1}
        const double pivot = diag + left * prev_upper_ratio;
        fac.lower[j] = -left;
        fac.inv_pivot[j] = 1.0 / pivot;
        fac.upper[j] = j + 1 < n_ ? -right : 0.0;
        prev_upper_ratio = fac.upper[j] * fac.inv_pivot[j];
      }
    }
  }

  /// In-place solve for species i.
  void solve(std::size_t i, std::span<double> u) const {
    const Factor& fac = factors_[i];
    // forward sweep: d'_j = (d_j - a_j d'_{j-1}) / pivot_j
    u[0] *= fac.inv_pivot[0];
    for (std::size_t j = 1; j < n_; ++j) u[j] = (u[j] - fac.lower[j] * u[j - 1]) * fac.inv_pivot[j];
    // back substitution: x_j = d'_j - c'_j x_{j+1}
    for (std::size_t j = n_ - 1; j-- > 0;) u[j] -= fac.upper[j] * fac.inv_pivot[j] * u[j + 1];
  }

 private:
  struct Factor {
    std::vector<double> lower;
    std::vector<double> inv_pivot;
    std::vector<double> upper;
  };
  std::size_t n_ = 0;
  std::vector<Factor> factors_;
};

}  // namespace rdlab

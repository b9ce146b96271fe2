#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "rdlab/error.hpp"
#include "rdlab/grid/grid.hpp"
#include "rdlab/grid/norms.hpp"

namespace rdlab {

/// The four norms of the one-dimensional modified Gagliardo-Nirenberg inequality
/// ||f||_4^4 <= eps ||f||_{H1}^2 ||f log|f|||_{L1}^2 + c_eps ||f||_{L1}.
struct GnTerms {
  double lhs = 0.0;      // ||f||_4^4
  double h1_sq = 0.0;    // ||f||_{H1}^2
  double log_l1 = 0.0;   // ||f log|f|||_{L1}
  double l1 = 0.0;       // ||f||_{L1}
};

inline GnTerms gn_terms(std::span<const double> f, const Grid1D& grid) {
  Field a(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    detail::require(std::isfinite(f[j]), "field must be finite");
    a[j] = std::abs(f[j]);
  }
  GnTerms t;
  t.lhs = lp_power(a, 4.0, grid);
  t.h1_sq = h1_norm_squared(a, grid);
  t.log_l1 = llogl(a, grid);
  t.l1 = lp_norm(a, 1.0, grid);
  return t;
}

/// N = 2^k, the smallest power of two with 32 C_GN / (log N)^2 <= eps, and c_eps = 8 (2N)^3.
/// Both are kept in log2 since they overflow double precision for small eps.
struct GnCertificate {
  double eps = 0.0;
  double C_GN = 0.0;
  double log2_N = 0.0;
  double log2_c_eps = 0.0;

  double N() const { return std::exp2(log2_N); }
  double c_eps() const { return std::exp2(log2_c_eps); }
};

inline GnCertificate gn_certificate(double eps, double C_GN) {
  detail::require(eps > 0.0 && std::isfinite(eps), "eps must be positive");
  detail::require(C_GN >= 0.0 && std::isfinite(C_GN), "C_GN must be finite and non-negative");
  GnCertificate c;
  c.eps = eps;
  c.C_GN = C_GN;
  const double k = std::max(1.0, std::ceil(std::sqrt(32.0 * C_GN / eps) / std::numbers::ln2));
  c.log2_N = k;
  c.log2_c_eps = 3.0 * k + 6.0;
  return c;
}

struct GnResult {
  bool holds = false;
  double c_eps = 0.0;      // certified, possibly +inf
  double empirical_c = 0.0;  // smallest c making this field satisfy the inequality
  GnTerms terms;
};

inline GnResult gn_check(std::span<const double> f, const GnCertificate& cert, const Grid1D& grid) {
  GnResult r;
  r.terms = gn_terms(f, grid);
  r.c_eps = cert.c_eps();
  const double smooth = cert.eps * r.terms.h1_sq * r.terms.log_l1 * r.terms.log_l1;
  const double rest = r.terms.lhs - smooth;
  if (r.terms.l1 > 0.0) {
    r.empirical_c = std::max(0.0, rest / r.terms.l1);
    r.holds = r.empirical_c <= r.c_eps;
  } else {
    r.empirical_c = 0.0;
    r.holds = rest <= 0.0;
  }
  return r;
}

enum class GnFamily { GaussianBumps, Fourier, Constant };

/// Random test field: a mixture of 1-5 Gaussian bumps, a 16-mode cosine/sine sum, or a constant,
/// scaled so that max |f| is uniform in [0, max_amplitude].
inline Field random_gn_field(GnFamily family, const Grid1D& grid, std::mt19937_64& rng, double max_amplitude = 100.0) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double L = grid.length();
  Field f(grid.size(), 0.0);
  switch (family) {
    case GnFamily::GaussianBumps: {
      const int bumps = 1 + static_cast<int>(unit(rng) * 5.0);
      for (int b = 0; b < bumps; ++b) {
        const double c = unit(rng) * L;
        const double w = L * (0.01 + 0.29 * unit(rng));
        const double a = unit(rng);
        for (std::size_t j = 0; j < f.size(); ++j) {
          const double z = (grid.x(j) - c) / w;
          f[j] += a * std::exp(-0.5 * z * z);
        }
      }
      break;
    }
    case GnFamily::Fourier: {
      std::normal_distribution<double> normal(0.0, 1.0);
      for (int k = 0; k < 16; ++k) {
        const double a = normal(rng) / (1.0 + k);
        const double b = normal(rng) / (1.0 + k);
        for (std::size_t j = 0; j < f.size(); ++j) {
          const double phase = k * std::numbers::pi * grid.x(j) / L;
          f[j] += a * std::cos(phase) + b * std::sin(phase);
        }
      }
      break;
    }
    case GnFamily::Constant:
      std::fill(f.begin(), f.end(), 1.0);
      break;
  }
  double peak = 0.0;
  for (double v : f) peak = std::max(peak, std::abs(v));
  const double amplitude = unit(rng) * max_amplitude;
  if (peak > 0.0) {
    for (double& v : f) v *= amplitude / peak;
  }
  return f;
}

/// Empirical constant of ||f||_4^4 <= C ||f||_{H1}^2 ||f||_1^2: maximum ratio over random fields,
/// skipping fields whose denominator is negligible.
inline double estimate_gn_constant(const Grid1D& grid, std::size_t samples = 10000, std::uint64_t seed = 7) {
  std::mt19937_64 rng(seed);
  double best = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto family = static_cast<GnFamily>(s % 3);
    const Field f = random_gn_field(family, grid, rng);
    const GnTerms t = gn_terms(f, grid);
    const double denom = t.h1_sq * t.l1 * t.l1;
    if (!(denom > 1e-200) || t.l1 < 1e-12) continue;
    best = std::max(best, t.lhs / denom);
  }
  return best;
}

}  // namespace rdlab

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "rdlab/inequality_report.hpp"
#include "rdlab/model/assumptions.hpp"
#include "rdlab/model/reaction_system.hpp"
#include "rdlab/multi_index.hpp"

namespace rdlab {

enum class ThetaProvenance { ClosedForm, Searched };

inline std::string to_string(ThetaProvenance p) { return p == ThetaProvenance::ClosedForm ? "closed-form" : "searched"; }

/// Weights theta of the L^p energy, with the coercivity constant alpha_p of the diffusion
/// part and the fitted constant K_theta of the weighted intermediate-sum bound.
struct ThetaWeights {
  std::vector<double> theta;
  std::vector<double> diffusion;
  unsigned p = 2;
  double alpha_p = 0.0;
  double K_theta = 0.0;
  ThetaProvenance provenance = ThetaProvenance::ClosedForm;
  bool isc_verified = false;
};

/// M_ii = d_i theta_i^2, M_ij = (d_i + d_j)/2.
inline Eigen::MatrixXd coupling_matrix(std::span<const double> d, std::span<const double> theta) {
  const auto m = static_cast<Eigen::Index>(d.size());
  Eigen::MatrixXd M(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) M(i, j) = i == j ? d[i] * theta[i] * theta[i] : 0.5 * (d[i] + d[j]);
  }
  return M;
}

/// A_beta = C^{-1} M C^{-1} with C = diag(theta_i^{-2 beta_i - 1}).
inline Eigen::MatrixXd energy_form_matrix(std::span<const double> d, std::span<const double> theta,
                                          const std::vector<unsigned>& beta) {
  Eigen::MatrixXd A = coupling_matrix(d, theta);
  const auto m = A.rows();
  Eigen::VectorXd c(m);
  for (Eigen::Index i = 0; i < m; ++i) c(i) = std::pow(theta[i], 2.0 * beta[i] + 1.0);
  return c.asDiagonal() * A * c.asDiagonal();
}

inline double min_eigenvalue(const Eigen::MatrixXd& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

inline bool diagonally_dominant(std::span<const double> d, std::span<const double> theta) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (j != i) off += 0.5 * (d[i] + d[j]);
    }
    if (!(d[i] * theta[i] * theta[i] > off)) return false;
  }
  return true;
}

/// (4(p-1)/p^2) * min_beta lambda_min(A_beta) * min_beta (p-2 over beta) theta^{beta^2}, |beta| = p-2.
inline double coercivity_constant(std::span<const double> d, std::span<const double> theta, unsigned p) {
  const auto betas = multi_indices(d.size(), p - 2);
  double lambda = std::numeric_limits<double>::infinity();
  double weight = std::numeric_limits<double>::infinity();
  for (const auto& beta : betas) {
    lambda = std::min(lambda, min_eigenvalue(energy_form_matrix(d, theta, beta)));
    double w = multinomial(beta);
    for (std::size_t i = 0; i < beta.size(); ++i) w *= std::pow(theta[i], static_cast<double>(beta[i] * beta[i]));
    weight = std::min(weight, w);
  }
  return 4.0 * (p - 1.0) / (static_cast<double>(p) * p) * lambda * weight;
}

inline void validate(const ThetaWeights& w) {
  detail::require(w.theta.size() == w.diffusion.size(), "theta and diffusion sizes differ");
  for (double t : w.theta) detail::require(t > 0.0 && std::isfinite(t), "theta must be positive");
  detail::require(diagonally_dominant(w.diffusion, w.theta), "theta does not make the coupling matrix dominant");
  detail::require(w.alpha_p > 0.0, "coercivity constant must be positive");
}

inline ThetaWeights make_theta_weights(std::vector<double> d, std::vector<double> theta, unsigned p,
                                       ThetaProvenance provenance) {
  ThetaWeights w;
  w.alpha_p = coercivity_constant(d, theta, p);
  w.theta = std::move(theta);
  w.diffusion = std::move(d);
  w.p = p;
  w.provenance = provenance;
  validate(w);
  return w;
}

/// theta_i = max(1, sqrt((1 + margin) sum_{j != i} (d_i + d_j) / (2 d_i))).
inline ThetaWeights find_theta(std::span<const double> d, unsigned p, double margin = 0.1) {
  detail::require(p >= 2, "energy order p must be >= 2");
  for (double v : d) detail::require(v > 0.0 && std::isfinite(v), "diffusion constants must be positive");
  std::vector<double> theta(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (j != i) off += 0.5 * (d[i] + d[j]);
    }
    theta[i] = std::max(1.0, std::sqrt((1.0 + margin) * off / d[i]));
  }
  return make_theta_weights({d.begin(), d.end()}, std::move(theta), p, ThetaProvenance::ClosedForm);
}

/// sum_i theta_i^{2 beta_i + 1} f_i <= K (1 + sum u_i^r) for every |beta| = p - 1, probed on rays.
inline InequalityReport weighted_isc_report(const ReactionSystem& system, std::span<const double> theta, unsigned p,
                                            double r, const SamplerConfig& cfg) {
  const std::size_t m = system.size();
  InequalityReport rep;
  rep.name = "weighted-isc";
  std::size_t passing = 0;
  const auto betas = multi_indices(m, p - 1);
  for (const auto& beta : betas) {
    std::vector<double> coeff(m);
    for (std::size_t i = 0; i < m; ++i) coeff[i] = std::pow(theta[i], 2.0 * beta[i] + 1.0);
    const Polynomial combo = linear_combination(system.f, coeff);
    double exponent = 0.0;
    double K = 0.0;
    if (!combo.empty()) {
      auto value = [&](const std::vector<double>& u, double t) { return evaluate(combo, u, t); };
      auto reference = [r](const std::vector<double>& u) {
        double s = 1.0;
        for (double v : u) s += std::pow(v, r);
        return s;
      };
      const RayGrowth g = probe_ray_growth(m, cfg, value, reference);
      exponent = std::max(0.0, g.exponent);
      K = g.fitted_constant;
      rep.checked += g.samples;
    }
    rep.exponents.push_back(exponent);
    rep.fitted_constant = std::max(rep.fitted_constant, K);
    if (exponent <= r + cfg.slope_tol) ++passing;
  }
  rep.satisfied = betas.empty() ? 1.0 : static_cast<double>(passing) / static_cast<double>(betas.size());
  rep.holds = passing == betas.size();
  rep.violations = betas.size() - passing;
  rep.worst_slack = rep.exponents.empty() ? 0.0 : *std::max_element(rep.exponents.begin(), rep.exponents.end()) - r;
  return rep;
}

/// Verifies the weighted bound for `weights`; when it fails for closed-form weights, scales
/// low-indexed species by 10^{k (m - 1 - i)}, k = 1..6, and keeps the first passing choice.
inline InequalityReport verify_weighted_isc(const ReactionSystem& system, ThetaWeights& weights, double r,
                                            const SamplerConfig& cfg = {}) {
  InequalityReport rep = weighted_isc_report(system, weights.theta, weights.p, r, cfg);
  if (!rep.holds && weights.provenance == ThetaProvenance::ClosedForm && system.size() > 1) {
    const std::size_t m = system.size();
    for (int k = 1; k <= 6; ++k) {
      std::vector<double> theta = weights.theta;
      for (std::size_t i = 0; i + 1 < m; ++i) theta[i] *= std::pow(10.0, k * static_cast<double>(m - 1 - i));
      InequalityReport trial = weighted_isc_report(system, theta, weights.p, r, cfg);
      if (trial.holds) {
        weights = make_theta_weights(weights.diffusion, std::move(theta), weights.p, ThetaProvenance::Searched);
        rep = std::move(trial);
        rep.note = "closed-form theta failed; search factor 10^" + std::to_string(k);
        break;
      }
    }
  }
  weights.K_theta = rep.fitted_constant;
  weights.isc_verified = rep.holds;
  if (rep.note.empty()) rep.note = to_string(weights.provenance) + " theta";
  return rep;
}

}  // namespace rdlab

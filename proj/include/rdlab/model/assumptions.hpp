#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rdlab/model/reaction_system.hpp"
#include "rdlab/model/sampling.hpp"

namespace rdlab {

enum class Assumption { QuasiPositivity, MassControl, WeightedMassControl, Growth, IntermediateSum, Entropy };

inline std::string tag(Assumption a) {
  switch (a) {
    case Assumption::QuasiPositivity: return "A1";
    case Assumption::MassControl: return "A2";
    case Assumption::WeightedMassControl: return "A2-weighted";
    case Assumption::Growth: return "A3";
    case Assumption::IntermediateSum: return "A4";
    case Assumption::Entropy: return "E";
  }
  return "?";
}

inline Assumption assumption_from_tag(const std::string& s) {
  for (auto a : {Assumption::QuasiPositivity, Assumption::MassControl, Assumption::WeightedMassControl,
                 Assumption::Growth, Assumption::IntermediateSum, Assumption::Entropy}) {
    if (tag(a) == s) return a;
  }
  throw ConfigError("unknown assumption tag '" + s + "'");
}

enum class Verdict { HoldsSymbolically, HoldsOnSamples, Violated };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::HoldsSymbolically: return "holds-symbolically";
    case Verdict::HoldsOnSamples: return "holds-on-samples";
    case Verdict::Violated: return "violated";
  }
  return "?";
}

/// A point where `lhs <= rhs` fails. For growth-type checks (A3, A4) lhs is the measured
/// exponent along the ray through `u` and rhs the admissible one.
struct Witness {
  std::vector<double> u;
  double t = 0.0;
  std::size_t row = 0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct AssumptionReport {
  Assumption assumption = Assumption::QuasiPositivity;
  Verdict verdict = Verdict::HoldsSymbolically;
  std::size_t samples = 0;
  double max_slack = -std::numeric_limits<double>::infinity();
  std::optional<Witness> witness;
  std::vector<double> exponents;  // per row, growth-type checks only
  std::vector<double> constants;  // per row fitted constants, growth-type checks only
  std::string note;

  bool violated() const { return verdict == Verdict::Violated; }
};

namespace detail {

/// Streams candidate points through `check`; lattice points come first so that witnesses are
/// reported at the simplest violating point.
struct PointScan {
  AssumptionReport& report;

  template <class Eval>
  void visit(const std::vector<double>& u, double t, std::size_t row, Eval&& eval) {
    const auto [lhs, rhs] = eval(u, t);
    ++report.samples;
    report.max_slack = std::max(report.max_slack, lhs - rhs);
    if (!report.witness && exceeds_tolerance(lhs, rhs)) report.witness = Witness{u, t, row, lhs, rhs};
  }

  void finish() {
    report.verdict = report.witness ? Verdict::Violated : Verdict::HoldsOnSamples;
  }
};

inline std::vector<double> random_box_point(std::mt19937_64& rng, std::size_t m, const SamplerConfig& cfg,
                                            double zero_probability) {
  std::bernoulli_distribution zero(zero_probability);
  std::vector<double> u(m);
  for (auto& v : u) v = zero(rng) ? 0.0 : log_uniform(rng, cfg.delta_floor, cfg.u_max);
  return u;
}

}  // namespace detail

/// Sufficient structural condition: every negative monomial of f_i contains u_i.
inline bool quasi_positive_symbolically(const ReactionSystem& system, std::size_t i) {
  for (const auto& mono : canonicalize(system.f[i])) {
    if (mono.coefficient < 0.0 && mono.exponents[i] == 0) return false;
  }
  return true;
}

inline bool quasi_positive_symbolically(const ReactionSystem& system) {
  for (std::size_t i = 0; i < system.size(); ++i) {
    if (!quasi_positive_symbolically(system, i)) return false;
  }
  return true;
}

/// (A1): f_i(u) >= 0 whenever u >= 0 and u_i = 0.
inline AssumptionReport check_quasi_positivity(const ReactionSystem& system, const SamplerConfig& cfg = {}) {
  AssumptionReport report;
  report.assumption = Assumption::QuasiPositivity;
  if (quasi_positive_symbolically(system)) {
    report.verdict = Verdict::HoldsSymbolically;
    report.note = "every negative monomial of f_i contains u_i";
    return report;
  }
  const std::size_t m = system.size();
  detail::PointScan scan{report};
  auto eval_row = [&](std::size_t i) {
    return [&system, i](const std::vector<double>& u, double t) {
      return std::pair{0.0, evaluate(system.f[i], u, t)};
    };
  };
  std::mt19937_64 rng(cfg.seed);
  for (std::size_t i = 0; i < m; ++i) {
    if (quasi_positive_symbolically(system, i)) continue;
    for (double t : cfg.times) {
      for (auto u : detail::unit_lattice(m)) {
        if (u[i] != 0.0) continue;
        scan.visit(u, t, i, eval_row(i));
      }
      for (std::size_t k = 0; k < cfg.samples; ++k) {
        auto u = detail::random_box_point(rng, m, cfg, 0.2);
        u[i] = 0.0;
        scan.visit(u, t, i, eval_row(i));
      }
    }
  }
  scan.finish();
  return report;
}

/// (A2) / weighted (A2): sum_i alpha_i f_i <= k0 + k1 sum_i u_i.
inline AssumptionReport check_mass_control(const ReactionSystem& system, const std::vector<double>& weights,
                                           const SamplerConfig& cfg = {},
                                           Assumption kind = Assumption::WeightedMassControl) {
  if (!system.mass_control) throw ConfigError("mass control constants (k0, k1) are not declared");
  detail::require_config(weights.size() == system.size(), "mass weights must have one entry per species");
  const std::size_t m = system.size();
  const auto [k0, k1] = *system.mass_control;
  AssumptionReport report;
  report.assumption = kind;

  Polynomial lhs_poly = linear_combination(system.f, weights);
  Polynomial gap = lhs_poly;
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<unsigned> e(m, 0u);
    e[j] = 1;
    gap.push_back(Monomial{-k1, 0.0, e});
  }
  gap.push_back(Monomial{-k0, 0.0, std::vector<unsigned>(m, 0u)});
  gap = canonicalize(std::move(gap));
  if (std::all_of(gap.begin(), gap.end(), [](const Monomial& mono) { return mono.coefficient <= 0.0; })) {
    report.verdict = Verdict::HoldsSymbolically;
    report.note = gap.empty() ? "weighted sum minus bound is identically zero"
                              : "weighted sum minus bound has only non-positive coefficients";
    return report;
  }

  auto eval = [&](const std::vector<double>& u, double t) {
    double total = 0.0;
    for (double v : u) total += v;
    return std::pair{evaluate(lhs_poly, u, t), k0 + k1 * total};
  };
  detail::PointScan scan{report};
  std::mt19937_64 rng(cfg.seed);
  const auto dirs = detail::ray_directions(m, cfg.rays, rng);
  const auto s = detail::geometric_points(cfg.s_min, cfg.s_max, cfg.ray_points);
  for (double t : cfg.times) {
    for (const auto& u : detail::unit_lattice(m)) scan.visit(u, t, 0, eval);
    for (const auto& e : dirs) {
      for (double sk : s) {
        std::vector<double> u(m);
        for (std::size_t j = 0; j < m; ++j) u[j] = sk * e[j];
        scan.visit(u, t, 0, eval);
      }
    }
    for (std::size_t k = 0; k < cfg.samples; ++k) scan.visit(detail::random_box_point(rng, m, cfg, 0.1), t, 0, eval);
  }
  scan.finish();
  return report;
}

/// Convenience for the unweighted form.
inline AssumptionReport check_mass_control(const ReactionSystem& system, const SamplerConfig& cfg = {}) {
  return check_mass_control(system, std::vector<double>(system.size(), 1.0), cfg, Assumption::MassControl);
}

namespace detail {

/// Growth-type verdict for a family of rows, each compared against C (1 + sum u)^r.
inline AssumptionReport check_row_growth(Assumption kind, const std::vector<Polynomial>& rows, std::size_t m,
                                         double r, const SamplerConfig& cfg, bool positive_part_only) {
  AssumptionReport report;
  report.assumption = kind;
  bool all_symbolic = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Polynomial& row = rows[i];
    const bool nonpositive = positive_part_only && std::all_of(row.begin(), row.end(), [](const Monomial& mono) {
                               return mono.coefficient <= 0.0;
                             });
    if (row.empty() || nonpositive || degree(row) <= r) {
      // Degree bounded by r: (1 + sum u)^r dominates every monomial, positive part or not.
      report.exponents.push_back(row.empty() || nonpositive ? 0.0 : static_cast<double>(degree(row)));
      double c = 0.0;
      if (!row.empty() && !nonpositive) {
        // |c e^{lambda t} u^nu| <= |c| e^{lambda t} (1 + sum u)^{|nu|} <= |c| e^{lambda t} (1 + sum u)^r
        for (const auto& mono : row) {
          double tmax = 0.0;
          for (double t : cfg.times) tmax = std::max(tmax, std::exp(mono.time_rate * t));
          c += std::abs(mono.coefficient) * tmax;
        }
      }
      report.constants.push_back(c);
      continue;
    }
    all_symbolic = false;
    auto value = [&](const std::vector<double>& u, double t) {
      const double v = evaluate(row, u, t);
      return positive_part_only ? v : std::abs(v);
    };
    auto reference = [r](const std::vector<double>& u) {
      double total = 1.0;
      for (double v : u) total += v;
      return std::pow(total, r);
    };
    const RayGrowth g = probe_ray_growth(m, cfg, value, reference);
    report.samples += g.samples;
    report.exponents.push_back(g.exponent);
    report.constants.push_back(g.fitted_constant);
    report.max_slack = std::max(report.max_slack, g.exponent - r);
    if (g.exponent > r + cfg.slope_tol && !report.witness) {
      report.witness = Witness{g.far_point, g.t, i, g.exponent, r + cfg.slope_tol};
    }
  }
  if (report.witness) {
    report.verdict = Verdict::Violated;
  } else {
    report.verdict = all_symbolic ? Verdict::HoldsSymbolically : Verdict::HoldsOnSamples;
  }
  return report;
}

}  // namespace detail

/// (A4): every triangular partial sum grows at most like (1 + sum u)^r.
inline AssumptionReport check_intermediate_sum(const ReactionSystem& system, const SamplerConfig& cfg = {}) {
  if (!system.isc) throw ConfigError("intermediate-sum matrix A and order r are not declared");
  const std::size_t m = system.size();
  std::vector<Polynomial> rows;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> a(m, 0.0);
    for (std::size_t j = 0; j <= i; ++j) a[j] = system.isc->A[i][j];
    rows.push_back(linear_combination(system.f, a));
  }
  auto report = detail::check_row_growth(Assumption::IntermediateSum, rows, m, system.isc->r, cfg, true);
  report.note = "row exponents of (sum_j a_ij f_j)_+ along rays";
  return report;
}

/// (A3) informational: |f_i| <= C(1 + |u|^3) up to the slope tolerance.
inline AssumptionReport check_growth(const ReactionSystem& system, const SamplerConfig& cfg = {}, double order = 3.0) {
  std::vector<Polynomial> rows;
  for (const auto& p : system.f) rows.push_back(canonicalize(p));
  auto report = detail::check_row_growth(Assumption::Growth, rows, system.size(), order, cfg, false);
  report.note = "max total degree " + std::to_string(growth_degree(system).overall);
  return report;
}

inline double entropy_lhs(const ReactionSystem& system, std::span<const double> u, double t,
                          std::span<const double> mu) {
  double s = 0.0;
  for (std::size_t i = 0; i < system.size(); ++i) s += evaluate(system.f[i], u, t) * (std::log(u[i]) + mu[i]);
  return s;
}

inline double entropy_rhs(std::span<const double> u, const EntropyStructure& e) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * (std::log(u[i]) + e.mu[i] - 1.0);
  return e.k2 * s + e.k3;
}

/// Reversible network with k_f = k_b per reaction, mu = 0 and k2 = 0: each reaction
/// contributes -k (x - y)(log x - log y) <= 0 with x = u^{nu-}, y = u^{nu+}.
inline bool entropy_structural(const ReactionSystem& system) {
  if (!system.network || !system.entropy) return false;
  const auto& e = *system.entropy;
  if (e.k2 != 0.0) return false;
  if (!std::all_of(e.mu.begin(), e.mu.end(), [](double v) { return v == 0.0; })) return false;
  return system.network->detailed_balance_unit() && system.is_autonomous();
}

/// (E): log-uniform sampling of both sides on [delta_floor, u_max]^m plus equilibrium points.
inline AssumptionReport check_entropy(const ReactionSystem& system, const SamplerConfig& cfg = {}) {
  if (!system.entropy) throw ConfigError("entropy structure (mu, k2, k3) is not declared");
  const auto& es = *system.entropy;
  const std::size_t m = system.size();
  AssumptionReport report;
  report.assumption = Assumption::Entropy;
  detail::PointScan scan{report};
  auto eval = [&](const std::vector<double>& u, double t) {
    return std::pair{entropy_lhs(system, u, t, es.mu), entropy_rhs(u, es)};
  };
  std::mt19937_64 rng(cfg.seed);
  for (double t : cfg.times) {
    // Equilibria of unit-rate reversible networks, and the minimizers u_i = e^{-mu_i}.
    scan.visit(std::vector<double>(m, 1.0), t, 0, eval);
    std::vector<double> minimizer(m);
    for (std::size_t i = 0; i < m; ++i) minimizer[i] = std::exp(-es.mu[i]);
    scan.visit(minimizer, t, 0, eval);
    for (double s : detail::geometric_points(cfg.delta_floor, cfg.u_max, 17)) {
      scan.visit(std::vector<double>(m, s), t, 0, eval);
    }
    for (std::size_t k = 0; k < cfg.samples; ++k) scan.visit(detail::random_box_point(rng, m, cfg, 0.0), t, 0, eval);
  }
  scan.finish();
  if (!report.violated() && entropy_structural(system)) {
    report.verdict = Verdict::HoldsSymbolically;
    report.note = "reversible mass-action network with k_f = k_b, mu = 0";
  }
  return report;
}

}  // namespace rdlab

#pragma once

#include <cmath>
#include <concepts>
#include <span>
#include <vector>

#include "rdlab/model/assumptions.hpp"
#include "rdlab/model/reaction_system.hpp"

namespace rdlab {

/// Anything the time stepper can integrate: pointwise f(u, t) and, for the Patankar step,
/// a production-destruction split f_i = P_i - u_i Q_i with P, Q >= 0.
template <class N>
concept Nonlinearity = requires(const N& n, std::span<const double> u, double t, std::span<double> a,
                                std::span<double> b) {
  { n.species() } -> std::convertible_to<std::size_t>;
  { n.splittable() } -> std::convertible_to<bool>;
  n.evaluate(u, t, a);
  n.split(u, t, a, b);
};

struct ProductionDestruction {
  std::vector<double> P;
  std::vector<double> Q;
};

/// Polynomial reaction terms of a ReactionSystem, with the sign split precomputed.
class PolynomialNonlinearity {
 public:
  explicit PolynomialNonlinearity(const ReactionSystem& system) : f_(system.f) {
    for (auto& p : f_) p = canonicalize(std::move(p));
    splittable_ = quasi_positive_symbolically(system);
    if (!splittable_) return;
    production_.resize(f_.size());
    destruction_.resize(f_.size());
    for (std::size_t i = 0; i < f_.size(); ++i) {
      for (const auto& mono : f_[i]) {
        if (mono.coefficient > 0.0) {
          production_[i].push_back(mono);
        } else {
          Monomial q = mono;
          q.coefficient = -mono.coefficient;
          q.exponents[i] -= 1;
          destruction_[i].push_back(std::move(q));
        }
      }
    }
  }

  std::size_t species() const { return f_.size(); }
  bool splittable() const { return splittable_; }

  void evaluate(std::span<const double> u, double t, std::span<double> out) const {
    for (std::size_t i = 0; i < f_.size(); ++i) out[i] = rdlab::evaluate(f_[i], u, t);
  }

  void split(std::span<const double> u, double t, std::span<double> P, std::span<double> Q) const {
    if (!splittable_) {
      throw Unsupported("reaction terms are not symbolically quasi-positive; the Patankar step is unavailable");
    }
    for (std::size_t i = 0; i < f_.size(); ++i) {
      P[i] = rdlab::evaluate(production_[i], u, t);
      Q[i] = rdlab::evaluate(destruction_[i], u, t);
    }
  }

  const std::vector<Polynomial>& production() const { return production_; }
  const std::vector<Polynomial>& destruction() const { return destruction_; }

 private:
  std::vector<Polynomial> f_;
  std::vector<Polynomial> production_;
  std::vector<Polynomial> destruction_;
  bool splittable_ = false;
};

/// f^eps_i = f_i / (1 + eps sum_j |f_j|): bounded by 1/eps, converges to f as eps -> 0.
template <Nonlinearity Base>
class Truncated {
 public:
  Truncated(Base base, double eps) : base_(std::move(base)), eps_(eps) {
    detail::require(eps > 0.0 && std::isfinite(eps), "truncation parameter must be positive");
  }

  std::size_t species() const { return base_.species(); }
  bool splittable() const { return base_.splittable(); }
  double eps() const { return eps_; }

  void evaluate(std::span<const double> u, double t, std::span<double> out) const {
    base_.evaluate(u, t, out);
    double total = 0.0;
    for (std::size_t i = 0; i < species(); ++i) total += std::abs(out[i]);
    const double scale = 1.0 / (1.0 + eps_ * total);
    for (std::size_t i = 0; i < species(); ++i) out[i] *= scale;
  }

  void split(std::span<const double> u, double t, std::span<double> P, std::span<double> Q) const {
    base_.split(u, t, P, Q);
    double total = 0.0;
    for (std::size_t i = 0; i < species(); ++i) total += std::abs(P[i] - u[i] * Q[i]);
    const double scale = 1.0 / (1.0 + eps_ * total);
    for (std::size_t i = 0; i < species(); ++i) {
      P[i] *= scale;
      Q[i] *= scale;
    }
  }

 private:
  Base base_;
  double eps_;
};

inline Truncated<PolynomialNonlinearity> truncate(const ReactionSystem& system, double eps) {
  return Truncated<PolynomialNonlinearity>(PolynomialNonlinearity(system), eps);
}

inline ProductionDestruction split_production_destruction(const ReactionSystem& system, std::span<const double> u,
                                                          double t) {
  const PolynomialNonlinearity nl(system);
  ProductionDestruction pd{std::vector<double>(system.size()), std::vector<double>(system.size())};
  nl.split(u, t, pd.P, pd.Q);
  return pd;
}

}  // namespace rdlab

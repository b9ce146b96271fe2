#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "rdlab/error.hpp"

namespace rdlab {

/// c * exp(time_rate * t) * prod_j u_j^exponents[j]
struct Monomial {
  double coefficient = 0.0;
  double time_rate = 0.0;
  std::vector<unsigned> exponents;

  unsigned degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0u); }

  double evaluate(std::span<const double> u, double t) const {
    double value = coefficient;
    if (time_rate != 0.0) value *= std::exp(time_rate * t);
    for (std::size_t j = 0; j < exponents.size(); ++j) {
      for (unsigned k = 0; k < exponents[j]; ++k) value *= u[j];
    }
    return value;
  }

  bool same_term(const Monomial& other) const {
    return time_rate == other.time_rate && exponents == other.exponents;
  }
};

/// Sum of monomials over a fixed number of variables.
using Polynomial = std::vector<Monomial>;

inline Monomial make_monomial(double coefficient, std::vector<unsigned> exponents, double time_rate = 0.0) {
  for (double c : {coefficient, time_rate}) {
    detail::require(std::isfinite(c), "monomial coefficient and time rate must be finite");
  }
  return Monomial{coefficient, time_rate, std::move(exponents)};
}

inline double evaluate(const Polynomial& p, std::span<const double> u, double t) {
  double sum = 0.0;
  for (const auto& mono : p) sum += mono.evaluate(u, t);
  return sum;
}

/// Merges like terms, drops zero coefficients and sorts terms by (degree, exponents, rate).
inline Polynomial canonicalize(Polynomial p) {
  std::sort(p.begin(), p.end(), [](const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    if (a.exponents != b.exponents) return a.exponents < b.exponents;
    return a.time_rate < b.time_rate;
  });
  Polynomial merged;
  for (auto& mono : p) {
    if (!merged.empty() && merged.back().same_term(mono)) {
      merged.back().coefficient += mono.coefficient;
    } else {
      merged.push_back(std::move(mono));
    }
  }
  std::erase_if(merged, [](const Monomial& m) { return m.coefficient == 0.0; });
  return merged;
}

inline Polynomial scaled(Polynomial p, double factor) {
  for (auto& mono : p) mono.coefficient *= factor;
  return p;
}

inline Polynomial sum(const Polynomial& a, const Polynomial& b) {
  Polynomial out = a;
  out.insert(out.end(), b.begin(), b.end());
  return canonicalize(std::move(out));
}

/// sum_i weights[i] * polys[i], canonicalized.
inline Polynomial linear_combination(std::span<const Polynomial> polys, std::span<const double> weights) {
  Polynomial out;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (weights[i] == 0.0) continue;
    for (const auto& mono : polys[i]) {
      out.push_back(mono);
      out.back().coefficient *= weights[i];
    }
  }
  return canonicalize(std::move(out));
}

inline Polynomial derivative(const Polynomial& p, std::size_t variable) {
  Polynomial out;
  for (const auto& mono : p) {
    if (mono.exponents[variable] == 0) continue;
    Monomial d = mono;
    d.coefficient *= mono.exponents[variable];
    d.exponents[variable] -= 1;
    out.push_back(std::move(d));
  }
  return canonicalize(std::move(out));
}

inline unsigned degree(const Polynomial& p) {
  unsigned deg = 0;
  for (const auto& mono : p) deg = std::max(deg, mono.degree());
  return deg;
}

inline bool is_autonomous(const Polynomial& p) {
  return std::all_of(p.begin(), p.end(), [](const Monomial& m) { return m.time_rate == 0.0; });
}

/// Zero polynomial after merging like terms (exact cancellation of coefficients).
inline bool is_zero(const Polynomial& p) { return canonicalize(p).empty(); }

/// Largest |coefficient| that survives canonicalization; useful for approximate-zero checks.
inline double max_abs_coefficient(const Polynomial& p) {
  double m = 0.0;
  for (const auto& mono : p) m = std::max(m, std::abs(mono.coefficient));
  return m;
}

/// Pads every monomial with zero exponents up to `variables` variables.
inline Polynomial extend_variables(Polynomial p, std::size_t variables) {
  for (auto& mono : p) mono.exponents.resize(variables, 0u);
  return p;
}

}  // namespace rdlab

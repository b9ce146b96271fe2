#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "rdlab/error.hpp"

namespace rdlab {

using Field = std::vector<double>;

/// Uniform cell-centered mesh on (0, L).
class Grid1D {
 public:
  Grid1D() = default;
  Grid1D(double length, std::size_t cells) : length_(length), cells_(cells) {
    detail::require(std::isfinite(length) && length > 0.0, "grid length must be positive");
    detail::require(cells >= 4, "grid needs at least 4 cells");
  }

  double length() const { return length_; }
  std::size_t size() const { return cells_; }
  double h() const { return length_ / static_cast<double>(cells_); }
  double x(std::size_t j) const { return (static_cast<double>(j) + 0.5) * h(); }

  Field centers() const {
    Field xs(cells_);
    for (std::size_t j = 0; j < cells_; ++j) xs[j] = x(j);
    return xs;
  }

  bool operator==(const Grid1D&) const = default;

 private:
  double length_ = 1.0;
  std::size_t cells_ = 4;
};

/// Cell averages of all species at one time.
struct GridState {
  Grid1D grid;
  double t = 0.0;
  std::vector<Field> u;  // u[species][cell]

  std::size_t species() const { return u.size(); }

  void validate() const {
    for (const auto& field : u) {
      detail::require(field.size() == grid.size(), "state field size does not match grid");
      for (double value : field) detail::require(std::isfinite(value), "state contains non-finite values");
    }
  }

  double min_value() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& field : u) m = std::min(m, *std::min_element(field.begin(), field.end()));
    return m;
  }

  /// Values of every species at cell j.
  std::vector<double> cell(std::size_t j) const {
    std::vector<double> values(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) values[i] = u[i][j];
    return values;
  }
};

/// Per-species diffusion: a constant d_i or one coefficient per cell.
class DiffusionField {
 public:
  DiffusionField() = default;

  static DiffusionField constant(std::vector<double> d) {
    DiffusionField field;
    for (double value : d) field.values_.push_back({value});
    field.validate();
    return field;
  }

  /// Each entry is either a single value (constant) or one value per cell.
  static DiffusionField per_cell(std::vector<Field> values) {
    DiffusionField field;
    field.values_ = std::move(values);
    field.validate();
    return field;
  }

  std::size_t species() const { return values_.size(); }

  bool is_constant() const {
    return std::all_of(values_.begin(), values_.end(), [](const Field& f) { return f.size() == 1; });
  }

  bool is_constant(std::size_t i) const { return values_.at(i).size() == 1; }

  double constant_value(std::size_t i) const {
    if (!is_constant(i)) throw Unsupported("species diffusion is not constant");
    return values_[i][0];
  }

  /// Coefficients for species i expanded to n cells.
  Field cells(std::size_t i, std::size_t n) const {
    const Field& v = values_.at(i);
    if (v.size() == 1) return Field(n, v[0]);
    if (v.size() != n) throw ConfigError("per-cell diffusion has " + std::to_string(v.size()) +
                                         " values but grid has " + std::to_string(n) + " cells");
    return v;
  }

  const Field& raw(std::size_t i) const { return values_.at(i); }

  double species_min(std::size_t i) const { return *std::min_element(values_.at(i).begin(), values_[i].end()); }
  double species_max(std::size_t i) const { return *std::max_element(values_.at(i).begin(), values_[i].end()); }

  /// Certified ellipticity bound: minimum over species and cells.
  double lambda() const {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < values_.size(); ++i) m = std::min(m, species_min(i));
    return m;
  }

  /// Per-species minimum, used wherever a constant representative is needed.
  std::vector<double> species_minima() const {
    std::vector<double> out(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) out[i] = species_min(i);
    return out;
  }

 private:
  void validate() const {
    for (const auto& v : values_) {
      if (v.empty()) throw ConfigError("diffusion entry is empty");
      for (double d : v) {
        if (!std::isfinite(d) || d <= 0.0) throw ConfigError("diffusion coefficients must be finite and positive");
      }
    }
  }

  std::vector<Field> values_;
};

}  // namespace rdlab

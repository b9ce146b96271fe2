#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rdlab/error.hpp"
#include "rdlab/grid/grid.hpp"

namespace rdlab {

struct DiagnosticsRow {
  double t = 0.0;
  std::vector<double> mass;
  std::vector<double> supnorm;
  std::vector<double> l2;
  double entropy = 0.0;
  double e2 = 0.0;
  std::vector<double> energies;  // one per configured extra p
  double dual_residual = 0.0;
  double min_value = 0.0;

  double max_supnorm() const {
    double s = 0.0;
    for (double v : supnorm) s = std::max(s, v);
    return s;
  }
};

struct Trajectory {
  std::vector<GridState> snapshots;
  std::vector<DiagnosticsRow> diagnostics;

  void append(GridState state) {
    state.validate();
    if (!snapshots.empty() && !(state.t > snapshots.back().t)) {
      throw InvalidInput("snapshot times must be strictly increasing");
    }
    snapshots.push_back(std::move(state));
  }

  std::vector<double> times() const {
    std::vector<double> t;
    t.reserve(snapshots.size());
    for (const auto& s : snapshots) t.push_back(s.t);
    return t;
  }

  std::vector<double> supnorm_series() const {
    std::vector<double> s;
    s.reserve(diagnostics.size());
    for (const auto& row : diagnostics) s.push_back(row.max_supnorm());
    return s;
  }
};

/// v = int_0^t sum d_i u_i ds, b = sum u_i / sum d_i u_i, G = sum u_{i,0} + int_0^t g ds,
/// residual = max_j |sum u_i - Delta_h v - G|.
struct DualDiagnostics {
  Field v;
  Field b;
  Field G;
  double residual = 0.0;
  bool g_exact = true;  // false when sum f_i is not a known function of t alone
  double b_lower = 0.0;
  double b_upper = 0.0;
  double b_min_observed = std::numeric_limits<double>::infinity();  // over every recorded time
  double b_max_observed = -std::numeric_limits<double>::infinity();
};

enum class Termination { Completed, BlowUp };

inline std::string to_string(Termination t) { return t == Termination::Completed ? "completed" : "blow-up"; }

struct BlowUpDetected {
  double t = 0.0;
  double supnorm = 0.0;
  bool non_finite = false;
};

struct RunResult {
  Trajectory trajectory;
  Termination termination = Termination::Completed;
  std::optional<BlowUpDetected> blowup;
  double min_value = 0.0;  // over all cells, species and steps
  std::size_t steps = 0;
  std::optional<DualDiagnostics> dual;  // final duality diagnostics when collected

  bool completed() const { return termination == Termination::Completed; }
};

}  // namespace rdlab

#pragma once

#include <string>
#include <vector>

namespace rdlab {

/// Outcome of monitoring an inequality over a trajectory or a family of sampled terms.
struct InequalityReport {
  std::string name;
  bool holds = true;
  double satisfied = 1.0;       // fraction of checked points where the inequality held
  double fitted_constant = 0.0;  // smallest constant making it hold everywhere checked
  double worst_t = 0.0;
  double worst_slack = 0.0;
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::vector<double> exponents;  // growth-type monitors: measured exponent per term
  std::string note;
};

}  // namespace rdlab

#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "rdlab/grid/grid.hpp"

namespace rdlab {

namespace detail {
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace detail

/// Columnar snapshot: "# t=<t> L=<L> n=<n> m=<m>" then one row "x u_1 ... u_m" per cell.
inline void write_snapshot(std::ostream& os, const GridState& state) {
  os << "# t=" << detail::format_double(state.t) << " L=" << detail::format_double(state.grid.length())
     << " n=" << state.grid.size() << " m=" << state.species() << '\n';
  for (std::size_t j = 0; j < state.grid.size(); ++j) {
    os << detail::format_double(state.grid.x(j));
    for (const auto& field : state.u) os << ' ' << detail::format_double(field[j]);
    os << '\n';
  }
}

inline GridState read_snapshot(std::istream& is) {
  std::string header;
  if (!std::getline(is, header) || header.rfind("# ", 0) != 0) throw InvalidInput("snapshot header missing");
  double t = 0.0, length = 0.0;
  std::size_t n = 0, m = 0;
  if (std::sscanf(header.c_str(), "# t=%lf L=%lf n=%zu m=%zu", &t, &length, &n, &m) != 4) {
    throw InvalidInput("malformed snapshot header: " + header);
  }
  GridState state{Grid1D(length, n), t, std::vector<Field>(m, Field(n))};
  for (std::size_t j = 0; j < n; ++j) {
    double x = 0.0;
    if (!(is >> x)) throw InvalidInput("snapshot truncated at cell " + std::to_string(j));
    for (std::size_t i = 0; i < m; ++i) {
      if (!(is >> state.u[i][j])) throw InvalidInput("snapshot truncated at cell " + std::to_string(j));
    }
  }
  return state;
}

}  // namespace rdlab

#pragma once

#include <cstddef>
#include <vector>

namespace rdlab {

/// All beta in Z_+^m with |beta| = total, in lexicographically decreasing order.
inline std::vector<std::vector<unsigned>> multi_indices(std::size_t m, unsigned total) {
  std::vector<std::vector<unsigned>> out;
  if (m == 0) return out;
  std::vector<unsigned> beta(m, 0);
  auto fill = [&](auto&& self, std::size_t pos, unsigned remaining) -> void {
    if (pos + 1 == m) {
      beta[pos] = remaining;
      out.push_back(beta);
      return;
    }
    for (unsigned k = remaining + 1; k-- > 0;) {
      beta[pos] = k;
      self(self, pos + 1, remaining - k);
    }
  };
  fill(fill, 0, total);
  return out;
}

/// p! / prod beta_i!
inline double multinomial(const std::vector<unsigned>& beta) {
  double value = 1.0;
  unsigned n = 0;
  for (unsigned b : beta) {
    for (unsigned k = 1; k <= b; ++k) {
      ++n;
      value *= static_cast<double>(n) / static_cast<double>(k);
    }
  }
  return value;
}

}  // namespace rdlab

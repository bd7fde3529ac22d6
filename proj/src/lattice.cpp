#include "ndirac/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace ndirac {

std::vector<std::int64_t> shell_counts(int n, const std::vector<int>& twice_shift, std::int64_t max_key) {
  if (static_cast<int>(twice_shift.size()) != n) throw std::invalid_argument("shell_counts: shift size");
  const std::size_t len = static_cast<std::size_t>(max_key) + 1;
  std::vector<std::int64_t> acc(len, 0);
  acc[0] = 1;
  for (int axis = 0; axis < n; ++axis) {
    const int s = twice_shift[axis];
    if (s != 0 && s != 1) throw std::invalid_argument("shell_counts: shift must be 0 or 1/2");
    std::vector<std::int64_t> one(len, 0);
    // values (2k + s)^2 for k in Z
    const auto kmax = static_cast<std::int64_t>(std::sqrt(static_cast<double>(max_key))) / 2 + 2;
    for (std::int64_t k = -kmax; k <= kmax; ++k) {
      const std::int64_t v = (2 * k + s) * (2 * k + s);
      if (v <= max_key) one[static_cast<std::size_t>(v)] += 1;
    }
    std::vector<std::int64_t> next(len, 0);
    for (std::size_t a = 0; a < len; ++a) {
      if (acc[a] == 0) continue;
      for (std::size_t b = 0; a + b < len; ++b)
        if (one[b]) next[a + b] += acc[a] * one[b];
    }
    acc.swap(next);
  }
  return acc;
}

std::vector<std::vector<int>> lattice_ball(int n, double radius_sq) {
  const int r = static_cast<int>(std::floor(std::sqrt(radius_sq)));
  std::vector<std::vector<int>> out;
  std::vector<int> k(static_cast<std::size_t>(n), -r);
  while (true) {
    double s = 0;
    for (int v : k) s += static_cast<double>(v) * v;
    if (s <= radius_sq) out.push_back(k);
    int i = n - 1;
    while (i >= 0 && k[static_cast<std::size_t>(i)] == r) {
      k[static_cast<std::size_t>(i)] = -r;
      --i;
    }
    if (i < 0) break;
    ++k[static_cast<std::size_t>(i)];
  }
  return out;
}

}  // namespace ndirac

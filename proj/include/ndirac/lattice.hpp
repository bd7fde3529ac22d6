#pragma once

#include <cstdint>
#include <vector>

namespace ndirac {

// Number of points xi in Z^n + shift (shift_i in {0, 1/2}, given as twice_shift_i in
// {0, 1}) with 4|xi|^2 == key, for 0 <= key <= max_key.
std::vector<std::int64_t> shell_counts(int n, const std::vector<int>& twice_shift, std::int64_t max_key);

// All integer points with |k|^2 <= radius_sq, in lexicographic order.
std::vector<std::vector<int>> lattice_ball(int n, double radius_sq);

}  // namespace ndirac

#include "ndirac/graft.hpp"

#include <cmath>
#include <numbers>

#include "ndirac/errors.hpp"

namespace ndirac {

double cutoff_eta(double r, double dc) {
  if (r <= dc) return 1.0;
  if (r >= 2.0 * dc) return 0.0;
  const double s = (r - dc) / dc;
  return 1.0 - s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
}

double cutoff_eta_prime(double r, double dc) {
  if (r <= dc || r >= 2.0 * dc) return 0.0;
  const double s = (r - dc) / dc;
  return -30.0 * s * s * (1.0 - s) * (1.0 - s) / dc;
}

Vec cell_center(int n) { return Vec::Constant(n, std::numbers::pi); }

GridSpinor graft_grid_values(const Torus& t, double dc, const Bubble& b) {
  if (!(b.eps > 0) || b.eps >= dc) throw ContractViolation("graft: eps must satisfy 0 < eps < cutoff radius");
  if (2.0 * dc >= std::numbers::pi) throw ContractViolation("graft: support radius 2 dc must stay inside the cell");
  const int n = t.n();
  const int G = t.spec().grid_points_per_axis;
  GridSpinor g = GridSpinor::Zero(t.grid_size(), t.dim());
  Vec x(n);
  for (int idx = 0; idx < t.grid_size(); ++idx) {
    const auto c = t.grid_coords(idx);
    double phase = 0;
    for (int i = 0; i < n; ++i) {
      x[i] = 2.0 * std::numbers::pi * c[static_cast<std::size_t>(i)] / G;
      phase += t.spec().spin_shift[static_cast<std::size_t>(i)] * x[i];
    }
    const double r = (x - b.center).norm();
    if (r >= 2.0 * dc) continue;
    g.row(idx) = (std::exp(cplx(0, -phase)) * cutoff_eta(r, dc) * eval(b, x)).transpose();
  }
  return g;
}

SpinorField graft_test_spinor(const Torus& t, double eps, double dc, const Bubble& b) {
  Bubble bb = b;
  bb.eps = eps;
  return t.from_grid(graft_grid_values(t, dc, bb));
}

SpinorField graft_test_spinor(const Torus& t, double eps, double dc, const DimensionalConstants& c) {
  if (c.n != t.n()) throw ContractViolation("graft: constants for a different dimension");
  return graft_test_spinor(t, eps, dc, make_bubble(c, eps, cell_center(t.n()), default_psi0(t.n(), c)));
}

}  // namespace ndirac

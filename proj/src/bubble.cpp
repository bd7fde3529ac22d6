#include "ndirac/bubble.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ndirac/quadrature.hpp"

namespace ndirac {

namespace {

void check_point(const Bubble& b, const Vec& x) {
  if (x.size() != b.n) throw std::invalid_argument("point dimension does not match bubble dimension");
}

double psi0_sq(const Bubble& b) { return b.psi0.squaredNorm(); }

}  // namespace

Spinor default_psi0(int n, const DimensionalConstants& c) {
  Spinor s = Spinor::Zero(spinor_dim(n));
  s(0) = std::sqrt(c.a_n);
  return s;
}

Bubble make_bubble(const DimensionalConstants& c, double eps) {
  return make_bubble(c, eps, Vec::Zero(c.n), default_psi0(c.n, c));
}

Bubble make_bubble(const DimensionalConstants& c, double eps, const Vec& center, const Spinor& psi0) {
  if (!(eps > 0)) throw std::invalid_argument("bubble scale must be positive");
  if (center.size() != c.n) throw std::invalid_argument("bubble center has wrong dimension");
  Bubble b{c.n, eps, center, psi0, build_rep(c.n)};
  if (psi0.size() != b.rep.dim) throw std::invalid_argument("seed spinor has wrong dimension");
  return b;
}

Spinor eval(const Bubble& b, const Vec& x) {
  check_point(b, x);
  const Vec y = (x - b.center) / b.eps;
  const double f = 1.0 / (1.0 + y.squaredNorm());
  const double amp = std::pow(b.eps, -0.5 * (b.n - 1)) * std::pow(f, 0.5 * b.n);
  return amp * (b.psi0 - clifford_mul(b.rep, y, b.psi0));
}

Spinor grad_eval(const Bubble& b, const Vec& x, int j) {
  check_point(b, x);
  if (j < 0 || j >= b.n) throw std::out_of_range("axis index out of range");
  const Vec y = (x - b.center) / b.eps;
  const double f = 1.0 / (1.0 + y.squaredNorm());
  const double g = std::pow(f, 0.5 * b.n);
  const double dg = -b.n * y(j) * g * f;
  const double scale = std::pow(b.eps, -0.5 * (b.n + 1));
  return scale * (dg * (b.psi0 - clifford_mul(b.rep, y, b.psi0)) - g * (b.rep.gamma(j) * b.psi0));
}

Spinor dirac_eval(const Bubble& b, const Vec& x) {
  Spinor out = Spinor::Zero(b.rep.dim);
  for (int j = 0; j < b.n; ++j) out += b.rep.gamma(j) * grad_eval(b, x, j);
  return out;
}

double dirac_residual(const Bubble& b, const Vec& x, double lambda) {
  const Vec y = (x - b.center) / b.eps;
  const double f = 1.0 / (1.0 + y.squaredNorm());
  return (dirac_eval(b, x) - (lambda * f / b.eps) * eval(b, x)).norm();
}

double dirac_residual(const Bubble& b, const Vec& x) { return dirac_residual(b, x, static_cast<double>(b.n)); }

ConvolutionCheck convolution_check(const Bubble& b, const Vec& x, const DimensionalConstants& c) {
  check_point(b, x);
  if (c.n != b.n) throw std::invalid_argument("constants and bubble dimensions differ");
  const double r = (x - b.center).norm() / b.eps;
  ConvolutionCheck out;
  out.lhs = c.h_n * psi0_sq(b) / b.eps * riesz_profile_integral(b.n, r);
  out.rhs = std::pow(c.c_n, 1.0 / (b.n - 1)) * std::pow(eval(b, x).squaredNorm(), 1.0 / (b.n - 1));
  out.rel_err = std::abs(out.lhs - out.rhs) / std::abs(out.rhs);
  return out;
}

double bubble_energy(int n, const DimensionalConstants& c) {
  if (c.n != n) throw std::invalid_argument("constants computed for a different dimension");
  return 0.25 * c.eigen_factor * c.a_n * c.omega_sphere * c.I_n;
}

EnergyRoutes bubble_energy_routes(const Bubble& b, const DimensionalConstants& c) {
  const double inf = std::numeric_limits<double>::infinity();
  const int n = b.n;
  const double area = unit_sphere_area(n);
  auto point = [&](double r) {
    Vec x = b.center;
    x(0) += r;
    return x;
  };
  EnergyRoutes e;
  e.quadratic = area * integrate_pieces(
                           [&](double r) {
                             const Vec x = point(r);
                             return std::pow(r, n - 1.0) * re_inner(dirac_eval(b, x), eval(b, x));
                           },
                           {0.0, b.eps, 10.0 * b.eps, inf}, 1e-12, 0.0, 20, "quadratic energy route");
  const double conv_scale = c.h_n * psi0_sq(b) / b.eps;
  e.quartic = area * integrate_pieces(
                         [&](double r) {
                           const Vec x = point(r);
                           const double pot = conv_scale * riesz_profile_integral(n, r / b.eps, 1e-12);
                           return std::pow(r, n - 1.0) * pot * eval(b, x).squaredNorm();
                         },
                         {0.0, b.eps, 10.0 * b.eps, inf}, 1e-10, 0.0, 16, "quartic energy route");
  e.energy_from_quadratic = 0.25 * e.quadratic;
  e.energy_from_quartic = 0.25 * e.quartic;
  e.closed_form = 0.25 * c.eigen_factor * psi0_sq(b) * c.omega_sphere * c.I_n;
  e.route_disc = std::abs(e.quadratic - e.quartic) / std::abs(e.quadratic);
  return e;
}

double critical_norm(const Bubble& b) {
  const int n = b.n;
  const double p = static_cast<double>(n) / (n - 1);
  return unit_sphere_area(n) *
         integrate_pieces(
             [&](double r) {
               Vec x = b.center;
               x(0) += r;
               return std::pow(r, n - 1.0) * std::pow(eval(b, x).squaredNorm(), p);
             },
             {0.0, b.eps, 10.0 * b.eps, std::numeric_limits<double>::infinity()}, 1e-13, 0.0, 20, "critical norm");
}

}  // namespace ndirac

#include "doctest.h"

#include <cmath>
#include <numbers>

#include "ndirac/errors.hpp"
#include "ndirac/torus.hpp"

using namespace ndirac;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

SpinorField single_mode(const Torus& t, const std::vector<int>& k, int comp, cplx v) {
  SpinorField f = t.zero();
  f.coeffs(t.mode_index(k), comp) = v;
  return f;
}

}  // namespace

TEST_CASE("smooth grid sizes") {
  CHECK(smooth_grid_size(1) == 1);
  CHECK(smooth_grid_size(7) == 8);
  CHECK(smooth_grid_size(11) == 12);
  CHECK(smooth_grid_size(17) == 18);
  CHECK(smooth_grid_size(49) == 50);
  CHECK(smooth_grid_size(125) == 125);
  const auto s = default_spec(4, 9);
  CHECK(s.grid_points_per_axis == 18);
  CHECK(s.spin_shift == std::vector<double>{0.5, 0.0, 0.0, 0.0});
}

TEST_CASE("geometry validation names the field") {
  auto s = default_spec(4, 5);
  s.spin_shift = {0.3, 0, 0, 0};
  CHECK_THROWS_WITH_AS(s.validate(), doctest::Contains("spin_shift"), ConfigError);
  s.spin_shift = {0, 0, 0, 0};
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.spin_shift = {0.5, 0};
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s = default_spec(4, 5);
  s.modes_per_axis = 4;
  CHECK_THROWS_WITH_AS(s.validate(), doctest::Contains("modes_per_axis"), ConfigError);
  s = default_spec(4, 5);
  s.grid_points_per_axis = 3;
  CHECK_THROWS_WITH_AS(s.validate(), doctest::Contains("grid_points_per_axis"), ConfigError);
}

TEST_CASE("mode bookkeeping") {
  Torus t(default_spec(4, 5));
  CHECK(t.mode_count() == 625);
  CHECK(t.dim() == 4);
  CHECK(t.dealiased());
  const int m = t.mode_index({1, -2, 0, 2});
  CHECK(t.xi(m)[0] == 1.5);
  CHECK(t.xi(m)[1] == -2.0);
  CHECK(t.xi(m)[3] == 2.0);
  double min_xi = 1e9;
  for (int q = 0; q < t.mode_count(); ++q) min_xi = std::min(min_xi, t.xi_norm(q));
  CHECK(min_xi == 0.5);
  const int G = t.spec().grid_points_per_axis;
  CHECK(G == 9);
  const auto g = t.grid_coords(3 * G * G * G + 7);
  CHECK(g == std::vector<int>{3, 0, 0, 7});
  CHECK(t.cell_volume() == doctest::Approx(std::pow(kTwoPi / G, 4)).epsilon(1e-14));
}

TEST_CASE("grid transforms") {
  Torus t(default_spec(4, 5));
  const SpinorField f = t.random(3, 1.0);
  const SpinorField back = t.from_grid(t.to_grid(f));
  CHECK((back.coeffs - f.coeffs).norm() < 1e-13 * f.coeffs.norm());
  // Parseval: the grid integral of |psi|^2 is exact on a dealiased grid
  const double l2 = t.l2_norm(f);
  CHECK(t.integrate(t.density(t.to_grid(f))) == doctest::Approx(l2 * l2).epsilon(1e-12));
  CHECK(l2 * l2 == doctest::Approx(std::pow(kTwoPi, 4) * f.coeffs.squaredNorm()).epsilon(1e-13));
  // a single mode is a plane wave of the periodic part
  const SpinorField e = single_mode(t, {1, 0, -1, 2}, 2, cplx(0.3, -0.4));
  const GridSpinor ge = t.to_grid(e);
  for (int g : {0, 17, 433, 6000}) {
    const auto c = t.grid_coords(g);
    const double phase = kTwoPi / t.spec().grid_points_per_axis * (1.0 * c[0] - 1.0 * c[2] + 2.0 * c[3]);
    CHECK(std::abs(ge(g, 2) - cplx(0.3, -0.4) * std::exp(cplx(0, phase))) < 1e-14);
    CHECK(std::abs(ge(g, 0)) < 1e-15);
  }
}

TEST_CASE("Dirac operator on modes") {
  Torus t(default_spec(4, 5));
  const SpinorField f = t.random(4);
  const SpinorField d = t.dirac_apply(f);
  // D = gamma_j d_j, so the symbol is i xi . gamma
  const int m = t.mode_index({2, 1, 0, -1});
  const Spinor c = f.coeffs.row(m).transpose();
  Spinor ref = Spinor::Zero(t.dim());
  for (int j = 0; j < 4; ++j) ref += cplx(0, t.xi(m)[j]) * (t.rep().gamma(j) * c);
  CHECK((d.coeffs.row(m).transpose() - ref).norm() < 1e-14);
  // D^2 = |D|^2
  CHECK((t.dirac_apply(d).coeffs - t.abs_dirac_power(f, 2.0).coeffs).norm() < 1e-12 * f.coeffs.norm() * 20);
  // symmetric
  const SpinorField g = t.random(5);
  CHECK(t.inner(d, g) == doctest::Approx(t.inner(f, t.dirac_apply(g))).epsilon(1e-12));
}

TEST_CASE("spectral projections") {
  Torus t(default_spec(5, 3));
  const SpinorField f = t.random(6);
  const auto [p, m] = t.split_projections(f);
  CHECK((p.coeffs + m.coeffs - f.coeffs).norm() < 1e-14 * f.coeffs.norm());
  CHECK(std::abs(t.inner(p, m)) < 1e-12 * t.inner(f, f));
  CHECK((t.project_plus(p).coeffs - p.coeffs).norm() < 1e-13 * f.coeffs.norm());
  CHECK(t.project_minus(p).coeffs.norm() < 1e-13 * f.coeffs.norm());
  // D = |D| on H^+ and -|D| on H^-
  CHECK((t.dirac_apply(p).coeffs - t.abs_dirac_power(p, 1.0).coeffs).norm() < 1e-12 * f.coeffs.norm());
  CHECK((t.dirac_apply(m).coeffs + t.abs_dirac_power(m, 1.0).coeffs).norm() < 1e-12 * f.coeffs.norm());
  const double hp = t.sobolev_norm(p, 0.5), hm = t.sobolev_norm(m, 0.5);
  CHECK(t.quadratic_form(f) == doctest::Approx(hp * hp - hm * hm).epsilon(1e-11));
  CHECK(t.sobolev_norm(f, 0.0) == doctest::Approx(t.l2_norm(f)).epsilon(1e-14));
}

TEST_CASE("kernel convolution on the grid") {
  Torus t(default_spec(4, 5));
  const KernelSpec k{KernelKind::periodized_riesz, 20.0, 1.0};
  const double G = t.spec().grid_points_per_axis;
  GridReal rho(t.grid_size());
  for (int g = 0; g < t.grid_size(); ++g) {
    const auto c = t.grid_coords(g);
    const double x0 = kTwoPi * c[0] / G, x1 = kTwoPi * c[1] / G;
    rho[g] = 1.5 + std::cos(2.0 * x0 - x1);
  }
  const GridReal v = t.kernel_apply(k, rho);
  for (int g : {0, 123, 4567}) {
    const auto c = t.grid_coords(g);
    const double x0 = kTwoPi * c[0] / G, x1 = kTwoPi * c[1] / G;
    CHECK(v[g] == doctest::Approx(20.0 * 1.5 + std::cos(2.0 * x0 - x1) / 5.0).epsilon(1e-13));
  }
  const KernelSpec s{KernelKind::screened_bessel, 20.0, 2.0};
  const GridReal vs = t.kernel_apply(s, rho);
  // screened symbol (|q|^2 + m^2)^{-1} = 1/9 on the q = (2, -1) mode
  CHECK(vs[0] == doctest::Approx(30.0 + 1.0 / 9.0).epsilon(1e-13));
}

TEST_CASE("conformal bookkeeping") {
  Torus t(default_spec(4, 5));
  const SpinorField psi = t.random(8, 1.5);
  GridReal u(t.grid_size());
  for (int g = 0; g < t.grid_size(); ++g) {
    const auto c = t.grid_coords(g);
    u[g] = std::exp(0.3 * std::sin(kTwoPi * c[0] / 9.0) + 0.2 * std::cos(kTwoPi * c[3] / 9.0));
  }
  const KernelSpec k{};
  CHECK(conformal_bookkeeping_check(t, psi, u, k) < 1e-12);
  u[0] = -1.0;
  CHECK_THROWS_AS(conformal_bookkeeping_check(t, psi, u, k), ContractViolation);
}

TEST_CASE("fields from another torus are rejected") {
  Torus a(default_spec(4, 3)), b(default_spec(4, 5));
  CHECK_THROWS_AS(b.dirac_apply(a.random(1)), ContractViolation);
}

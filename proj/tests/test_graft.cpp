#include "doctest.h"

#include <cmath>
#include <numbers>

#include "ndirac/errors.hpp"
#include "ndirac/ewald.hpp"
#include "ndirac/graft.hpp"
#include "ndirac/radial_graft.hpp"

using namespace ndirac;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

TEST_CASE("cutoff is C2 and matches its derivative") {
  const double dc = 1.4;
  CHECK(cutoff_eta(0.3, dc) == 1.0);
  CHECK(cutoff_eta(dc, dc) == 1.0);
  CHECK(cutoff_eta(2.0 * dc, dc) == 0.0);
  CHECK(cutoff_eta(1.5 * dc, dc) == doctest::Approx(0.5).epsilon(1e-15));
  double prev = 1.0;
  for (double r = dc; r <= 2.0 * dc; r += 0.01) {
    const double v = cutoff_eta(r, dc);
    CHECK(v <= prev + 1e-15);
    prev = v;
    if (r > dc + 1e-3 && r < 2.0 * dc - 1e-3) {
      const double h = 1e-6;
      const double fd = (cutoff_eta(r + h, dc) - cutoff_eta(r - h, dc)) / (2.0 * h);
      CHECK(cutoff_eta_prime(r, dc) == doctest::Approx(fd).epsilon(1e-7));
    }
  }
  // second derivative vanishes at both ends
  const double h = 1e-4;
  for (double r0 : {dc, 2.0 * dc}) {
    const double d2 = (cutoff_eta_prime(r0 + h, dc) - cutoff_eta_prime(r0 - h, dc)) / (2.0 * h);
    CHECK(std::abs(d2) < 1e-3);
  }
}

TEST_CASE("grafted bubble on the grid") {
  Torus t(default_spec(4, 9));
  const auto c = compute_constants(4);
  const double eps = 0.3, dc = 1.4;
  const Bubble b = make_bubble(c, eps, cell_center(4), default_psi0(4, c));
  const GridSpinor g = graft_grid_values(t, dc, b);
  // (9, 9, 9, 9) is the cell centre on an 18-point grid
  const int centre = ((9 * 18 + 9) * 18 + 9) * 18 + 9;
  const double phase = -0.5 * std::numbers::pi;
  const Spinor expect = std::pow(eps, -1.5) * std::exp(cplx(0, phase)) * b.psi0;
  CHECK((g.row(centre).transpose() - expect).norm() < 1e-13 * expect.norm());
  CHECK(g.row(0).norm() == 0.0);
  CHECK_THROWS_AS(graft_grid_values(t, 1.6, b), ContractViolation);
  const Bubble wide = make_bubble(c, 1.5, cell_center(4), default_psi0(4, c));
  CHECK_THROWS_AS(graft_grid_values(t, dc, wide), ContractViolation);
  const SpinorField phi = graft_test_spinor(t, eps, dc, c);
  CHECK(t.project_plus(phi).coeffs.norm() > 0.9 * phi.coeffs.norm());
}

TEST_CASE("radial evaluator oracles on T^4") {
  const KernelSpec k{};
  const auto c = compute_constants(4);
  const RadialGraft rg(default_spec(4, 9), k, c);
  const double a = PeriodicKernel(4, k).mass();
  CHECK(rg.mass() == doctest::Approx(a).epsilon(1e-12));
  // Delta R_T = (2 pi)^{-4} near the origin, so the spherical mean is A + t^2 / (8 (2 pi)^4)
  const double lap = std::pow(kTwoPi, -4);
  for (double tt : {0.05, 0.7, 1.9, 3.5})
    CHECK(rg.remainder_mean(tt) == doctest::Approx(a + lap * tt * tt / 8.0).epsilon(1e-10));
  // and the mean of R_T * rho over |x| = r is A M0 + (r^2 M0 + M2) / (8 (2 pi)^4)
  for (double eps : {0.42, 0.14}) {
    const auto [m0, m2] = rg.density_moments(eps);
    for (double r : {0.0, 0.5, 1.2}) {
      const double ref = a * m0 + lap * (r * r * m0 + m2) / 8.0;
      CHECK(rg.remainder_convolution_mean(eps, r) == doctest::Approx(ref).epsilon(1e-9));
    }
  }
}

TEST_CASE("radial evaluator rejects unsupported inputs") {
  const auto c4 = compute_constants(4);
  CHECK_THROWS_AS(RadialGraft(default_spec(4, 9), KernelSpec{KernelKind::screened_bessel, 20.0, 1.0}, c4),
                  ContractViolation);
  CHECK_THROWS_AS(RadialGraft(default_spec(5, 9), KernelSpec{}, c4), ContractViolation);
  GraftOptions wide;
  wide.cutoff_radius = 1.6;
  CHECK_THROWS_AS(RadialGraft(default_spec(4, 9), KernelSpec{}, c4, wide), ContractViolation);
  const RadialGraft rg(default_spec(4, 9), KernelSpec{}, c4);
  CHECK_THROWS_AS(rg.measure(1.5), ContractViolation);
}

TEST_CASE("radial evaluator agrees with the spectral graft at L = 25") {
  const auto c = compute_constants(4);
  GraftOptions opt;
  opt.spectral_modes = 25;
  const RadialGraft rg(default_spec(4, 9), KernelSpec{}, c, opt);
  const GraftPoint p = rg.measure(0.42);
  MESSAGE("radial J " << p.energy << " spectral J " << p.spectral_energy << " radial grad " << p.grad_norm
                      << " spectral grad " << p.spectral_grad);
  CHECK(p.gap == doctest::Approx(c.Ybar_sphere - p.energy).epsilon(1e-12));
  CHECK(p.energy == doctest::Approx(0.5 * p.quadratic - 0.25 * p.quartic).epsilon(1e-12));
  CHECK(std::abs(p.spectral_energy - p.energy) < 5e-3 * p.energy);
  CHECK(std::abs(p.spectral_grad - p.grad_norm) < 1e-2 * p.grad_norm);
  CHECK(p.nonradial_bound < 0.025 * p.grad_norm);
  CHECK(p.l2_sq > 0);
}

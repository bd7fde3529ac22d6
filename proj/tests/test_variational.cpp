#include "doctest.h"

#include <cmath>
#include <numbers>

#include "ndirac/errors.hpp"
#include "ndirac/suites.hpp"
#include "ndirac/variational.hpp"

using namespace ndirac;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Lowest plane wave e^{i x_1 / 2} c with c in the +1/2 eigenspace of i xi . gamma.
SpinorField lowest_plus_wave(const Torus& t) {
  SpinorField f = t.zero();
  const int m = t.mode_index(std::vector<int>(static_cast<std::size_t>(t.n()), 0));
  f.coeffs(m, 0) = 1.0;
  return t.project_plus(f);
}

}  // namespace

TEST_CASE("solver config validation") {
  SolverConfig c;
  CHECK_NOTHROW(c.validate());
  c.theta = 1.5;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("solver.theta"), ConfigError);
  c = {};
  c.starts = 0;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("solver.starts"), ConfigError);
  c = {};
  c.tau_tol = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("functional needs a dealiased grid and a nonnegative zero mode") {
  auto s = default_spec(4, 5);
  s.grid_points_per_axis = 7;
  Torus coarse(s);
  CHECK_THROWS_AS(Functional(coarse, KernelSpec{}), ContractViolation);
  Torus t(default_spec(4, 3));
  CHECK_THROWS_AS(Functional(t, KernelSpec{KernelKind::periodized_riesz, -1.0, 1.0}), ContractViolation);
}

TEST_CASE("energy parts scale homogeneously") {
  Torus t(default_spec(4, 5));
  const Functional f(t, KernelSpec{});
  const SpinorField psi = t.random(11, 2.0);
  const EnergyParts p = f.parts(psi);
  CHECK(p.quadratic == doctest::Approx(t.quadratic_form(psi)).epsilon(1e-12));
  CHECK(p.quartic > 0);
  CHECK(p.energy == doctest::Approx(0.5 * p.quadratic - 0.25 * p.quartic).epsilon(1e-14));
  SpinorField s = psi;
  s.coeffs *= 1.7;
  const EnergyParts q = f.parts(s);
  CHECK(q.quadratic == doctest::Approx(1.7 * 1.7 * p.quadratic).epsilon(1e-12));
  CHECK(q.quartic == doctest::Approx(std::pow(1.7, 4) * p.quartic).epsilon(1e-12));
  CHECK(f.parts(t.zero()).energy == 0.0);
}

TEST_CASE("residual is the L2 gradient") {
  const auto g = gradient_suite(5, 3, 3, 1e-4, 21);
  CHECK(g.max_rel < 1e-7);
  Torus t(default_spec(4, 5));
  const Functional f(t, KernelSpec{});
  const SpinorField psi = t.random(12, 2.0);
  const Gradient gr = gradient(f, psi);
  CHECK(gr.magnitude == doctest::Approx(t.sobolev_norm(gr.residual, -0.5)).epsilon(1e-14));
}

TEST_CASE("Hessian is the derivative of the residual") {
  Torus t(default_spec(4, 3));
  const Functional f(t, KernelSpec{});
  const SpinorField u = t.random(13, 1.0), phi = t.random(14, 1.0);
  const auto [w, ug] = f.potential(u);
  const SpinorField hp = f.hessian_apply(u, w, ug, phi);
  const double h = 1e-5;
  SpinorField a = u, b = u;
  a.coeffs += h * phi.coeffs;
  b.coeffs -= h * phi.coeffs;
  const CMat fd = (f.residual(a).coeffs - f.residual(b).coeffs) / (2.0 * h);
  CHECK((fd - hp.coeffs).norm() < 1e-7 * hp.coeffs.norm());
}

TEST_CASE("tau solves the negative-space problem") {
  const auto s = tau_suite(5, 3, 6, 1.0, 31);
  CHECK(s.max_residual < 1e-9);
  CHECK(s.bound_violations == 0);
  CHECK(s.maximality_violations == 0);
  CHECK(s.min_bound_slack >= 0.0);
  // both iterations reach the same maximizer
  Torus t(default_spec(4, 5));
  const Functional f(t, KernelSpec{});
  SpinorField pp = random_plus_field(t, 32);
  pp.coeffs *= 0.5;
  SolverConfig newton, fixed;
  fixed.tau_method = TauMethod::fixed_point;
  fixed.tau_max_iter = 400;
  const TauResult a = tau_solve(f, pp, newton), b = tau_solve(f, pp, fixed);
  CHECK(t.project_plus(a.tau).coeffs.norm() < 1e-13 * (1.0 + a.tau.coeffs.norm()));
  CHECK((a.tau.coeffs - b.tau.coeffs).norm() < 1e-7 * (1.0 + a.tau.coeffs.norm()));
  SolverConfig off;
  off.disable_tau = true;
  CHECK(tau_solve(f, pp, off).tau.coeffs.norm() == 0.0);
  CHECK(reduced_energy(f, pp, off) == doctest::Approx(f.energy(pp)).epsilon(1e-14));
  CHECK(reduced_energy(f, pp, newton) >= f.energy(pp));
}

TEST_CASE("Nehari scaling") {
  Torus t(default_spec(4, 5));
  const Functional f(t, KernelSpec{});
  const SolverConfig cfg;
  const SpinorField psi = random_plus_field(t, 41);
  CHECK(t.sobolev_norm(psi, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
  const NehariResult r = nehari_scale(f, psi, cfg);
  CHECK(r.t_star > 0);
  CHECK(std::abs(r.derivative) < 1e-8);
  CHECK(nehari_derivative(f, psi, 0.5 * r.t_star, cfg) > 0);
  CHECK(nehari_derivative(f, psi, 2.0 * r.t_star, cfg) < 0);
  // the Nehari value is the maximum along the ray
  SpinorField lo = psi, hi = psi;
  lo.coeffs *= 0.97 * r.t_star;
  hi.coeffs *= 1.03 * r.t_star;
  CHECK(r.value >= reduced_energy(f, lo, cfg));
  CHECK(r.value >= reduced_energy(f, hi, cfg));
}

TEST_CASE("the lowest plane wave attains (2 pi)^4 / (16 mu)") {
  for (double mu : {5.0, 20.0, 80.0}) {
    Torus t(default_spec(4, 3));
    const Functional f(t, KernelSpec{KernelKind::periodized_riesz, mu, 1.0});
    const NehariResult r = nehari_scale(f, lowest_plus_wave(t), SolverConfig{});
    CHECK(r.value == doctest::Approx(std::pow(kTwoPi, 4) / (16.0 * mu)).epsilon(1e-10));
    CHECK(r.tau.coeffs.norm() < 1e-10);
  }
}

TEST_CASE("ground state at L = 3") {
  Torus t(default_spec(4, 3));
  const Functional f(t, KernelSpec{});
  SolverConfig cfg;
  cfg.starts = 3;
  const GroundStateReport rep = minimize_delta0(f, cfg);
  CHECK(rep.converged);
  CHECK(rep.delta0_estimate == doctest::Approx(4.870454551700).epsilon(1e-9));
  CHECK(rep.gradient_norm < cfg.grad_tol);
  CHECK(rep.start_values.size() == 3);
  CHECK_FALSE(rep.trace.empty());
  // deterministic per seed
  const GroundStateReport again = minimize_delta0(f, cfg);
  CHECK(again.delta0_estimate == rep.delta0_estimate);
  CHECK(again.trace.size() == rep.trace.size());
}

TEST_CASE("conformal covariance of the energy bookkeeping") {
  const auto c = conformal_suite(5, 3, 51);
  CHECK(c.max_rel < 1e-12);
  CHECK(c.constant_factor_rel < 1e-12);
  CHECK(c.identity_rel == 0.0);
}

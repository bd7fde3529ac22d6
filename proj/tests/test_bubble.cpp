#include "doctest.h"

#include <random>

#include "ndirac/bubble.hpp"

using namespace ndirac;

namespace {

Vec rand_vec(int n, double scale, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = scale * nd(rng);
  return v;
}

}  // namespace

TEST_CASE("bubble values") {
  for (int n = 4; n <= 6; ++n) {
    const auto c = compute_constants(n);
    const Bubble b = make_bubble(c);
    CHECK((eval(b, Vec::Zero(n)) - b.psi0).norm() < 1e-15);
    CHECK(eval(b, Vec::Zero(n)).squaredNorm() == doctest::Approx(c.a_n).epsilon(1e-14));
    Vec x = Vec::Zero(n);
    x[1] = 1.0;
    CHECK(eval(b, x).squaredNorm() == doctest::Approx(c.a_n / std::pow(2.0, n - 1)).epsilon(1e-13));
  }
}

TEST_CASE("|Psi|^2 against a component sum through the Clifford module") {
  std::mt19937_64 rng(1);
  const auto c = compute_constants(5);
  const Bubble b = make_bubble(c);
  for (int k = 0; k < 10; ++k) {
    const Vec x = rand_vec(5, 1.0, rng);
    const double f = 1.0 / (1.0 + x.squaredNorm());
    const Spinor s = std::pow(f, 2.5) * (b.psi0 - clifford_mul(b.rep, x, b.psi0));
    double sum = 0;
    for (int i = 0; i < s.size(); ++i) sum += std::norm(s[i]);
    CHECK(eval(b, x).squaredNorm() == doctest::Approx(sum).epsilon(1e-13));
  }
}

TEST_CASE("bubble gradient") {
  const auto c = compute_constants(4);
  const Bubble b = make_bubble(c);
  SUBCASE("at the centre d_j Psi = -gamma_j psi0") {
    for (int j = 0; j < 4; ++j) CHECK((grad_eval(b, Vec::Zero(4), j) + b.rep.gamma(j) * b.psi0).norm() < 1e-14);
  }
  SUBCASE("five-point stencil") {
    std::mt19937_64 rng(2);
    const double h = 1e-4;
    for (int k = 0; k < 5; ++k) {
      const Vec x = rand_vec(4, 0.8, rng);
      for (int j = 0; j < 4; ++j) {
        const Vec e = Vec::Unit(4, j) * h;
        const Spinor fd = (-eval(b, x + 2 * e) + 8.0 * eval(b, x + e) - 8.0 * eval(b, x - e) + eval(b, x - 2 * e)) / (12 * h);
        const Spinor g = grad_eval(b, x, j);
        CHECK((fd - g).norm() / g.norm() < 1e-6);
      }
    }
  }
  SUBCASE("|Psi|^2 has zero gradient at the centre") {
    for (int j = 0; j < 4; ++j) CHECK(std::abs(2.0 * re_inner(grad_eval(b, Vec::Zero(4), j), b.psi0)) < 1e-14);
  }
}

TEST_CASE("D Psi = n f Psi") {
  std::mt19937_64 rng(4);
  for (int n = 4; n <= 8; ++n) {
    const auto c = compute_constants(n);
    const Bubble b = make_bubble(c);
    CHECK(dirac_residual(b, Vec::Zero(n)) < 1e-12);
    double worst = 0;
    for (int k = 0; k < 100; ++k) {
      Vec x = rand_vec(n, 1.0, rng);
      x *= 5.0 * std::uniform_real_distribution<double>()(rng) / x.norm();
      worst = std::max(worst, dirac_residual(b, x));
    }
    CHECK(worst < 1e-10);
    // the half factor leaves an O(1) residual
    CHECK(dirac_residual(b, Vec::Zero(n), 0.5 * n) > 1.0);
  }
}

TEST_CASE("scaled bubble satisfies the scaled identity") {
  std::mt19937_64 rng(6);
  const auto c = compute_constants(5);
  Vec centre = Vec::Constant(5, 0.3);
  const Bubble b = make_bubble(c, 0.2, centre, default_psi0(5, c));
  for (int k = 0; k < 20; ++k) CHECK(dirac_residual(b, centre + rand_vec(5, 0.3, rng)) < 1e-10);
}

TEST_CASE("convolution identity") {
  for (int n = 4; n <= 6; ++n) {
    const auto c = compute_constants(n);
    const Bubble b = make_bubble(c);
    const auto at0 = convolution_check(b, Vec::Zero(n), c);
    CHECK(at0.lhs == doctest::Approx(n).epsilon(1e-8));
    CHECK(at0.rhs == doctest::Approx(n).epsilon(1e-12));
    Vec x = Vec::Zero(n);
    x[0] = 1.0;
    CHECK(convolution_check(b, x, c).rel_err < 1e-4);
    x[0] = 200.0;
    const auto far = convolution_check(b, x, c);
    CHECK(far.lhs < 1e-3);
    CHECK(far.rhs < 1e-3);
  }
}

TEST_CASE("bubble energy") {
  for (int n = 4; n <= 6; ++n) {
    const auto c = compute_constants(n);
    const auto e1 = bubble_energy_routes(make_bubble(c, 1.0), c);
    const auto e2 = bubble_energy_routes(make_bubble(c, 0.37), c);
    CHECK(e1.route_disc < 1e-6);
    CHECK(e1.energy_from_quadratic == doctest::Approx(e1.closed_form).epsilon(1e-8));
    CHECK(std::abs(e1.energy_from_quadratic - e2.energy_from_quadratic) / e1.energy_from_quadratic < 1e-10);
    CHECK(bubble_energy(n, c) > 0);
    CHECK(bubble_energy(n, c) == doctest::Approx(c.Ybar_sphere).epsilon(1e-12));
  }
}

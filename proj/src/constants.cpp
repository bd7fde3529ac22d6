#include "ndirac/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>

#include "ndirac/quadrature.hpp"

namespace ndirac {

namespace {

constexpr double pi = std::numbers::pi;
const double nan = std::numeric_limits<double>::quiet_NaN();

void check_dim(int n) {
  if (n < 4 || n > 10) throw std::invalid_argument("dimension must lie in [4, 10], got " + std::to_string(n));
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// int_0^inf r^{p} (1 + r^2)^{-q} dr by adaptive quadrature.
double moment(double p, double q) {
  return integrate([&](double r) { return std::pow(r, p) * std::pow(1.0 + r * r, -q); }, 0.0,
                   std::numeric_limits<double>::infinity(), 1e-13, 0.0, 20, "bubble moment");
}

}  // namespace

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::formula: return "formula";
    case Provenance::quadrature: return "quadrature";
    case Provenance::consistency: return "consistency";
    case Provenance::fit: return "fit";
    case Provenance::spectral: return "spectral";
    case Provenance::radial: return "radial";
  }
  return "unknown";
}

double unit_ball_volume(int n) { return std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0); }
double unit_sphere_area(int n) { return 2.0 * std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n); }

std::pair<double, double> sphere_invariants(int n) {
  check_dim(n);
  const double vol = unit_sphere_area(n + 1);
  const double s = 0.5 * (n - 2);
  const double lambda_plus = 0.5 * n * std::pow(vol, 1.0 / n);
  const double y = std::tgamma(0.5 * n + s) / std::tgamma(0.5 * n - s) * std::pow(vol, 2.0 * s / n);
  return {lambda_plus, y};
}

DimensionalConstants compute_constants(int n) {
  check_dim(n);
  DimensionalConstants c;
  c.n = n;
  const double nd = n;
  c.omega_ball = unit_ball_volume(n);
  c.omega_sphere = unit_sphere_area(n);
  c.vol_sphere_n = unit_sphere_area(n + 1);
  c.h_n = 1.0 / (std::pow(2.0, nd - 2) * std::pow(pi, 0.5 * nd) * std::tgamma(0.5 * nd - 1.0));
  c.b_n = std::tgamma(0.5 * nd + 1.0) / (nd * (nd - 2) * std::pow(pi, 0.5 * nd));
  c.b_n_sphere = 1.0 / ((nd - 2) * c.omega_sphere);
  c.d_n = c.h_n / std::pow(c.b_n, 2.0 / (nd - 2));
  auto [lp, y] = sphere_invariants(n);
  c.lambda_plus_sphere = lp;
  c.Y_half_sphere = y;
  c.c_n = std::pow(lp, nd - 2) / y;
  c.riesz_C_n = 1.0 / (std::pow(2.0, nd - 2) * std::tgamma(nd - 1.0));
  c.eigen_factor = nd;
  c.a_n = c.eigen_factor / c.riesz_C_n;
  c.I_n = moment(nd - 1, nd);
  c.I_n_beta = 0.5 * boost::math::beta(0.5 * nd, 0.5 * nd);
  c.Q_n = c.a_n * c.omega_sphere * moment(nd - 1, nd - 1);
  c.Ybar_sphere = 0.25 * c.eigen_factor * c.a_n * c.omega_sphere * c.I_n;
  c.Ybar_invariants = 0.25 * lp * lp * y;
  return c;
}

std::vector<ConstantEntry> DimensionalConstants::table() const {
  const double nd = n;
  return {
      {"h_n", h_n, Provenance::formula, nan},
      {"b_n", b_n, Provenance::formula, rel(b_n, b_n_sphere)},
      {"b_n_sphere_form", b_n_sphere, Provenance::formula, rel(b_n_sphere, b_n)},
      {"d_n", d_n, Provenance::formula, nan},
      {"c_n", c_n, Provenance::formula, nan},
      {"riesz_C_n", riesz_C_n, Provenance::formula, nan},
      {"eigen_factor", eigen_factor, Provenance::consistency, nan},
      {"a_n", a_n, Provenance::consistency, rel(a_n * c_n, std::pow(nd, nd - 1))},
      {"lambda_plus_sphere", lambda_plus_sphere, Provenance::formula, nan},
      {"Y_half_sphere", Y_half_sphere, Provenance::formula, nan},
      {"Ybar_sphere", Ybar_sphere, Provenance::consistency, rel(Ybar_sphere, Ybar_invariants)},
      {"Ybar_invariants", Ybar_invariants, Provenance::formula, nan},
      {"Q_n", Q_n, Provenance::quadrature, nan},
      {"I_n", I_n, Provenance::quadrature, rel(I_n, I_n_beta)},
      {"I_n_beta", I_n_beta, Provenance::formula, nan},
      {"omega_ball", omega_ball, Provenance::formula, nan},
      {"omega_sphere", omega_sphere, Provenance::formula, nan},
      {"vol_sphere_n", vol_sphere_n, Provenance::formula, nan},
  };
}

double riesz_profile_integral(int n, double r, double rel_tol) {
  const double q = n - 1.0;
  return riesz_radial_potential(
      n, [q](double s) { return std::pow(1.0 + s * s, -q); }, r, {1.0, 2.0 * r + 1.0, 4.0 * r + 10.0}, true,
      rel_tol);
}

AuditReport audit_bubble_chain(int n) {
  check_dim(n);
  const DimensionalConstants c = compute_constants(n);
  const double nd = n;
  AuditReport a;
  a.n = n;
  a.radii = {0.0, 1.0, 2.0};
  for (double r : a.radii) a.riesz_C_samples.push_back(c.h_n * riesz_profile_integral(n, r) * (1.0 + r * r));
  a.riesz_C_closed = c.riesz_C_n;
  double spread = 0.0;
  for (double x : a.riesz_C_samples)
    for (double y : a.riesz_C_samples) spread = std::max(spread, rel(x, y));
  a.riesz_C_spread = spread;
  const double cn = a.riesz_C_samples.front();
  a.eigen_factor = c.eigen_factor;
  a.a_forced = c.eigen_factor / cn;
  a.a_forced_half_reading = 0.5 * nd / cn;
  // a^{n/(n-1)} omega = 2^n Ybar c^{-1/(n-1)}
  const double rhs = std::pow(2.0, nd) * c.Ybar_invariants * std::pow(c.c_n, -1.0 / (nd - 1));
  a.a_definitional_ball = std::pow(rhs / c.omega_ball, (nd - 1) / nd);
  a.a_definitional_sphere = std::pow(rhs / c.vol_sphere_n, (nd - 1) / nd);
  a.omega_closing = rhs / std::pow(a.a_forced, nd / (nd - 1));
  a.disc_ball = rel(a.a_definitional_ball, a.a_forced);
  a.disc_sphere = rel(a.a_definitional_sphere, a.a_forced);
  a.ac_ratio = a.a_forced * c.c_n / std::pow(nd, nd - 1);
  a.ac_ratio_half = a.a_forced * c.c_n / std::pow(0.5 * nd, nd - 1);
  auto ybar = [&](double an) {
    return 0.25 * std::pow(c.c_n, 1.0 / (nd - 1)) * std::pow(an, nd / (nd - 1)) * c.omega_sphere * c.I_n;
  };
  a.ybar_candidate = ybar(a.a_forced);
  a.ybar_invariants = c.Ybar_invariants;
  a.ybar_disc = rel(a.ybar_candidate, a.ybar_invariants);
  a.ybar_candidate_half = ybar(a.a_forced_half_reading);
  a.ybar_disc_half = rel(a.ybar_candidate_half, a.ybar_invariants);
  return a;
}

std::vector<ConstantEntry> AuditReport::table() const {
  std::vector<ConstantEntry> t;
  for (std::size_t i = 0; i < radii.size(); ++i)
    t.push_back({"riesz_C_n(|x|=" + std::to_string(radii[i]).substr(0, 4) + ")", riesz_C_samples[i],
                 Provenance::quadrature, rel(riesz_C_samples[i], riesz_C_closed)});
  t.push_back({"riesz_C_n_spread", riesz_C_spread, Provenance::quadrature, nan});
  t.push_back({"eigen_factor", eigen_factor, Provenance::consistency, nan});
  t.push_back({"a_n_forced", a_forced, Provenance::consistency, nan});
  t.push_back({"a_n_forced_half_eigenvalue", a_forced_half_reading, Provenance::consistency,
               rel(a_forced_half_reading, a_forced)});
  t.push_back({"a_n_definitional_ball", a_definitional_ball, Provenance::formula, disc_ball});
  t.push_back({"a_n_definitional_sphere", a_definitional_sphere, Provenance::formula, disc_sphere});
  t.push_back({"omega_closing", omega_closing, Provenance::consistency, nan});
  t.push_back({"a_n_c_n_over_n_pow", ac_ratio, Provenance::consistency, std::abs(ac_ratio - 1.0)});
  t.push_back({"a_n_c_n_over_half_n_pow", ac_ratio_half, Provenance::consistency, std::abs(ac_ratio_half - 1.0)});
  t.push_back({"Ybar_candidate", ybar_candidate, Provenance::quadrature, ybar_disc});
  t.push_back({"Ybar_candidate_half_eigenvalue", ybar_candidate_half, Provenance::quadrature, ybar_disc_half});
  t.push_back({"Ybar_invariants", ybar_invariants, Provenance::formula, nan});
  return t;
}

}  // namespace ndirac

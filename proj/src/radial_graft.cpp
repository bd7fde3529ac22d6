#include "ndirac/radial_graft.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "ndirac/errors.hpp"
#include "ndirac/graft.hpp"
#include "ndirac/lattice.hpp"
#include "ndirac/quadrature.hpp"
#include "ndirac/variational.hpp"

namespace ndirac {

namespace {

// (J_nu(x), J_{nu+1}(x)) for integer or half-integer nu. Upward recurrence from
// the order 0/1 or -1/2, 1/2 pair is stable once x exceeds the order.
std::pair<double, double> bessel_pair(double nu, double x) {
  if (x > std::max(4.0, 2.0 * nu + 2.0)) {
    const bool half = std::abs(nu - std::round(nu)) == 0.5;
    double jm, j, order;
    if (half) {
      const double pref = std::sqrt(2.0 / (std::numbers::pi * x));
      jm = pref * std::cos(x);
      j = pref * std::sin(x);
      order = 0.5;
    } else {
      jm = ::j0(x);
      j = ::j1(x);
      order = 1.0;
    }
    while (order < nu + 0.75) {
      const double next = 2.0 * order / x * j - jm;
      jm = j;
      j = next;
      order += 1.0;
    }
    return {jm, j};
  }
  return {std::cyl_bessel_j(nu, x), std::cyl_bessel_j(nu + 1.0, x)};
}

}  // namespace

struct RadialGraft::Nodes {
  std::vector<double> r, w, eta, deta, prof, nf, rho;
};

RadialGraft::RadialGraft(const TorusSpec& spec, const KernelSpec& k, const DimensionalConstants& c, GraftOptions opt)
    : spec_(spec), k_(k), c_(c), opt_(opt), ker_(spec.n, k) {
  spec_.validate();
  if (c.n != spec.n) throw ContractViolation("RadialGraft: constants for a different dimension");
  if (!(opt.cutoff_radius > 0) || 2.0 * opt.cutoff_radius >= std::numbers::pi)
    throw ContractViolation("RadialGraft: support radius 2 dc must stay inside the cell");
  const int n = spec.n;
  if (k.kind != KernelKind::periodized_riesz)
    throw ContractViolation("RadialGraft: the radial evaluator needs a finite near-diagonal constant");
  mass_ = ker_.mass();

  const double tmax = 4.0 * opt.cutoff_radius + 0.05;
  const int nt = 1600;
  const double step = tmax / nt;
  std::vector<double> vals(nt + 1);
  for (int i = 0; i <= nt; ++i) vals[static_cast<std::size_t>(i)] = ker_.remainder_mean(i * step);
  rbar_ = std::make_unique<boost::math::interpolators::cardinal_cubic_b_spline<double>>(vals.begin(), vals.end(), 0.0,
                                                                                        step, 0.0);

  // Non-radial part of the remainder, sampled on spheres.
  const int nr = 64, ndir = 24;
  nonradial_step_ = tmax / nr;
  nonradial_.assign(nr + 2, 0.0);
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> nd;
  std::vector<Vec> dirs;
  for (int d = 0; d < ndir; ++d) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = nd(rng);
    dirs.push_back(v / v.norm());
  }
  double run = 0;
  for (int i = 0; i <= nr; ++i) {
    const double t = i * nonradial_step_;
    const double mean = remainder_mean(t);
    for (const auto& d : dirs) run = std::max(run, std::abs(ker_.remainder(t * d) - mean));
    nonradial_[static_cast<std::size_t>(i)] = run;
  }
  nonradial_[static_cast<std::size_t>(nr + 1)] = run;
}

double RadialGraft::remainder_mean(double t) const { return (*rbar_)(t); }

RadialGraft::Nodes RadialGraft::nodes(double eps) const {
  const double dc = opt_.cutoff_radius;
  if (!(eps > 0) || eps >= dc) throw ContractViolation("RadialGraft: eps must satisfy 0 < eps < cutoff radius");
  const int n = spec_.n;
  const double wmax = std::min(0.5 * eps, 0.1);
  std::vector<double> br{0.0};
  for (double b : {eps / 8, eps / 4, eps / 2, eps})
    if (b < dc) br.push_back(b);
  auto fill = [&](double a, double b) {
    const int m = static_cast<int>(std::ceil((b - a) / wmax));
    for (int i = 1; i <= m; ++i) br.push_back(a + (b - a) * i / m);
  };
  fill(br.back(), dc);
  fill(dc, 2.0 * dc);
  const Rule rule = composite_rule(br, 20);
  Nodes nd;
  const double a = c_.a_n;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double r = rule.x[i];
    const double t2 = r * r / (eps * eps);
    nd.r.push_back(r);
    nd.w.push_back(rule.w[i]);
    nd.eta.push_back(cutoff_eta(r, dc));
    nd.deta.push_back(cutoff_eta_prime(r, dc));
    nd.prof.push_back(a * std::pow(eps, 1.0 - n) * std::pow(1.0 + t2, 1.0 - n));
    nd.nf.push_back(n / (eps * (1.0 + t2)));
    nd.rho.push_back(nd.eta.back() * nd.eta.back() * nd.prof.back());
  }
  return nd;
}

std::pair<double, double> RadialGraft::density_moments(double eps) const {
  const Nodes nd = nodes(eps);
  const int n = spec_.n;
  const double area = unit_sphere_area(n);
  double m0 = 0, m2 = 0;
  for (std::size_t i = 0; i < nd.r.size(); ++i) {
    const double v = area * nd.w[i] * nd.rho[i] * std::pow(nd.r[i], n - 1);
    m0 += v;
    m2 += v * nd.r[i] * nd.r[i];
  }
  return {m0, m2};
}

double RadialGraft::remainder_convolution_mean(double eps, double r) const {
  const Nodes nd = nodes(eps);
  const int n = spec_.n;
  const double area = unit_sphere_area(n);
  const Rule ang = sphere_angle_rule(n, 8, 20);
  double acc = 0;
  for (std::size_t j = 0; j < nd.r.size(); ++j) {
    const double s = nd.r[j];
    double mean = 0;
    for (std::size_t q = 0; q < ang.size(); ++q)
      mean += ang.w[q] * remainder_mean(std::sqrt(std::max(0.0, r * r + s * s - 2.0 * r * s * ang.x[q])));
    acc += nd.w[j] * nd.rho[j] * std::pow(s, n - 1) * mean;
  }
  return area * acc;
}

GraftPoint RadialGraft::measure(double eps) const {
  const int n = spec_.n;
  const double dc = opt_.cutoff_radius;
  const double area = unit_sphere_area(n);
  const double a = c_.a_n;
  const Nodes nd = nodes(eps);
  const std::size_t m = nd.r.size();
  const Rule ang = sphere_angle_rule(n, 8, 20);

  auto tau_profile = [&](double s) {
    const double e = cutoff_eta(s, dc);
    return (1.0 - e * e) * a * std::pow(eps, 1.0 - n) * std::pow(1.0 + s * s / (eps * eps), 1.0 - n);
  };

  std::vector<double> vr_tau(m), rt_rho(m), rw(m);
  for (std::size_t i = 0; i < m; ++i) rw[i] = area * nd.w[i] * std::pow(nd.r[i], n - 1);
  for (std::size_t i = 0; i < m; ++i) {
    vr_tau[i] = c_.h_n * riesz_radial_potential(n, tau_profile, nd.r[i], {dc, 2.0 * dc}, true, opt_.rel_tol,
                                               1e-13);
    const double r = nd.r[i];
    double acc = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (nd.rho[j] == 0.0) continue;
      const double s = nd.r[j];
      double mean = 0;
      for (std::size_t q = 0; q < ang.size(); ++q)
        mean += ang.w[q] * remainder_mean(std::sqrt(std::max(0.0, r * r + s * s - 2.0 * r * s * ang.x[q])));
      acc += rw[j] * nd.rho[j] * mean;
    }
    rt_rho[i] = acc;
  }

  GraftPoint p;
  p.eps = eps;
  double m0 = 0;
  for (std::size_t i = 0; i < m; ++i) {
    p.quadratic += rw[i] * nd.eta[i] * nd.eta[i] * nd.nf[i] * nd.prof[i];
    p.quartic += rw[i] * nd.rho[i] * (nd.nf[i] - vr_tau[i] + rt_rho[i]);
    p.l2_sq += rw[i] * nd.rho[i];
    m0 += rw[i] * nd.rho[i];
  }
  p.energy = 0.5 * p.quadratic - 0.25 * p.quartic;
  p.gap = c_.Ybar_sphere - p.energy;

  // Residual r = F(|y|) psi0 + G(|y|) y . psi0 with the radial part of the potential error.
  std::vector<double> F(m), Gf(m);
  const double amp = std::pow(eps, -0.5 * (n - 1));
  for (std::size_t i = 0; i < m; ++i) {
    const double r = nd.r[i];
    const double g = std::pow(1.0 + r * r / (eps * eps), -0.5 * n);
    const double b = vr_tau[i] - rt_rho[i];
    F[i] = amp * g * (b * nd.eta[i] + nd.deta[i] * r / eps);
    Gf[i] = amp * g * (-b * nd.eta[i] / eps + (r > 0 ? nd.deta[i] / r : 0.0));
  }
  std::vector<int> twice(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) twice[static_cast<std::size_t>(i)] = static_cast<int>(std::lround(2.0 * spec_.spin_shift[static_cast<std::size_t>(i)]));
  const double xi_max = opt_.xi_factor / eps;
  const auto counts = shell_counts(n, twice, static_cast<std::int64_t>(4.0 * xi_max * xi_max));
  const double nu = 0.5 * n - 1.0;
  const double ft = std::pow(2.0 * std::numbers::pi, 0.5 * n);
  std::vector<double> fw(m), gw(m);
  for (std::size_t i = 0; i < m; ++i) {
    fw[i] = nd.w[i] * F[i] * std::pow(nd.r[i], 0.5 * n);
    gw[i] = nd.w[i] * Gf[i] * std::pow(nd.r[i], 0.5 * n + 1.0);
  }
  double sum = 0;
  for (std::size_t key = 1; key < counts.size(); ++key) {
    if (counts[key] == 0) continue;
    ++p.shells;
    const double rho = 0.5 * std::sqrt(static_cast<double>(key));
    double fs = 0, hs = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (fw[i] == 0.0 && gw[i] == 0.0) continue;
      const auto [j0, j1] = bessel_pair(nu, rho * nd.r[i]);
      fs += fw[i] * j0;
      hs += gw[i] * j1;
    }
    const double pref = ft * std::pow(rho, 1.0 - 0.5 * n);
    fs *= pref;
    hs *= pref;
    sum += static_cast<double>(counts[key]) / rho * (fs * fs + hs * hs);
  }
  p.grad_norm = std::sqrt(std::pow(2.0 * std::numbers::pi, -n) * a * sum);

  // Dropped part: (N * rho)(x) with N the zero-mean part of the remainder, bounded
  // pointwise by the sampled envelope; |xi| >= 1/2 turns the L^2 bound into H^{-1/2}.
  auto envelope = [&](double t) {
    const std::size_t k = std::min(nonradial_.size() - 1, static_cast<std::size_t>(std::ceil(t / nonradial_step_)));
    return nonradial_[k];
  };
  double l2 = 0;
  for (std::size_t i = 0; i < m; ++i) {
    double bound = 0;
    for (std::size_t j = 0; j < m; ++j)
      if (nd.rho[j] != 0.0) bound += rw[j] * nd.rho[j] * envelope(nd.r[i] + nd.r[j]);
    l2 += rw[i] * bound * bound * nd.eta[i] * nd.eta[i] * nd.prof[i];
  }
  double min_xi = std::numeric_limits<double>::infinity();
  for (std::size_t key = 1; key < counts.size(); ++key)
    if (counts[key]) {
      min_xi = 0.5 * std::sqrt(static_cast<double>(key));
      break;
    }
  p.nonradial_bound = std::sqrt(l2 / min_xi);

  p.spectral_energy = std::numeric_limits<double>::quiet_NaN();
  p.spectral_grad = std::numeric_limits<double>::quiet_NaN();
  if (opt_.spectral_modes > 0) {
    TorusSpec s = spec_;
    s.modes_per_axis = opt_.spectral_modes;
    s.grid_points_per_axis = smooth_grid_size(2 * opt_.spectral_modes - 1);
    Torus t(s);
    Functional f(t, k_);
    const SpinorField phi = graft_test_spinor(t, eps, dc, c_);
    p.spectral_energy = f.energy(phi);
    p.spectral_grad = gradient(f, phi).magnitude;
  }
  return p;
}

SweepResult graft_sweep(const std::vector<double>& eps_list, const TorusSpec& spec, const KernelSpec& k,
                        const DimensionalConstants& c, const GraftOptions& opt) {
  RadialGraft g(spec, k, c, opt);
  SweepResult res;
  res.mass = g.mass();
  for (double e : eps_list) res.points.push_back(g.measure(e));
  std::vector<std::pair<double, double>> gs, gaps;
  res.gap_positive = true;
  res.grad_monotone = true;
  for (std::size_t i = 0; i < res.points.size(); ++i) {
    const auto& p = res.points[i];
    gs.push_back({p.eps, p.grad_norm});
    if (p.gap > 0) gaps.push_back({p.eps, p.gap});
    else res.gap_positive = false;
    for (std::size_t j = 0; j < res.points.size(); ++j)
      if (res.points[j].eps < p.eps && !(res.points[j].grad_norm < p.grad_norm)) res.grad_monotone = false;
  }
  if (gs.size() >= 4) res.grad_fit = rate_fit(gs);
  if (gaps.size() >= 4) {
    res.gap_fit = rate_fit(gaps);
    res.gap_log_coefficient_fixed = fixed_exponent_log_coefficient(gaps, spec.n - 2.0);
  }
  return res;
}

RateFit gradient_decay_sweep(const std::vector<double>& eps_list, const TorusSpec& spec, const KernelSpec& k,
                             const DimensionalConstants& c, const GraftOptions& opt) {
  return graft_sweep(eps_list, spec, k, c, opt).grad_fit;
}

SweepResult energy_gap_sweep(const std::vector<double>& eps_list, const TorusSpec& spec, const KernelSpec& k,
                             const DimensionalConstants& c, const GraftOptions& opt) {
  PeriodicKernel ker(spec.n, k);
  if (!(ker.mass() > 0)) throw ContractViolation("energy_gap_sweep: the kernel mass A_T must be positive");
  return graft_sweep(eps_list, spec, k, c, opt);
}

}  // namespace ndirac

#include "ndirac/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "ndirac/bubble.hpp"
#include "ndirac/constants.hpp"
#include "ndirac/curvature.hpp"
#include "ndirac/torus.hpp"
#include "ndirac/variational.hpp"

namespace ndirac {

namespace {

Spinor random_spinor(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Spinor s(dim);
  for (int i = 0; i < dim; ++i) s[i] = cplx(nd(rng), nd(rng));
  return s;
}

Vec random_vec(int n, double scale, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = scale * nd(rng);
  return v;
}

SpinorField axpy(const SpinorField& a, double s, const SpinorField& b) {
  SpinorField out = a;
  out.coeffs += s * b.coeffs;
  return out;
}

SpinorField scaled(const SpinorField& a, double s) {
  SpinorField out = a;
  out.coeffs *= s;
  return out;
}

// exp of a random trigonometric polynomial, rescaled into [0.5, 2].
GridReal random_conformal_factor(const Torus& t, std::mt19937_64& rng) {
  const int n = t.n();
  const int G = t.spec().grid_points_per_axis;
  std::normal_distribution<double> nd;
  std::uniform_int_distribution<int> freq(-2, 2);
  struct Wave {
    std::vector<int> k;
    double a, phase;
  };
  std::vector<Wave> waves;
  for (int w = 0; w < 6; ++w) {
    Wave wv;
    for (int i = 0; i < n; ++i) wv.k.push_back(freq(rng));
    wv.a = nd(rng);
    wv.phase = 2.0 * std::numbers::pi * std::uniform_real_distribution<double>()(rng);
    waves.push_back(wv);
  }
  GridReal s(t.grid_size());
  for (int g = 0; g < t.grid_size(); ++g) {
    const auto c = t.grid_coords(g);
    double v = 0;
    for (const auto& wv : waves) {
      double arg = wv.phase;
      for (int i = 0; i < n; ++i) arg += 2.0 * std::numbers::pi * wv.k[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(i)] / G;
      v += wv.a * std::cos(arg);
    }
    s[g] = v;
  }
  const double lo = s.minCoeff(), hi = s.maxCoeff();
  const double lmax = std::log(2.0);
  for (Eigen::Index g = 0; g < s.size(); ++g) s[g] = std::exp(-lmax + 2.0 * lmax * (s[g] - lo) / (hi - lo));
  return s;
}

}  // namespace

CliffordSuite clifford_suite(int n, int samples, std::uint64_t seed) {
  const CliffordRep rep = build_rep(n);
  std::mt19937_64 rng(seed);
  CliffordSuite s;
  s.n = n;
  s.samples = samples;
  for (int k = 0; k < samples; ++k) {
    const Spinor a = random_spinor(rep.dim, rng), b = random_spinor(rep.dim, rng);
    const CliffordDefects d = clifford_defects(rep, a, b);
    s.anticommutation = std::max(s.anticommutation, d.anticommutation);
    s.skew_hermitian = std::max(s.skew_hermitian, d.skew_hermitian);
  }
  return s;
}

BubbleSuite bubble_suite(int n, int samples, std::uint64_t seed) {
  const DimensionalConstants c = compute_constants(n);
  const Bubble b = make_bubble(c, 1.0);
  std::mt19937_64 rng(seed);
  BubbleSuite s;
  s.n = n;
  s.samples = samples;
  for (int k = 0; k < samples; ++k)
    s.dirac_residual = std::max(s.dirac_residual, dirac_residual(b, random_vec(n, 1.5, rng)));
  for (double r : {0.0, 0.5, 1.5, 4.0}) {
    Vec x = Vec::Zero(n);
    x[0] = r;
    s.convolution_rel = std::max(s.convolution_rel, convolution_check(b, x, c).rel_err);
  }
  const EnergyRoutes e = bubble_energy_routes(b, c);
  s.route_disc = e.route_disc;
  s.closed_form_disc = std::abs(e.energy_from_quadratic - e.closed_form) / std::abs(e.closed_form);
  return s;
}

ConstantsSuite constants_suite(int n) {
  const DimensionalConstants c = compute_constants(n);
  const AuditReport a = audit_bubble_chain(n);
  ConstantsSuite s;
  s.n = n;
  s.b_n_disc = std::abs(c.b_n - c.b_n_sphere) / std::abs(c.b_n);
  s.d4_error = n == 4 ? std::abs(c.d_n - 1.0) : std::numeric_limits<double>::quiet_NaN();
  s.riesz_spread = a.riesz_C_spread;
  s.I_n_disc = std::abs(c.I_n - c.I_n_beta) / c.I_n_beta;
  s.a_n_disc_ball = a.disc_ball;
  s.a_n_disc_sphere = a.disc_sphere;
  s.ybar_disc = a.ybar_disc;
  return s;
}

ContractionSuite contraction_suite(int n, int tensors, int points, std::uint64_t seed) {
  const DimensionalConstants c = compute_constants(n);
  const Bubble b = make_bubble(c, 1.0);
  std::mt19937_64 rng(seed);
  ContractionSuite s;
  s.n = n;
  s.tensors = tensors;
  s.points = points;
  for (int k = 0; k < tensors; ++k) {
    const AlgCurvature curv = random_curvature(n, seed * 1000003ULL + static_cast<std::uint64_t>(k),
                                               {CurvatureKind::ricci_flat, 1.0});
    for (int p = 0; p < points; ++p) {
      Vec x = random_vec(n, 1.0, rng);
      x *= std::uniform_real_distribution<double>()(rng) / x.norm();
      s.max_residual = std::max(s.max_residual, contraction_residual(curv, b, x));
    }
  }
  return s;
}

CurvatureSuite curvature_suite(int n, int samples, std::uint64_t seed) {
  CurvatureSuite s;
  s.n = n;
  s.samples = samples;
  const CliffordRep rep = build_rep(n);
  std::mt19937_64 rng(seed);
  for (int k = 0; k < samples; ++k) {
    const std::uint64_t sd = seed * 7919ULL + static_cast<std::uint64_t>(k);
    const AlgCurvature g = random_curvature(n, sd);
    s.symmetry_defect = std::max(s.symmetry_defect, curvature_symmetry_defect(g));
    const AlgCurvature k1 = random_curvature(n, sd, {CurvatureKind::constant, 0.7});
    s.weyl_of_constant = std::max(s.weyl_of_constant, weyl_norm_sq(k1));
    const CMat om = omega_expansion(g, random_vec(n, 1.0, rng), rep);
    s.omega_hermitian = std::max(s.omega_hermitian, (om - om.adjoint()).norm());
    const AlgCurvature cnc = random_curvature(n, sd, {CurvatureKind::conformal_normal, 1.0});
    const CncReport r = cnc_predicates(cnc);
    s.cnc_ricci = std::max(s.cnc_ricci, r.ricci_defect);
    s.cnc_cyclic = std::max(s.cnc_cyclic, r.cyclic_defect);
    s.cnc_quartic = std::max(s.cnc_quartic, r.quartic_defect);
    s.cnc_laplacian = std::max(s.cnc_laplacian, r.laplacian_defect);
  }
  return s;
}

ConformalSuite conformal_suite(int L, int pairs, std::uint64_t seed, const KernelSpec& k) {
  Torus t(default_spec(4, L));
  std::mt19937_64 rng(seed);
  ConformalSuite s;
  s.pairs = pairs;
  for (int p = 0; p < pairs; ++p) {
    const SpinorField psi = t.random(seed * 31ULL + static_cast<std::uint64_t>(p), 2.0);
    const GridReal u = random_conformal_factor(t, rng);
    s.max_rel = std::max(s.max_rel, conformal_bookkeeping_check(t, psi, u, k));
  }
  const SpinorField psi = t.random(seed, 2.0);
  s.identity_rel = conformal_bookkeeping_check(t, psi, GridReal::Ones(t.grid_size()), k);
  s.constant_factor_rel = conformal_bookkeeping_check(t, psi, GridReal::Constant(t.grid_size(), 1.7), k);
  return s;
}

TauSuite tau_suite(int L, int fields, int perturbations, double amplitude, std::uint64_t seed, const KernelSpec& k) {
  Torus t(default_spec(4, L));
  Functional f(t, k);
  SolverConfig cfg;
  cfg.tau_tol = 1e-11;
  TauSuite s;
  s.fields = fields;
  s.perturbations = perturbations;
  s.min_bound_slack = std::numeric_limits<double>::infinity();
  s.min_max_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < fields; ++i) {
    const std::uint64_t sd = seed * 101ULL + static_cast<std::uint64_t>(i);
    const SpinorField psi = scaled(random_plus_field(t, sd), amplitude);
    const TauResult tr = tau_solve(f, psi, cfg);
    s.max_residual = std::max(s.max_residual, tr.residual);
    const double tau_sq = std::pow(t.sobolev_norm(tr.tau, 0.5), 2);
    const double slack = 0.5 * f.parts(psi).quartic - tau_sq;
    s.min_bound_slack = std::min(s.min_bound_slack, slack);
    if (slack < 0) ++s.bound_violations;
    const SpinorField base = axpy(psi, 1.0, tr.tau);
    const double top = f.energy(base);
    const double size = std::max(t.sobolev_norm(tr.tau, 0.5), 1e-3 * amplitude);
    for (int p = 0; p < perturbations; ++p) {
      SpinorField h = t.project_minus(t.random(sd * 37ULL + static_cast<std::uint64_t>(p), 2.0));
      h = scaled(h, 0.05 * size / t.sobolev_norm(h, 0.5));
      const double gap = top - f.energy(axpy(base, 1.0, h));
      s.min_max_gap = std::min(s.min_max_gap, gap);
      if (gap < 0) ++s.maximality_violations;
    }
  }
  return s;
}

GradientSuite gradient_suite(int L, int fields, int directions, double h, std::uint64_t seed, const KernelSpec& k) {
  Torus t(default_spec(4, L));
  Functional f(t, k);
  GradientSuite s;
  s.fields = fields;
  s.directions = directions;
  for (int i = 0; i < fields; ++i) {
    const std::uint64_t sd = seed * 211ULL + static_cast<std::uint64_t>(i);
    SpinorField psi = t.random(sd, 2.0);
    psi = scaled(psi, 2.0 / t.sobolev_norm(psi, 0.5));
    const SpinorField r = f.residual(psi);
    for (int d = 0; d < directions; ++d) {
      SpinorField phi = t.random(sd * 53ULL + static_cast<std::uint64_t>(d), 2.0);
      phi = scaled(phi, 1.0 / t.sobolev_norm(phi, 0.5));
      const double fd = (f.energy(axpy(psi, h, phi)) - f.energy(axpy(psi, -h, phi))) / (2.0 * h);
      const double pairing = t.inner(r, phi);
      s.max_rel = std::max(s.max_rel, std::abs(fd - pairing) / std::abs(pairing));
    }
  }
  return s;
}

}  // namespace ndirac

#include "ndirac/curvature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "ndirac/constants.hpp"
#include "ndirac/errors.hpp"

namespace ndirac {

Tensor::Tensor(int n_, int rank_) : n(n_), rank(rank_) {
  std::size_t sz = 1;
  for (int r = 0; r < rank; ++r) sz *= static_cast<std::size_t>(n);
  data.assign(sz, 0.0);
}

std::size_t Tensor::idx(std::initializer_list<int> ix) const {
  std::size_t k = 0;
  for (int i : ix) k = k * static_cast<std::size_t>(n) + static_cast<std::size_t>(i);
  return k;
}

double Tensor::norm_sq() const {
  double s = 0;
  for (double v : data) s += v * v;
  return s;
}

namespace {

double delta(int i, int j) { return i == j ? 1.0 : 0.0; }

Tensor identity2(int n) {
  Tensor g(n, 2);
  for (int i = 0; i < n; ++i) g(i, i) = 1.0;
  return g;
}

Tensor ricci_of(const Tensor& r) {
  const int n = r.n;
  Tensor ric(n, 2);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += r(i, j, i, l);
      ric(j, l) = s;
    }
  return ric;
}

double trace2(const Tensor& t) {
  double s = 0;
  for (int i = 0; i < t.n; ++i) s += t(i, i);
  return s;
}

// Project a random 4-array onto algebraic curvature tensors: antisymmetrize in
// each pair, symmetrize the pairs, then subtract the totally antisymmetric part
// so that the first Bianchi identity holds.
Tensor curvature_projection(const Tensor& t) {
  const int n = t.n;
  Tensor a(n, 4);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          a(i, j, k, l) = 0.125 * (t(i, j, k, l) - t(j, i, k, l) - t(i, j, l, k) + t(j, i, l, k) +
                                   t(k, l, i, j) - t(l, k, i, j) - t(k, l, j, i) + t(l, k, j, i));
  Tensor out = a;
  std::array<int, 4> p{0, 1, 2, 3};
  std::vector<std::pair<std::array<int, 4>, int>> perms;
  do {
    int inv = 0;
    for (int x = 0; x < 4; ++x)
      for (int y = x + 1; y < 4; ++y)
        if (p[x] > p[y]) ++inv;
    perms.push_back({p, inv % 2 ? -1 : 1});
  } while (std::next_permutation(p.begin(), p.end()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const std::array<int, 4> v{i, j, k, l};
          double s = 0;
          for (const auto& [q, sg] : perms) s += sg * a(v[q[0]], v[q[1]], v[q[2]], v[q[3]]);
          out(i, j, k, l) -= s / 24.0;
        }
  return out;
}

Tensor random_array(int n, int rank, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Tensor t(n, rank);
  for (double& v : t.data) v = nd(rng);
  return t;
}

Tensor space_form(int n, double kappa) {
  Tensor r(n, 4);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          r(i, j, k, l) = kappa * (delta(i, k) * delta(j, l) - delta(i, l) * delta(j, k));
  return r;
}

// Slice m of a 5-tensor as a 4-tensor and back.
Tensor slice(const Tensor& t5, int m) {
  const int n = t5.n;
  Tensor s(n, 4);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) s(i, j, k, l) = t5(i, j, k, l, m);
  return s;
}

void set_slice(Tensor& t5, int m, const Tensor& s) {
  const int n = t5.n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) t5(i, j, k, l, m) = s(i, j, k, l);
}

// sum_{i,d} R_{i a b d} R_{i k l d}
double rr_contract(const Tensor& r, int a, int b, int k, int l) {
  double s = 0;
  for (int i = 0; i < r.n; ++i)
    for (int d = 0; d < r.n; ++d) s += r(i, a, b, d) * r(i, k, l, d);
  return s;
}

}  // namespace

Tensor kulkarni_nomizu(const Tensor& h, const Tensor& k) {
  const int n = h.n;
  Tensor out(n, 4);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          out(i, j, a, b) =
              h(i, a) * k(j, b) + h(j, b) * k(i, a) - h(i, b) * k(j, a) - h(j, a) * k(i, b);
  return out;
}

Tensor weyl_tensor(const Tensor& riemann) {
  const int n = riemann.n;
  const Tensor ric = ricci_of(riemann);
  const double scal = trace2(ric);
  const Tensor g = identity2(n);
  const Tensor rg = kulkarni_nomizu(ric, g);
  const Tensor gg = kulkarni_nomizu(g, g);
  Tensor w = riemann;
  const double c1 = 1.0 / (n - 2);
  const double c2 = scal / (2.0 * (n - 1) * (n - 2));
  for (std::size_t q = 0; q < w.data.size(); ++q) w.data[q] += -c1 * rg.data[q] + c2 * gg.data[q];
  return w;
}

double weyl_norm_sq(const AlgCurvature& c) { return weyl_tensor(c.riemann).norm_sq(); }

AlgCurvature random_curvature(int n, std::uint64_t seed, CurvatureOptions opt) {
  if (n < 4) throw ContractViolation("random_curvature: n must be at least 4");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  AlgCurvature c;
  c.n = n;

  switch (opt.kind) {
    case CurvatureKind::flat: c.riemann = Tensor(n, 4); break;
    case CurvatureKind::constant: c.riemann = space_form(n, opt.kappa); break;
    case CurvatureKind::generic: c.riemann = curvature_projection(random_array(n, 4, rng)); break;
    case CurvatureKind::ricci_flat:
    case CurvatureKind::conformal_normal:
      c.riemann = weyl_tensor(curvature_projection(random_array(n, 4, rng)));
      break;
  }
  c.ricci = ricci_of(c.riemann);
  c.scalar = trace2(c.ricci);

  c.d_riemann = Tensor(n, 5);
  if (opt.kind == CurvatureKind::generic || opt.kind == CurvatureKind::ricci_flat ||
      opt.kind == CurvatureKind::conformal_normal) {
    const Tensor raw = random_array(n, 5, rng);
    for (int m = 0; m < n; ++m) {
      Tensor s = curvature_projection(slice(raw, m));
      if (opt.kind != CurvatureKind::generic) s = weyl_tensor(s);
      set_slice(c.d_riemann, m, s);
    }
  }
  c.d_ricci = Tensor(n, 3);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l)
      for (int m = 0; m < n; ++m) {
        double s = 0;
        for (int i = 0; i < n; ++i) s += c.d_riemann(i, j, i, l, m);
        c.d_ricci(j, l, m) = s;
      }

  c.hess_scalar = Tensor(n, 2);
  c.dd_ricci = Tensor(n, 4);
  if (opt.kind == CurvatureKind::generic || opt.kind == CurvatureKind::ricci_flat) {
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) c.hess_scalar(i, j) = c.hess_scalar(j, i) = nd(rng);
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b)
        for (int k = 0; k < n; ++k)
          for (int l = k; l < n; ++l) {
            const double v = nd(rng);
            c.dd_ricci(a, b, k, l) = c.dd_ricci(b, a, k, l) = v;
            c.dd_ricci(a, b, l, k) = c.dd_ricci(b, a, l, k) = v;
          }
  } else if (opt.kind == CurvatureKind::conformal_normal) {
    const double w2 = weyl_norm_sq(c);
    double tr = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) c.hess_scalar(i, j) = c.hess_scalar(j, i) = nd(rng);
    tr = trace2(c.hess_scalar);
    for (int i = 0; i < n; ++i) c.hess_scalar(i, i) += -tr / n - w2 / (6.0 * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) c.dd_ricci(a, b, k, l) = -2.0 / 9.0 * rr_contract(c.riemann, a, b, k, l);
  }
  return c;
}

double curvature_symmetry_defect(const AlgCurvature& c) {
  const int n = c.n;
  const Tensor& r = c.riemann;
  double d = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double v = r(i, j, k, l);
          d = std::max({d, std::abs(v + r(j, i, k, l)), std::abs(v + r(i, j, l, k)),
                        std::abs(v - r(k, l, i, j)),
                        std::abs(v + r(i, k, l, j) + r(i, l, j, k))});
        }
  const Tensor ric = ricci_of(r);
  for (std::size_t q = 0; q < ric.data.size(); ++q) d = std::max(d, std::abs(ric.data[q] - c.ricci.data[q]));
  d = std::max(d, std::abs(trace2(ric) - c.scalar));
  return d;
}

Eigen::MatrixXd b_matrix_expansion(const AlgCurvature& c, const Vec& x) {
  const int n = c.n;
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0;
      for (int a = 0; a < n; ++a)
        for (int be = 0; be < n; ++be) {
          const double xx = x[a] * x[be];
          double cub = 0;
          for (int k = 0; k < n; ++k) cub += c.d_riemann(i, a, be, j, k) * x[k];
          s += -c.riemann(i, a, be, j) * xx / 6.0 - cub * xx / 12.0;
        }
      b(i, j) = s;
    }
  return b;
}

Vec x_field_expansion(const AlgCurvature& c, const Vec& x) {
  const int n = c.n;
  Vec out = Vec::Zero(n);
  for (int k = 0; k < n; ++k) {
    double s = 0;
    for (int a = 0; a < n; ++a) {
      s += 0.25 * c.ricci(a, k) * x[a];
      for (int be = 0; be < n; ++be) s += c.d_ricci(a, k, be) * x[a] * x[be] / 6.0;
    }
    out[k] = -s;
  }
  return out;
}

Tensor omega_coefficients(const AlgCurvature& c, const Vec& x) {
  const int n = c.n;
  const Tensor& r = c.riemann;
  // P_{lk} = R_{l b g k} x^b x^g, Q_{jil} = (R_{j i a l} + R_{j l a i}) x^a.
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int be = 0; be < n; ++be)
        for (int ga = 0; ga < n; ++ga) p(l, k) += r(l, be, ga, k) * x[be] * x[ga];
  Tensor out(n, 3);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        double s = 0;
        for (int l = 0; l < n; ++l) {
          double q = 0;
          for (int a = 0; a < n; ++a) q += (r(j, i, a, l) + r(j, l, a, i)) * x[a];
          s += p(l, k) * q;
        }
        out(i, j, k) = -s / 144.0;
      }
    }
  return out;
}

CMat omega_expansion(const AlgCurvature& c, const Vec& x, const CliffordRep& rep) {
  const int n = c.n;
  const Tensor co = omega_coefficients(c, x);
  CMat om = CMat::Zero(rep.dim, rep.dim);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double v = co(i, j, k);
        if (v != 0.0) om += v * rep.gammas[i] * rep.gammas[j] * rep.gammas[k];
      }
  return om;
}

Tensor omega_quartic_coefficients(const AlgCurvature& c, const Vec& x) {
  const int n = c.n;
  const Tensor co = omega_coefficients(c, x);
  Tensor a(n, 4);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) a(i, j, k, l) = co(i, j, k) * x[l];
  return a;
}

double contraction_residual(const AlgCurvature& c, const Bubble& b, const Vec& x) {
  const int n = c.n;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a)
        for (int be = 0; be < n; ++be) m(i, j) += c.riemann(i, a, be, j) * x[a] * x[be];
  const Vec pt = b.center + x;
  std::vector<Spinor> grads;
  grads.reserve(n);
  for (int j = 0; j < n; ++j) grads.push_back(grad_eval(b, pt, j));
  Spinor acc = Spinor::Zero(b.rep.dim);
  for (int j = 0; j < n; ++j) {
    Vec w(n);
    for (int i = 0; i < n; ++i) w[i] = m(i, j);
    acc += clifford_mul(b.rep, w, grads[j]);
  }
  return acc.norm();
}

double quartic_trace(const Tensor& a, const Spinor& psi0, const CliffordRep& rep) {
  const int n = a.n;
  double s = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Spinor left = rep.gammas[k].adjoint() * (rep.gammas[j].adjoint() * (rep.gammas[i].adjoint() * psi0));
        for (int l = 0; l < n; ++l) {
          const double coef = a(i, j, k, l);
          if (coef == 0.0) continue;
          s += coef * re_inner(rep.gammas[l] * psi0, left);
        }
      }
  return s;
}

CncReport cnc_predicates(const AlgCurvature& c, double tol, int directions, std::uint64_t seed) {
  const int n = c.n;
  CncReport rep;
  for (double v : c.ricci.data) rep.ricci_defect = std::max(rep.ricci_defect, std::abs(v));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        rep.cyclic_defect = std::max(
            rep.cyclic_defect, std::abs(c.d_ricci(i, j, k) + c.d_ricci(j, k, i) + c.d_ricci(k, i, j)));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  for (int t = 0; t < directions; ++t) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = nd(rng);
    x /= x.norm();
    double q = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            q += (c.dd_ricci(a, b, k, l) + 2.0 / 9.0 * rr_contract(c.riemann, a, b, k, l)) * x[a] * x[b] *
                 x[k] * x[l];
    rep.quartic_defect = std::max(rep.quartic_defect, std::abs(q));
  }
  rep.laplacian_defect = std::abs(trace2(c.hess_scalar) + weyl_norm_sq(c) / 6.0);

  rep.ricci_flat = rep.ricci_defect <= tol;
  rep.cyclic = rep.cyclic_defect <= tol;
  rep.quartic = rep.quartic_defect <= tol;
  rep.laplacian = rep.laplacian_defect <= tol;
  return rep;
}

std::string to_string(GreenRegime r) {
  switch (r) {
    case GreenRegime::low_dim_or_lcf: return "low_dim_or_lcf";
    case GreenRegime::six: return "six";
    case GreenRegime::high: return "high";
  }
  return "?";
}

double green_asymptotic(const GreenExpansion& g, double r, const Vec& direction) {
  const int n = g.n;
  if (n < 3) throw ContractViolation("green_asymptotic: n must be at least 3");
  if (!(r > 0)) throw ContractViolation("green_asymptotic: r must be positive");
  const bool ok = (g.regime == GreenRegime::low_dim_or_lcf && (n <= 5 || g.weyl_sq == 0.0)) ||
                  (g.regime == GreenRegime::six && n == 6) || (g.regime == GreenRegime::high && n >= 7);
  if (!ok) throw ContractViolation("green_asymptotic: regime " + to_string(g.regime) +
                                   " does not match n = " + std::to_string(n));
  const double bn = std::tgamma(0.5 * n + 1.0) / (n * (n - 2.0) * std::pow(M_PI, 0.5 * n));
  const double lead = std::pow(r, 2.0 - n);
  switch (g.regime) {
    case GreenRegime::low_dim_or_lcf: return bn * (lead + g.A);
    case GreenRegime::six: return bn * (lead - g.weyl_sq * std::log(r) / 1440.0);
    case GreenRegime::high: {
      if (direction.size() != n) throw ContractViolation("green_asymptotic: direction has wrong size");
      const Vec x = r * direction / direction.norm();
      double hxx = 0;
      if (g.hess_scalar.size() > 0) hxx = x.dot(g.hess_scalar * x);
      const double pref = (n - 2.0) / (48.0 * (n - 1.0) * (n - 4.0));
      const double corr = std::pow(r, 4) * g.weyl_sq / (12.0 * (n - 6.0)) - hxx * r * r;
      return bn * lead * (1.0 + pref * corr);
    }
  }
  return 0;
}

}  // namespace ndirac

#include "ndirac/torus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include <fftw3.h>

#include "ndirac/errors.hpp"

namespace ndirac {

void TorusSpec::validate() const {
  if (n < 2 || n > 10) throw ConfigError("geometry.n: must lie in [2, 10], got " + std::to_string(n));
  if (modes_per_axis < 1 || modes_per_axis % 2 == 0)
    throw ConfigError("geometry.modes_per_axis: must be a positive odd integer, got " +
                      std::to_string(modes_per_axis));
  if (static_cast<int>(spin_shift.size()) != n)
    throw ConfigError("geometry.spin_shift: expected " + std::to_string(n) + " entries");
  bool nonzero = false;
  for (double d : spin_shift) {
    if (d != 0.0 && d != 0.5) throw ConfigError("geometry.spin_shift: entries must be 0 or 0.5");
    nonzero = nonzero || d != 0.0;
  }
  if (!nonzero) throw ConfigError("geometry.spin_shift: must be nonzero (the Dirac operator needs a trivial kernel)");
  if (grid_points_per_axis < modes_per_axis)
    throw ConfigError("geometry.grid_points_per_axis: must be at least modes_per_axis");
}

int smooth_grid_size(int at_least) {
  for (int g = std::max(1, at_least);; ++g) {
    int r = g;
    for (int p : {2, 3, 5})
      while (r % p == 0) r /= p;
    if (r == 1) return g;
  }
}

TorusSpec default_spec(int n, int L) {
  TorusSpec s;
  s.n = n;
  s.modes_per_axis = L;
  s.spin_shift.assign(static_cast<std::size_t>(n), 0.0);
  s.spin_shift[0] = 0.5;
  s.grid_points_per_axis = smooth_grid_size(2 * L - 1);
  return s;
}

struct Torus::Plans {
  std::map<std::pair<int, bool>, fftw_plan> plans;
  ~Plans() {
    for (auto& [key, p] : plans) fftw_destroy_plan(p);
  }
};

Torus::Torus(TorusSpec spec) : spec_(std::move(spec)), plans_(std::make_unique<Plans>()) {
  spec_.validate();
  rep_ = build_rep(spec_.n);
  const int n = spec_.n;
  const int L = spec_.modes_per_axis;
  const int G = spec_.grid_points_per_axis;
  const int h = (L - 1) / 2;
  long total_modes = 1;
  grid_total_ = 1;
  for (int i = 0; i < n; ++i) {
    total_modes *= L;
    grid_total_ *= G;
  }
  xi_.reserve(static_cast<std::size_t>(total_modes));
  for (long m = 0; m < total_modes; ++m) {
    long rem = m;
    Vec v(n);
    long g = 0;
    std::vector<int> k(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
      k[static_cast<std::size_t>(i)] = static_cast<int>(rem % L) - h;
      rem /= L;
    }
    for (int i = 0; i < n; ++i) {
      const int ki = k[static_cast<std::size_t>(i)];
      v[i] = ki + spec_.spin_shift[static_cast<std::size_t>(i)];
      g = g * G + ((ki % G) + G) % G;
    }
    xi_.push_back(v);
    xi_norm_.push_back(v.norm());
    mode_to_grid_.push_back(g);
  }
}

Torus::~Torus() = default;

int Torus::mode_index(const std::vector<int>& k) const {
  const int L = spec_.modes_per_axis;
  const int h = (L - 1) / 2;
  int idx = 0;
  for (int ki : k) {
    if (ki < -h || ki > h) throw std::out_of_range("mode outside the truncation");
    idx = idx * L + (ki + h);
  }
  return idx;
}

std::vector<int> Torus::grid_coords(int g) const {
  const int G = spec_.grid_points_per_axis;
  std::vector<int> c(static_cast<std::size_t>(spec_.n));
  for (int i = spec_.n - 1; i >= 0; --i) {
    c[static_cast<std::size_t>(i)] = g % G;
    g /= G;
  }
  return c;
}

double Torus::cell_volume() const {
  return std::pow(2.0 * std::numbers::pi / spec_.grid_points_per_axis, spec_.n);
}

bool Torus::dealiased() const { return spec_.grid_points_per_axis >= 2 * spec_.modes_per_axis - 1; }

void Torus::check(const SpinorField& f) const {
  if (!(f.spec == spec_)) throw ContractViolation("spinor field belongs to a different torus");
  if (f.coeffs.rows() != mode_count() || f.coeffs.cols() != dim())
    throw ContractViolation("spinor field has the wrong coefficient shape");
}

SpinorField Torus::zero() const { return {spec_, CMat::Zero(mode_count(), dim())}; }

SpinorField Torus::random(std::uint64_t seed, double decay) const {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  SpinorField f = zero();
  for (int c = 0; c < dim(); ++c)
    for (int m = 0; m < mode_count(); ++m) {
      const double re = nd(rng);
      const double im = nd(rng);
      f.coeffs(m, c) = cplx(re, im) * std::pow(1.0 + xi_norm_[static_cast<std::size_t>(m)] * xi_norm_[static_cast<std::size_t>(m)], -0.5 * decay);
    }
  return f;
}

SpinorField Torus::dirac_apply(const SpinorField& f) const {
  check(f);
  SpinorField out = zero();
  for (int m = 0; m < mode_count(); ++m) {
    const Spinor c = f.coeffs.row(m).transpose();
    out.coeffs.row(m) = (cplx(0, 1) * clifford_mul(rep_, xi_[static_cast<std::size_t>(m)], c)).transpose();
  }
  return out;
}

std::pair<SpinorField, SpinorField> Torus::split_projections(const SpinorField& f) const {
  const SpinorField d = dirac_apply(f);
  SpinorField plus = zero(), minus = zero();
  for (int m = 0; m < mode_count(); ++m) {
    const double r = xi_norm_[static_cast<std::size_t>(m)];
    const auto sc = d.coeffs.row(m) / r;
    plus.coeffs.row(m) = 0.5 * (f.coeffs.row(m) + sc);
    minus.coeffs.row(m) = 0.5 * (f.coeffs.row(m) - sc);
  }
  return {plus, minus};
}

SpinorField Torus::project_plus(const SpinorField& f) const { return split_projections(f).first; }
SpinorField Torus::project_minus(const SpinorField& f) const { return split_projections(f).second; }

SpinorField Torus::abs_dirac_power(const SpinorField& f, double p) const {
  check(f);
  SpinorField out = f;
  for (int m = 0; m < mode_count(); ++m) out.coeffs.row(m) *= std::pow(xi_norm_[static_cast<std::size_t>(m)], p);
  return out;
}

double Torus::sobolev_norm(const SpinorField& f, double s) const {
  check(f);
  double acc = 0;
  for (int m = 0; m < mode_count(); ++m)
    acc += std::pow(xi_norm_[static_cast<std::size_t>(m)], 2.0 * s) * f.coeffs.row(m).squaredNorm();
  return std::sqrt(std::pow(2.0 * std::numbers::pi, spec_.n) * acc);
}

double Torus::l2_norm(const SpinorField& f) const { return sobolev_norm(f, 0.0); }

double Torus::inner(const SpinorField& a, const SpinorField& b) const {
  check(a);
  check(b);
  double acc = 0;
  for (int c = 0; c < dim(); ++c) acc += b.coeffs.col(c).dot(a.coeffs.col(c)).real();
  return std::pow(2.0 * std::numbers::pi, spec_.n) * acc;
}

double Torus::quadratic_form(const SpinorField& f) const { return inner(dirac_apply(f), f); }

void Torus::fft(cplx* data, int howmany, bool forward) const {
  auto key = std::make_pair(howmany, forward);
  auto it = plans_->plans.find(key);
  if (it == plans_->plans.end()) {
    std::vector<int> dims(static_cast<std::size_t>(spec_.n), spec_.grid_points_per_axis);
    auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * static_cast<std::size_t>(grid_total_) *
                                                       static_cast<std::size_t>(howmany)));
    fftw_plan p = fftw_plan_many_dft(spec_.n, dims.data(), howmany, buf, nullptr, 1, static_cast<int>(grid_total_),
                                     buf, nullptr, 1, static_cast<int>(grid_total_),
                                     forward ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    if (!p) throw std::runtime_error("FFTW planning failed");
    it = plans_->plans.emplace(key, p).first;
  }
  auto* d = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(it->second, d, d);
}

GridSpinor Torus::to_grid(const SpinorField& f) const {
  check(f);
  GridSpinor g = GridSpinor::Zero(grid_total_, dim());
  for (int c = 0; c < dim(); ++c)
    for (int m = 0; m < mode_count(); ++m) g(mode_to_grid_[static_cast<std::size_t>(m)], c) = f.coeffs(m, c);
  fft(g.data(), dim(), false);
  return g;
}

SpinorField Torus::from_grid(const GridSpinor& g) const {
  if (g.rows() != grid_total_ || g.cols() != dim()) throw ContractViolation("grid spinor has the wrong shape");
  GridSpinor work = g;
  fft(work.data(), dim(), true);
  SpinorField f = zero();
  const double scale = 1.0 / static_cast<double>(grid_total_);
  for (int c = 0; c < dim(); ++c)
    for (int m = 0; m < mode_count(); ++m) f.coeffs(m, c) = work(mode_to_grid_[static_cast<std::size_t>(m)], c) * scale;
  return f;
}

GridReal Torus::density(const GridSpinor& g) const { return g.rowwise().squaredNorm(); }

double Torus::integrate(const GridReal& v) const { return v.sum() * cell_volume(); }

const std::vector<double>& Torus::symbol_table(const KernelSpec& k) const {
  if (!cached_symbol_.empty() && cached_kernel_.kind == k.kind && cached_kernel_.mu == k.mu &&
      cached_kernel_.mass == k.mass)
    return cached_symbol_;
  const int G = spec_.grid_points_per_axis;
  cached_symbol_.assign(static_cast<std::size_t>(grid_total_), 0.0);
  for (long g = 0; g < grid_total_; ++g) {
    long rem = g;
    double q2 = 0;
    for (int i = 0; i < spec_.n; ++i) {
      long qi = rem % G;
      rem /= G;
      if (qi > G / 2) qi -= G;
      q2 += static_cast<double>(qi * qi);
    }
    cached_symbol_[static_cast<std::size_t>(g)] = k.symbol(spec_.n, q2);
  }
  cached_kernel_ = k;
  return cached_symbol_;
}

GridReal Torus::kernel_apply(const KernelSpec& k, const GridReal& rho) const {
  if (rho.size() != grid_total_) throw ContractViolation("density has the wrong grid size");
  const auto& sym = symbol_table(k);
  Eigen::VectorXcd w = rho.cast<cplx>();
  fft(w.data(), 1, true);
  const double scale = 1.0 / static_cast<double>(grid_total_);
  for (long g = 0; g < grid_total_; ++g) w[g] *= sym[static_cast<std::size_t>(g)] * scale;
  fft(w.data(), 1, false);
  return w.real();
}

double conformal_bookkeeping_check(const Torus& t, const SpinorField& psi, const GridReal& u, const KernelSpec& k) {
  t.check(psi);
  if (u.size() != t.grid_size()) throw ContractViolation("conformal factor has the wrong grid size");
  if (!(u.minCoeff() > 0.0)) throw ContractViolation("conformal factor must be strictly positive");
  const int n = t.n();
  const double e_dirac = -(n + 1.0) / (n - 2.0);
  const double e_spinor = (1.0 - n) / (n - 2.0);
  const double e_volume = 2.0 * n / (n - 2.0);
  const double e_kernel = -2.0 / (n - 2.0);

  const GridSpinor g = t.to_grid(psi);
  const GridSpinor dg = t.to_grid(t.dirac_apply(psi));

  auto energy = [&](const GridReal& uu) {
    GridReal quad(uu.size()), sigma(uu.size());
    for (Eigen::Index x = 0; x < uu.size(); ++x) {
      const double w = std::pow(uu[x], e_volume);
      const auto psit = g.row(x) * std::pow(uu[x], e_spinor);
      const auto dpsit = dg.row(x) * std::pow(uu[x], e_dirac);
      quad[x] = psit.dot(dpsit).real() * w;
      sigma[x] = std::pow(uu[x], e_kernel) * psit.squaredNorm() * w;
    }
    const GridReal vs = t.kernel_apply(k, sigma);
    return 0.5 * t.integrate(quad) - 0.25 * t.integrate(vs.cwiseProduct(sigma));
  };
  const double jg = energy(GridReal::Ones(u.size()));
  const double jt = energy(u);
  return std::abs(jt - jg) / std::abs(jg);
}

}  // namespace ndirac

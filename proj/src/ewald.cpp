#include "ndirac/ewald.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "ndirac/errors.hpp"
#include "ndirac/lattice.hpp"
#include "ndirac/quadrature.hpp"

namespace ndirac {

namespace {

constexpr double kCut = 40.0;  // exp(-40) ~ 4e-18

double riesz_h(int n) {
  return 1.0 / (std::pow(2.0, n - 2) * std::pow(std::numbers::pi, 0.5 * n) * std::tgamma(0.5 * n - 1.0));
}

// Mean of e^{i q.z} over |z| = t in R^n, x = |q| t.
double plane_wave_mean(int n, double x) {
  if (x < 1e-4) return 1.0 - x * x / (2.0 * n);
  const double nu = 0.5 * n - 1.0;
  return std::tgamma(0.5 * n) * std::pow(2.0 / x, nu) * std::cyl_bessel_j(nu, x);
}

}  // namespace

PeriodicKernel::PeriodicKernel(int n, KernelSpec k, double alpha) : n_(n), k_(k), alpha_(alpha) {
  if (n < 3) throw ContractViolation("PeriodicKernel: n must be at least 3");
  if (!(alpha > 0)) throw ContractViolation("PeriodicKernel: alpha must be positive");
  if (k.kind == KernelKind::screened_bessel && !(k.mass > 0))
    throw ContractViolation("PeriodicKernel: screening mass must be positive");
  s_ = 0.5 * (n - 2);
  h_ = riesz_h(n);
  const double vol = std::pow(2.0 * std::numbers::pi, -n);
  const double m2 = k.kind == KernelKind::screened_bessel ? k.mass * k.mass : 0.0;
  auto weight = [&](double q2) {
    return vol * std::pow(q2 + m2, -s_) * boost::math::gamma_q(s_, alpha_ * (q2 + m2));
  };

  const double q2max = kCut / alpha_;
  for (const auto& q : lattice_ball(n, q2max)) {
    // keep the lexicographically positive member of each pair
    int first = 0;
    while (first < n && q[static_cast<std::size_t>(first)] == 0) ++first;
    if (first == n || q[static_cast<std::size_t>(first)] < 0) continue;
    Vec v(n);
    double q2 = 0;
    for (int i = 0; i < n; ++i) {
      v[i] = q[static_cast<std::size_t>(i)];
      q2 += v[i] * v[i];
    }
    q_.push_back(v);
    qcoef_.push_back(2.0 * weight(q2));
  }
  const auto qcount = shell_counts(n, std::vector<int>(static_cast<std::size_t>(n), 0),
                                   4 * static_cast<std::int64_t>(q2max));
  for (std::size_t key = 4; key < qcount.size(); key += 4)
    if (qcount[key]) qshells_.push_back({std::sqrt(key / 4.0), static_cast<double>(qcount[key]) * weight(key / 4.0)});

  const double reach = std::sqrt(4.0 * alpha_ * kCut) + 2.0 * std::numbers::pi * (1.0 + 0.5 * std::sqrt(n));
  const double m2max = std::pow(reach / (2.0 * std::numbers::pi), 2);
  for (const auto& m : lattice_ball(n, m2max)) {
    Vec v(n);
    bool zero = true;
    for (int i = 0; i < n; ++i) {
      v[i] = 2.0 * std::numbers::pi * m[static_cast<std::size_t>(i)];
      zero = zero && m[static_cast<std::size_t>(i)] == 0;
    }
    if (!zero) images_.push_back(v);
  }
  const auto mcount = shell_counts(n, std::vector<int>(static_cast<std::size_t>(n), 0),
                                   4 * static_cast<std::int64_t>(m2max));
  for (std::size_t key = 4; key < mcount.size(); key += 4)
    if (mcount[key])
      mshells_.push_back({2.0 * std::numbers::pi * std::sqrt(key / 4.0), static_cast<double>(mcount[key])});
}

double PeriodicKernel::zero_mode_term() const {
  const double vol = std::pow(2.0 * std::numbers::pi, -n_);
  double sub;
  if (k_.kind == KernelKind::periodized_riesz) {
    sub = std::pow(alpha_, s_) / (s_ * std::tgamma(s_));
  } else {
    const double m2 = k_.mass * k_.mass;
    sub = std::pow(m2, -s_) * boost::math::gamma_p(s_, alpha_ * m2);
  }
  return vol * (k_.mu - sub);
}

double PeriodicKernel::image_term(double d) const {
  const double x = d * d / (4.0 * alpha_);
  if (x > kCut + 5.0) return 0.0;
  if (k_.kind == KernelKind::periodized_riesz) return h_ / (d * d) * std::exp(-x);
  const double m2 = k_.mass * k_.mass;
  const double c = 0.25 * h_;
  auto f = [&](double t) { return t <= 0 ? 0.0 : std::exp(-d * d / (4.0 * t) - t * m2) / (t * t); };
  const double t0 = d * d / 4.0;
  std::vector<double> pts{0.0};
  for (double p : {0.05 * t0, 0.5 * t0, 2.0 * t0})
    if (p < alpha_) pts.push_back(p);
  pts.push_back(alpha_);
  return c * integrate_pieces(f, pts, 1e-12, 0.0, 18, "screened image term");
}

double PeriodicKernel::image_term_minus_riesz(double d) const {
  const double x = d * d / (4.0 * alpha_);
  const double ratio = x == 0.0 ? -1.0 : std::expm1(-x) / x;
  const double riesz_part = h_ / (4.0 * alpha_) * ratio;
  if (k_.kind == KernelKind::periodized_riesz) return riesz_part;
  if (d == 0.0) throw ConvergenceError("screened kernel: remainder is logarithmically singular at 0");
  const double m2 = k_.mass * k_.mass;
  auto f = [&](double t) {
    return t <= 0 ? 0.0 : std::exp(-d * d / (4.0 * t)) * std::expm1(-t * m2) / (t * t);
  };
  const double t0 = d * d / 4.0;
  std::vector<double> pts{0.0};
  for (double p : {0.05 * t0, 0.5 * t0, 2.0 * t0, 20.0 * t0})
    if (p < alpha_) pts.push_back(p);
  pts.push_back(alpha_);
  return 0.25 * h_ * integrate_pieces(f, pts, 1e-12, 1e-300, 18, "screened remainder") + riesz_part;
}

double PeriodicKernel::value(const Vec& z) const {
  double v = zero_mode_term();
  for (std::size_t i = 0; i < q_.size(); ++i) v += qcoef_[i] * std::cos(q_[i].dot(z));
  v += image_term(z.norm());
  for (const auto& m : images_) v += image_term((z + m).norm());
  return v;
}

double PeriodicKernel::remainder(const Vec& z) const {
  double v = zero_mode_term();
  for (std::size_t i = 0; i < q_.size(); ++i) v += qcoef_[i] * std::cos(q_[i].dot(z));
  v += image_term_minus_riesz(z.norm());
  for (const auto& m : images_) v += image_term((z + m).norm());
  return v;
}

double PeriodicKernel::remainder_mean(double t) const {
  static thread_local int cached_n = -1;
  static thread_local Rule rule;
  if (cached_n != n_) {
    rule = sphere_angle_rule(n_, 8, 20);
    cached_n = n_;
  }
  double v = zero_mode_term();
  for (const auto& [q, w] : qshells_) v += w * plane_wave_mean(n_, q * t);
  v += image_term_minus_riesz(t);
  for (const auto& [r, cnt] : mshells_) {
    double mean = 0;
    for (std::size_t i = 0; i < rule.size(); ++i)
      mean += rule.w[i] * image_term(std::sqrt(std::max(0.0, t * t + r * r + 2.0 * t * r * rule.x[i])));
    v += cnt * mean;
  }
  return v;
}

double PeriodicKernel::mass() const {
  if (k_.kind != KernelKind::periodized_riesz)
    throw ConvergenceError("screened kernel has no finite near-diagonal constant (log singularity)");
  double v = zero_mode_term();
  for (const auto& [q, w] : qshells_) v += w;
  v += -h_ / (4.0 * alpha_);
  for (const auto& [r, cnt] : mshells_) v += cnt * image_term(r);
  return v;
}

MassEstimate mass_constant(int n, const KernelSpec& k, double r0, int levels, double tol) {
  PeriodicKernel ker(n, k);
  MassEstimate est;
  Vec e = Vec::Zero(n);
  e[0] = 1.0;
  for (int j = 0; j < levels; ++j) {
    const double r = r0 * std::pow(0.5, j);
    est.radii.push_back(r);
    est.samples.push_back(ker.remainder(r * e));
  }
  // Richardson in h = r^2, ratio 4 per level.
  std::vector<double> t = est.samples;
  std::vector<double> diag{t.back()};
  for (int col = 1; col < levels; ++col) {
    const double f = std::pow(4.0, col);
    for (int j = levels - 1; j >= col; --j) t[j] = (f * t[j] - t[j - 1]) / (f - 1.0);
    diag.push_back(t[levels - 1]);
  }
  est.value = diag.back();
  est.spread = std::abs(diag[diag.size() - 1] - diag[diag.size() - 2]);
  // a log singularity shows up as a persistent drift of the raw samples
  const double drift = std::abs((est.samples[levels - 1] - est.samples[levels - 2]) -
                                0.25 * (est.samples[levels - 2] - est.samples[levels - 3]));
  if (est.spread > tol * std::max(1.0, std::abs(est.value)) || drift > 1e3 * tol * std::max(1.0, std::abs(est.value)))
    throw ConvergenceError("mass_constant: extrapolation did not settle (spread " + std::to_string(est.spread) +
                           ", drift " + std::to_string(drift) + ")");
  return est;
}

double near_diagonal_remainder(int n, const KernelSpec& k, double r) {
  PeriodicKernel ker(n, k);
  Vec e = Vec::Zero(n);
  e[0] = r;
  return ker.remainder(e);
}

}  // namespace ndirac

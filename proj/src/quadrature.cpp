#include "ndirac/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ndirac/errors.hpp"

namespace ndirac {

namespace bq = boost::math::quadrature;

double integrate(const RealFn& f, double a, double b, double rel_tol, double abs_tol, unsigned max_depth,
                 const std::string& what) {
  if (a == b) return 0.0;
  rel_tol = std::max(rel_tol, 1e-12);
  double err = 0.0;
  double l1 = 0.0;
  double v = 0.0;
  if (std::isinf(b)) {
    v = bq::gauss_kronrod<double, 31>::integrate(f, a, b, max_depth, rel_tol, &err, &l1);
  } else {
    // Boost reports sub-interval errors without the interval scale factor, so
    // integrate over [-1, 1] where that factor is one at the top level.
    const double h = 0.5 * (b - a), c = 0.5 * (b + a);
    auto g = [&](double t) { return h * f(c + h * t); };
    v = bq::gauss_kronrod<double, 31>::integrate(g, -1.0, 1.0, max_depth, rel_tol, &err, &l1);
  }
  if (!std::isfinite(v) || err > std::max(1e4 * rel_tol * l1, abs_tol)) {
    std::ostringstream os;
    os << what << ": quadrature did not converge on [" << a << ", " << b << "], estimate " << v
       << ", error " << err << ", L1 " << l1 << ", tol " << rel_tol;
    throw ConvergenceError(os.str());
  }
  return v;
}

double integrate_pieces(const RealFn& f, const std::vector<double>& points, double rel_tol, double abs_tol,
                        unsigned max_depth, const std::string& what) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i)
    total += integrate(f, points[i], points[i + 1], rel_tol, abs_tol, max_depth, what);
  return total;
}

double Rule::apply(const RealFn& f) const {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * f(x[i]);
  return s;
}

namespace {

template <int N>
Rule unit_rule() {
  Rule r;
  const auto& xs = bq::gauss<double, N>::abscissa();
  const auto& ws = bq::gauss<double, N>::weights();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] == 0.0) {
      r.x.push_back(0.0);
      r.w.push_back(ws[i]);
    } else {
      r.x.push_back(xs[i]);
      r.w.push_back(ws[i]);
      r.x.push_back(-xs[i]);
      r.w.push_back(ws[i]);
    }
  }
  return r;
}

const Rule& cached_unit_rule(int order) {
  static const Rule r10 = unit_rule<10>();
  static const Rule r20 = unit_rule<20>();
  static const Rule r30 = unit_rule<30>();
  switch (order) {
    case 10: return r10;
    case 20: return r20;
    case 30: return r30;
    default: throw std::invalid_argument("Gauss-Legendre order must be 10, 20 or 30");
  }
}

}  // namespace

Rule gauss_legendre(int order, double a, double b) {
  const Rule& u = cached_unit_rule(order);
  Rule r;
  const double h = 0.5 * (b - a), c = 0.5 * (b + a);
  for (std::size_t i = 0; i < u.x.size(); ++i) {
    r.x.push_back(c + h * u.x[i]);
    r.w.push_back(h * u.w[i]);
  }
  return r;
}

Rule composite_rule(const std::vector<double>& breaks, int order) {
  Rule r;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    Rule p = gauss_legendre(order, breaks[i], breaks[i + 1]);
    r.x.insert(r.x.end(), p.x.begin(), p.x.end());
    r.w.insert(r.w.end(), p.w.begin(), p.w.end());
  }
  return r;
}

Rule sphere_angle_rule(int n, int panels, int order) {
  std::vector<double> br;
  for (int i = 0; i <= panels; ++i) br.push_back(std::numbers::pi * i / panels);
  Rule r = composite_rule(br, order);
  double total = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    r.w[i] *= std::pow(std::sin(r.x[i]), n - 2);
    total += r.w[i];
  }
  for (double& w : r.w) w /= total;
  for (double& x : r.x) x = std::cos(x);
  return r;
}

}  // namespace ndirac

namespace ndirac {

double riesz_angular_mean(int n, double u) {
  if (u < 0.0 || u > 1.0) throw std::invalid_argument("riesz_angular_mean: u outside [0, 1]");
  const double z = u * u;
  if (n % 2 == 0) {
    // (-m)_k / (n/2)_k z^k, m = n/2 - 2
    const int m = n / 2 - 2;
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < m; ++k) {
      term *= (k - m) / (0.5 * n + k) * z;
      sum += term;
    }
    return sum;
  }
  if (u < 0.5) {
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < 200 && std::abs(term) > 1e-18; ++k) {
      term *= (k + 2.0 - 0.5 * n) / (0.5 * n + k) * z;
      sum += term;
    }
    return sum;
  }
  // Odd n: (1 - c^2)^p / (a - b c) with p = (n - 3) / 2, split as polynomial plus
  // a logarithm around the pole c = r = a / b >= 1.
  const int p = (n - 3) / 2;
  const double b = 2.0 * u, r = (1.0 + z) / b;
  std::vector<double> poly(static_cast<std::size_t>(2 * p + 1), 0.0);  // coefficients of (1 - c^2)^p
  double binom = 1.0;
  for (int k = 0; k <= p; ++k) {
    poly[static_cast<std::size_t>(2 * k)] = (k % 2 ? -1.0 : 1.0) * binom;
    binom = binom * (p - k) / (k + 1);
  }
  // Synthetic division by (c - r): poly = (c - r) q + rem.
  const std::size_t deg = poly.size() - 1;
  std::vector<double> q(deg, 0.0);
  double carry = 0.0;
  for (std::size_t k = deg; k >= 1; --k) {
    carry = poly[k] + carry * r;
    q[k - 1] = carry;
  }
  const double rem = poly[0] + carry * r;
  double qint = 0.0;
  for (std::size_t k = 0; k < q.size(); k += 2) qint += 2.0 * q[k] / (k + 1.0);
  const double log_term = p > 0 && !(r > 1.0) ? 0.0 : rem * std::log((r - 1.0) / (r + 1.0));
  const double num = -(qint + log_term) / b;
  double den = 0.0;
  for (std::size_t k = 0; k < poly.size(); k += 2) den += 2.0 * poly[k] / (k + 1.0);
  return num / den;
}

double riesz_radial_potential(int n, const RealFn& g, double r, std::vector<double> breaks, bool to_infinity,
                              double rel_tol, double abs_tol) {
  auto integrand = [&](double s) {
    if (s == 0.0) return 0.0;
    const double hi = std::max(r, s), lo = std::min(r, s);
    return g(s) * std::pow(s, n - 1.0) * riesz_angular_mean(n, lo / hi) / (hi * hi);
  };
  breaks.push_back(0.0);
  if (r > 0.0) breaks.push_back(r);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  if (to_infinity) breaks.push_back(std::numeric_limits<double>::infinity());
  const double area = 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
  return area * integrate_pieces(integrand, breaks, rel_tol, abs_tol, 18, "radial Riesz potential");
}

}  // namespace ndirac

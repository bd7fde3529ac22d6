#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ndirac {

using RealFn = std::function<double(double)>;

// Adaptive Gauss-Kronrod on [a, b]; b may be +infinity. Throws ConvergenceError
// when the final error estimate exceeds max(1e4 rel_tol |I|_1, abs_tol) (sub-interval errors
// are over-estimated, so the check is deliberately loose);
// rel_tol is clamped below at 1e-12.
double integrate(const RealFn& f, double a, double b, double rel_tol = 1e-11, double abs_tol = 0.0,
                 unsigned max_depth = 18, const std::string& what = "integral");

// Same, summed over consecutive sub-intervals [p_0, p_1], ..., [p_{k-1}, p_k].
double integrate_pieces(const RealFn& f, const std::vector<double>& points, double rel_tol = 1e-11,
                        double abs_tol = 0.0, unsigned max_depth = 18, const std::string& what = "integral");

// Fixed node/weight rule.
struct Rule {
  std::vector<double> x;
  std::vector<double> w;

  double apply(const RealFn& f) const;
  std::size_t size() const { return x.size(); }
};

// Gauss-Legendre rule of the given order (one of 10, 20, 30) mapped to [a, b].
Rule gauss_legendre(int order, double a = -1.0, double b = 1.0);

// Composite Gauss-Legendre over consecutive break points.
Rule composite_rule(const std::vector<double>& breaks, int order);

// Average of g(cos theta) over the unit sphere S^{n-1}, i.e. with weight
// sin^{n-2}(theta) on [0, pi], normalized to one.
Rule sphere_angle_rule(int n, int panels, int order = 20);

}  // namespace ndirac

namespace ndirac {

// Mean of (1 + u^2 - 2 u cos theta)^{-1} over S^{n-1}, 0 <= u <= 1; this is
// 2F1(1, 2 - n/2; n/2; u^2), a polynomial for even n.
double riesz_angular_mean(int n, double u);

// int_{R^n} |x - y|^{-2} g(|y|) dy at |x| = r for a radial profile g.
// `breaks` are extra break points in s (kinks or scale changes of g); the
// integration runs to the last break, or to infinity when `to_infinity`.
double riesz_radial_potential(int n, const RealFn& g, double r, std::vector<double> breaks, bool to_infinity,
                              double rel_tol = 1e-11, double abs_tol = 0.0);

}  // namespace ndirac

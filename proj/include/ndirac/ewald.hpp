#pragma once

#include <vector>

#include "ndirac/clifford.hpp"
#include "ndirac/kernel.hpp"

namespace ndirac {

// Real-space evaluation of the torus kernel by Ewald splitting with parameter alpha:
// the Fourier tail carries Gamma(s, alpha |q|^2) weights, the image sum carries the
// Gaussian-damped singular part, s = (n - 2)/2.
class PeriodicKernel {
 public:
  PeriodicKernel(int n, KernelSpec k, double alpha = 1.0);

  int n() const { return n_; }
  const KernelSpec& spec() const { return k_; }

  double value(const Vec& z) const;
  // value(z) - h_n |z|^{-2}, with the origin image removed analytically.
  double remainder(const Vec& z) const;
  // Mean of remainder over the sphere |z| = t.
  double remainder_mean(double t) const;
  // Limit of remainder at z -> 0 (periodized_riesz only; screened kernels have a
  // logarithmic singularity there and throw ConvergenceError).
  double mass() const;

 private:
  double image_term(double d) const;             // origin-centred short-range part
  double image_term_minus_riesz(double d) const;  // image_term(d) - h_n d^{-2}
  double zero_mode_term() const;

  int n_;
  KernelSpec k_;
  double alpha_;
  double s_;
  double h_;
  std::vector<Vec> q_;          // Fourier points, one of each +-q pair
  std::vector<double> qcoef_;   // 2 * weight for the pair
  std::vector<Vec> images_;     // 2 pi m, m != 0
  std::vector<std::pair<double, double>> qshells_;   // (|q|, N * weight)
  std::vector<std::pair<double, double>> mshells_;   // (2 pi |m|, N)
};

// Near-diagonal constant by Richardson extrapolation of remainder(r e_1) in r^2
// over r = r0 2^{-j}; throws ConvergenceError when the table does not settle.
struct MassEstimate {
  double value = 0;
  double spread = 0;  // last two extrapolants
  std::vector<double> radii;
  std::vector<double> samples;
};

MassEstimate mass_constant(int n, const KernelSpec& k, double r0 = 0.4, int levels = 6, double tol = 1e-7);

// remainder(r e_1); finite for every kernel at r > 0.
double near_diagonal_remainder(int n, const KernelSpec& k, double r);

}  // namespace ndirac

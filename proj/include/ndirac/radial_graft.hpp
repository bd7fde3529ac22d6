#pragma once

#include <memory>
#include <vector>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "ndirac/constants.hpp"
#include "ndirac/ewald.hpp"
#include "ndirac/rate_fit.hpp"
#include "ndirac/torus.hpp"

namespace ndirac {

struct GraftOptions {
  double cutoff_radius = 1.4;  // eta = 1 on |x| <= dc, 0 beyond 2 dc
  double xi_factor = 15.0;     // lattice frequencies up to xi_factor / eps
  double rel_tol = 1e-11;
  int spectral_modes = 0;      // > 0: also evaluate the truncated spectral graft at this L
};

struct GraftPoint {
  double eps = 0;
  double quadratic = 0;  // Re int <D phi, phi>
  double quartic = 0;    // int (V * |phi|^2) |phi|^2
  double energy = 0;
  double gap = 0;        // J(Psi) - energy
  double grad_norm = 0;  // H^{-1/2} norm of the residual with the radial part of the potential error
  double nonradial_bound = 0;  // bound on the H^{-1/2} norm of the dropped non-radial part
  double l2_sq = 0;      // ||phi||_{L^2}^2
  std::int64_t shells = 0;
  double spectral_energy = 0;  // NaN unless spectral_modes > 0
  double spectral_grad = 0;
};

// Energy and gradient of the grafted bubble eta Psi_eps on the flat torus, exploiting
// radial symmetry of the density about the bubble centre. The Euclidean part of the
// quartic term uses V_R * |Psi_eps|^2 = n f_eps; the torus correction enters through
// the spherical mean of the Ewald remainder.
class RadialGraft {
 public:
  RadialGraft(const TorusSpec& spec, const KernelSpec& k, const DimensionalConstants& c, GraftOptions opt = {});

  GraftPoint measure(double eps) const;
  // Spherical mean of the kernel remainder, interpolated.
  double remainder_mean(double t) const;
  // Spherical mean of (R_T * rho)(x) over |x| = r for the density of eta Psi_eps.
  double remainder_convolution_mean(double eps, double r) const;
  // int rho and int |y|^2 rho for the density of eta Psi_eps.
  std::pair<double, double> density_moments(double eps) const;
  const PeriodicKernel& kernel() const { return ker_; }
  double mass() const { return mass_; }

 private:
  struct Nodes;
  Nodes nodes(double eps) const;

  TorusSpec spec_;
  KernelSpec k_;
  DimensionalConstants c_;
  GraftOptions opt_;
  PeriodicKernel ker_;
  double mass_ = 0;
  std::unique_ptr<boost::math::interpolators::cardinal_cubic_b_spline<double>> rbar_;
  std::vector<double> nonradial_;  // running max of |R_T - mean| up to each radius
  double nonradial_step_ = 0;
};

struct SweepResult {
  std::vector<GraftPoint> points;
  RateFit grad_fit;
  RateFit gap_fit;
  bool gap_positive = false;
  bool grad_monotone = false;
  double gap_log_coefficient_fixed = 0;  // fitted with exponent n - 2
  double mass = 0;
};

SweepResult graft_sweep(const std::vector<double>& eps_list, const TorusSpec& spec, const KernelSpec& k,
                        const DimensionalConstants& c, const GraftOptions& opt = {});
RateFit gradient_decay_sweep(const std::vector<double>& eps_list, const TorusSpec& spec, const KernelSpec& k,
                             const DimensionalConstants& c, const GraftOptions& opt = {});
// Requires a positive mass; a sign change of the gap is reported through gap_positive.
SweepResult energy_gap_sweep(const std::vector<double>& eps_list, const TorusSpec& spec, const KernelSpec& k,
                             const DimensionalConstants& c, const GraftOptions& opt = {});

}  // namespace ndirac

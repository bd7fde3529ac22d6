#pragma once

#include <cstdint>

#include "ndirac/kernel.hpp"

namespace ndirac {

// Each suite returns raw maxima; callers apply their own tolerances.

struct CliffordSuite {
  int n = 0;
  int samples = 0;
  double anticommutation = 0;
  double skew_hermitian = 0;
};

CliffordSuite clifford_suite(int n, int samples, std::uint64_t seed);

struct BubbleSuite {
  int n = 0;
  int samples = 0;
  double dirac_residual = 0;      // max over random points
  double convolution_rel = 0;     // max over the four radii
  double route_disc = 0;          // quadratic vs quartic energy route
  double closed_form_disc = 0;    // quadratic route vs the closed-form energy
};

BubbleSuite bubble_suite(int n, int samples, std::uint64_t seed);

struct ConstantsSuite {
  int n = 0;
  double b_n_disc = 0;       // ball-volume vs sphere-area form
  double d4_error = 0;       // |d_4 - 1|, NaN for n != 4
  double riesz_spread = 0;   // C_n across radii, relative
  double I_n_disc = 0;       // quadrature vs Beta closed form
  double a_n_disc_ball = 0;  // diagnostics of the a_n / Ybar chain
  double a_n_disc_sphere = 0;
  double ybar_disc = 0;
};

ConstantsSuite constants_suite(int n);

struct ContractionSuite {
  int n = 0;
  int tensors = 0;
  int points = 0;
  double max_residual = 0;
};

// Ricci-flat random tensors, points drawn from a ball of radius 1 around the centre.
ContractionSuite contraction_suite(int n, int tensors, int points, std::uint64_t seed);

struct CurvatureSuite {
  int n = 0;
  int samples = 0;
  double symmetry_defect = 0;
  double weyl_of_constant = 0;   // |W|^2 for constant curvature
  double omega_hermitian = 0;    // |Omega - Omega^dagger|
  double cnc_ricci = 0;
  double cnc_cyclic = 0;
  double cnc_quartic = 0;
  double cnc_laplacian = 0;
};

CurvatureSuite curvature_suite(int n, int samples, std::uint64_t seed);

struct ConformalSuite {
  int pairs = 0;
  double max_rel = 0;
  double constant_factor_rel = 0;  // u = 1.7
  double identity_rel = 0;         // u = 1
};

// Random (psi, u) pairs on T^4 with u in [0.5, 2].
ConformalSuite conformal_suite(int L, int pairs, std::uint64_t seed, const KernelSpec& k = {});

struct TauSuite {
  int fields = 0;
  int perturbations = 0;
  double max_residual = 0;       // projected residual, H^{-1/2}
  double min_bound_slack = 0;    // min over fields of (1/2 int int V |psi|^2 |psi|^2 - |tau|_{1/2}^2)
  int bound_violations = 0;
  double min_max_gap = 0;        // min over perturbations of J(psi + tau) - J(psi + h)
  int maximality_violations = 0;
};

TauSuite tau_suite(int L, int fields, int perturbations, double amplitude, std::uint64_t seed,
                   const KernelSpec& k = {});

struct GradientSuite {
  int fields = 0;
  int directions = 0;
  double max_rel = 0;
};

// Central differences with step h against the L^2 pairing of the residual.
GradientSuite gradient_suite(int L, int fields, int directions, double h, std::uint64_t seed,
                             const KernelSpec& k = {});

}  // namespace ndirac

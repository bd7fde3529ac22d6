#pragma once

#include "ndirac/clifford.hpp"
#include "ndirac/constants.hpp"

namespace ndirac {

// Psi(x) = eps^{-(n-1)/2} f^{n/2} (psi0 - y . psi0), y = (x - center)/eps, f = 1/(1+|y|^2).
struct Bubble {
  int n = 0;
  double eps = 1.0;
  Vec center;
  Spinor psi0;
  CliffordRep rep;
};

// First basis spinor scaled so that |psi0|^2 = a_n.
Spinor default_psi0(int n, const DimensionalConstants& c);
Bubble make_bubble(const DimensionalConstants& c, double eps = 1.0);
Bubble make_bubble(const DimensionalConstants& c, double eps, const Vec& center, const Spinor& psi0);

Spinor eval(const Bubble& b, const Vec& x);
// d/dx_j Psi(x), j zero-based.
Spinor grad_eval(const Bubble& b, const Vec& x, int j);
// sum_j gamma_j d_j Psi(x).
Spinor dirac_eval(const Bubble& b, const Vec& x);
// |D Psi - lambda eps^{-1} f Psi| with the given eigenvalue factor lambda.
double dirac_residual(const Bubble& b, const Vec& x, double lambda);
// The same with lambda = n, the factor for which Psi is an exact eigen-solution.
double dirac_residual(const Bubble& b, const Vec& x);

struct ConvolutionCheck {
  double lhs = 0;
  double rhs = 0;
  double rel_err = 0;
};

// lhs = int h_n |x-y|^{-2} |Psi(y)|^2 dy, rhs = c_n^{1/(n-1)} |Psi(x)|^{2/(n-1)}.
ConvolutionCheck convolution_check(const Bubble& b, const Vec& x, const DimensionalConstants& c);

// J(Psi) = (1/4) int <D Psi, Psi> = lambda a_n |S^{n-1}| I_n / 4.
double bubble_energy(int n, const DimensionalConstants& c);

struct EnergyRoutes {
  double quadratic = 0;  // int <D Psi, Psi>
  double quartic = 0;    // int (V * |Psi|^2) |Psi|^2
  double energy_from_quadratic = 0;
  double energy_from_quartic = 0;
  double closed_form = 0;
  double route_disc = 0;  // relative quadratic/quartic mismatch
};

// Both energy integrals by radial quadrature (the quartic one nests the
// singular convolution quadrature).
EnergyRoutes bubble_energy_routes(const Bubble& b, const DimensionalConstants& c);

// int |Psi|^{2n/(n-1)} dx.
double critical_norm(const Bubble& b);

}  // namespace ndirac

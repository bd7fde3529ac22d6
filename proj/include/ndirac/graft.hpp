#pragma once

#include "ndirac/bubble.hpp"
#include "ndirac/constants.hpp"
#include "ndirac/torus.hpp"

namespace ndirac {

// C^2 radial cutoff: 1 on [0, dc], 0 on [2 dc, inf), quintic smoothstep between.
double cutoff_eta(double r, double dc);
double cutoff_eta_prime(double r, double dc);

// Centre (pi, ..., pi) of the fundamental cell.
Vec cell_center(int n);

// eta(x - c) Psi_eps(x) sampled on the grid and truncated to the mode set; the
// Bourguignon-Gauduchon corrections vanish on the flat torus.
SpinorField graft_test_spinor(const Torus& t, double eps, double dc, const DimensionalConstants& c);
SpinorField graft_test_spinor(const Torus& t, double eps, double dc, const Bubble& b);

// The same sample before truncation, as grid values of the periodic part.
GridSpinor graft_grid_values(const Torus& t, double dc, const Bubble& b);

}  // namespace ndirac

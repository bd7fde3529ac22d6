#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ndirac/bubble.hpp"
#include "ndirac/clifford.hpp"

namespace ndirac {

// Dense row-major real tensor with all extents equal to n.
struct Tensor {
  int n = 0;
  int rank = 0;
  std::vector<double> data;

  Tensor() = default;
  Tensor(int n_, int rank_);
  double& operator()(int i, int j) { return data[idx({i, j})]; }
  double operator()(int i, int j) const { return data[idx({i, j})]; }
  double& operator()(int i, int j, int k) { return data[idx({i, j, k})]; }
  double operator()(int i, int j, int k) const { return data[idx({i, j, k})]; }
  double& operator()(int i, int j, int k, int l) { return data[idx({i, j, k, l})]; }
  double operator()(int i, int j, int k, int l) const { return data[idx({i, j, k, l})]; }
  double& operator()(int i, int j, int k, int l, int m) { return data[idx({i, j, k, l, m})]; }
  double operator()(int i, int j, int k, int l, int m) const { return data[idx({i, j, k, l, m})]; }
  double norm_sq() const;

 private:
  std::size_t idx(std::initializer_list<int> ix) const;
};

// Curvature jet at a point. Conventions: R_ijkl = kappa (d_ik d_jl - d_il d_jk)
// on a space form of curvature kappa, Ric_jl = sum_i R_ijil, R = tr Ric.
struct AlgCurvature {
  int n = 0;
  Tensor riemann;    // R_ijkl
  Tensor ricci;      // R_ij
  double scalar = 0; // R
  Tensor d_ricci;    // R_ij,k
  Tensor hess_scalar;  // R_,ij
  Tensor d_riemann;  // R_ijkl,m
  Tensor dd_ricci;   // R_ij,kl
};

enum class CurvatureKind { generic, ricci_flat, constant, flat, conformal_normal };

struct CurvatureOptions {
  CurvatureKind kind = CurvatureKind::generic;
  double kappa = 1.0;  // for CurvatureKind::constant
};

// Deterministic per seed. Riemann symmetries and the first Bianchi identity hold
// by construction; ricci and scalar are the traces. ricci_flat projects every
// curvature-type slice onto its Weyl part; conformal_normal additionally builds
// the jet so that all conformal-normal-coordinate identities hold.
AlgCurvature random_curvature(int n, std::uint64_t seed, CurvatureOptions opt = {});

// Largest violation of the algebraic symmetries and trace relations.
double curvature_symmetry_defect(const AlgCurvature& c);

// Kulkarni-Nomizu product (h o k)_ijkl = h_ik k_jl + h_jl k_ik - h_il k_jk - h_jk k_il.
Tensor kulkarni_nomizu(const Tensor& h, const Tensor& k);
Tensor weyl_tensor(const Tensor& riemann);
double weyl_norm_sq(const AlgCurvature& c);

// b_ij - delta_ij to cubic order.
Eigen::MatrixXd b_matrix_expansion(const AlgCurvature& c, const Vec& x);
// X to quadratic order.
Vec x_field_expansion(const AlgCurvature& c, const Vec& x);
// Coefficients C_ijk(x) of the cubic Clifford term, zero unless i, j, k distinct.
Tensor omega_coefficients(const AlgCurvature& c, const Vec& x);
// sum C_ijk(x) gamma_i gamma_j gamma_k.
CMat omega_expansion(const AlgCurvature& c, const Vec& x, const CliffordRep& rep);
// A_ijkl = C_ijk(x) x_l, the array that pairs the cubic term with x . Psi_0.
Tensor omega_quartic_coefficients(const AlgCurvature& c, const Vec& x);

// |sum R_{i a b j} x^a x^b gamma_i d_j Psi(x)|.
double contraction_residual(const AlgCurvature& c, const Bubble& b, const Vec& x);

// sum A_ijkl Re(gamma_i gamma_j gamma_k gamma_l psi0, psi0).
double quartic_trace(const Tensor& a, const Spinor& psi0, const CliffordRep& rep);

struct CncReport {
  double ricci_defect = 0;     // max |R_ij|
  double cyclic_defect = 0;    // max |R_ij,k + R_jk,i + R_ki,j|
  double quartic_defect = 0;   // max over sample directions of the quartic form
  double laplacian_defect = 0; // |R_,kk + |W|^2 / 6|
  bool ricci_flat = false;
  bool cyclic = false;
  bool quartic = false;
  bool laplacian = false;
  bool all() const { return ricci_flat && cyclic && quartic && laplacian; }
};

CncReport cnc_predicates(const AlgCurvature& c, double tol = 1e-10, int directions = 32,
                         std::uint64_t seed = 7);

enum class GreenRegime { low_dim_or_lcf, six, high };

std::string to_string(GreenRegime r);

struct GreenExpansion {
  int n = 0;
  GreenRegime regime = GreenRegime::low_dim_or_lcf;
  double A = 0;
  double weyl_sq = 0;
  Eigen::MatrixXd hess_scalar;
};

// Displayed polynomial/log part of the expansion; remainders are dropped.
double green_asymptotic(const GreenExpansion& g, double r, const Vec& direction);

}  // namespace ndirac

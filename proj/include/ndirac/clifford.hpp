#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ndirac {

using cplx = std::complex<double>;
using Spinor = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXd;

// Complex spinor dimension 2^floor(n/2).
int spinor_dim(int n);

// Gamma matrices with g_i g_j + g_j g_i = -2 delta_ij and g_i^dagger = -g_i.
struct CliffordRep {
  int n = 0;
  int dim = 0;
  std::vector<CMat> gammas;

  const CMat& gamma(int i) const { return gammas.at(static_cast<std::size_t>(i)); }
};

// Pauli-ladder construction: gamma_i = i * e_i with e_{2k-1} = Z..Z X I..I,
// e_{2k} = Z..Z Y I..I and, for odd n, e_n = Z..Z. Supported for 2 <= n <= 10.
CliffordRep build_rep(int n);

// (sum_i v_i gamma_i) psi.
Spinor clifford_mul(const CliffordRep& rep, std::span<const double> v, const Spinor& psi);
Spinor clifford_mul(const CliffordRep& rep, const Vec& v, const Spinor& psi);

// The matrix sum_i v_i gamma_i.
CMat clifford_matrix(const CliffordRep& rep, std::span<const double> v);

// gamma_{i1} gamma_{i2} ... gamma_{ik} psi, indices 1-based, applied as a
// left-to-right matrix product.
Spinor multi_mul(const CliffordRep& rep, std::span<const int> indices, const Spinor& psi);
CMat multi_matrix(const CliffordRep& rep, std::span<const int> indices);

struct CliffordDefects {
  double anticommutation = 0;  // max |(g_i g_j + g_j g_i + 2 d_ij) psi| / |psi|
  double skew_hermitian = 0;   // max |(g_i psi, phi) + (psi, g_i phi)| / (|psi| |phi|)
};

CliffordDefects clifford_defects(const CliffordRep& rep, const Spinor& psi, const Spinor& phi);

// (a, b) = sum a_i conj(b_i); linear in the first argument.
inline cplx herm(const Spinor& a, const Spinor& b) { return b.dot(a); }
// <a, b> = Re (a, b).
inline double re_inner(const Spinor& a, const Spinor& b) { return herm(a, b).real(); }

}  // namespace ndirac

#include "ndirac/clifford.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ndirac {

namespace {

CMat pauli(char which) {
  CMat m = CMat::Zero(2, 2);
  const cplx i(0.0, 1.0);
  switch (which) {
    case 'I': m(0, 0) = 1.0; m(1, 1) = 1.0; break;
    case 'X': m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case 'Y': m(0, 1) = -i; m(1, 0) = i; break;
    case 'Z': m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    default: throw std::logic_error("pauli");
  }
  return m;
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

CMat ladder(const std::vector<char>& factors) {
  CMat m = CMat::Identity(1, 1);
  for (char f : factors) m = kron(m, pauli(f));
  return m;
}

void check_vector(const CliffordRep& rep, std::size_t vlen, const Spinor& psi) {
  if (static_cast<int>(vlen) != rep.n)
    throw std::invalid_argument("vector length " + std::to_string(vlen) +
                                " does not match dimension " + std::to_string(rep.n));
  if (psi.size() != rep.dim)
    throw std::invalid_argument("spinor length " + std::to_string(psi.size()) +
                                " does not match spinor dimension " + std::to_string(rep.dim));
}

}  // namespace

int spinor_dim(int n) { return 1 << (n / 2); }

CliffordRep build_rep(int n) {
  if (n < 2 || n > 10)
    throw std::invalid_argument("Clifford dimension must lie in [2, 10], got " + std::to_string(n));
  const int m = n / 2;
  CliffordRep rep;
  rep.n = n;
  rep.dim = spinor_dim(n);
  const cplx i(0.0, 1.0);
  for (int k = 0; k < m; ++k) {
    for (char p : {'X', 'Y'}) {
      std::vector<char> f(static_cast<std::size_t>(m), 'I');
      for (int j = 0; j < k; ++j) f[static_cast<std::size_t>(j)] = 'Z';
      f[static_cast<std::size_t>(k)] = p;
      rep.gammas.push_back(i * ladder(f));
    }
  }
  if (n % 2 == 1) rep.gammas.push_back(i * ladder(std::vector<char>(static_cast<std::size_t>(m), 'Z')));
  return rep;
}

CMat clifford_matrix(const CliffordRep& rep, std::span<const double> v) {
  if (static_cast<int>(v.size()) != rep.n)
    throw std::invalid_argument("vector length does not match Clifford dimension");
  CMat m = CMat::Zero(rep.dim, rep.dim);
  for (int j = 0; j < rep.n; ++j)
    if (v[static_cast<std::size_t>(j)] != 0.0) m += v[static_cast<std::size_t>(j)] * rep.gamma(j);
  return m;
}

Spinor clifford_mul(const CliffordRep& rep, std::span<const double> v, const Spinor& psi) {
  check_vector(rep, v.size(), psi);
  Spinor out = Spinor::Zero(rep.dim);
  for (int j = 0; j < rep.n; ++j)
    if (v[static_cast<std::size_t>(j)] != 0.0) out += v[static_cast<std::size_t>(j)] * (rep.gamma(j) * psi);
  return out;
}

Spinor clifford_mul(const CliffordRep& rep, const Vec& v, const Spinor& psi) {
  return clifford_mul(rep, std::span<const double>(v.data(), static_cast<std::size_t>(v.size())), psi);
}

CMat multi_matrix(const CliffordRep& rep, std::span<const int> indices) {
  CMat m = CMat::Identity(rep.dim, rep.dim);
  for (int idx : indices) {
    if (idx < 1 || idx > rep.n)
      throw std::out_of_range("Clifford index " + std::to_string(idx) + " outside 1.." + std::to_string(rep.n));
    m = m * rep.gamma(idx - 1);
  }
  return m;
}

Spinor multi_mul(const CliffordRep& rep, std::span<const int> indices, const Spinor& psi) {
  if (psi.size() != rep.dim) throw std::invalid_argument("spinor length does not match representation");
  return multi_matrix(rep, indices) * psi;
}

CliffordDefects clifford_defects(const CliffordRep& rep, const Spinor& psi, const Spinor& phi) {
  CliffordDefects d;
  const double np = psi.norm(), nq = phi.norm();
  for (int i = 0; i < rep.n; ++i) {
    const Spinor gp = rep.gamma(i) * psi;
    const Spinor gq = rep.gamma(i) * phi;
    d.skew_hermitian = std::max(d.skew_hermitian, std::abs(herm(gp, phi) + herm(psi, gq)) / (np * nq));
    for (int j = 0; j < rep.n; ++j) {
      Spinor r = rep.gamma(i) * (rep.gamma(j) * psi) + rep.gamma(j) * gp;
      if (i == j) r += 2.0 * psi;
      d.anticommutation = std::max(d.anticommutation, r.norm() / np);
    }
  }
  return d;
}

}  // namespace ndirac

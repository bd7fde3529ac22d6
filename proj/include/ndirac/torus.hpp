#pragma once

#include <memory>
#include <vector>

#include "ndirac/clifford.hpp"
#include "ndirac/kernel.hpp"

namespace ndirac {

// Flat torus R^n / (2 pi Z)^n with spin structure given by shifts delta_i in {0, 1/2}.
// Modes k in {-(L-1)/2 .. (L-1)/2}^n, row-major with the last axis fastest.
struct TorusSpec {
  int n = 4;
  int modes_per_axis = 9;
  std::vector<double> spin_shift;  // delta
  int grid_points_per_axis = 17;

  // Throws ConfigError naming the offending field.
  void validate() const;
  bool operator==(const TorusSpec&) const = default;
};

// Smallest 2,3,5-smooth integer >= at_least (fast FFT sizes).
int smooth_grid_size(int at_least);

// TorusSpec with delta = (1/2, 0, ..., 0) and the smallest fast grid >= 2L - 1.
TorusSpec default_spec(int n, int L);

// psi(x) = sum_k c_k e^{i (k + delta) x}; L^2 norm^2 = (2 pi)^n sum |c_k|^2.
// coeffs is (modes x spinor components).
struct SpinorField {
  TorusSpec spec;
  CMat coeffs;
};

// Grid values of the periodic part e^{-i delta x} psi(x), (grid points x components).
using GridSpinor = CMat;
using GridReal = Eigen::VectorXd;

class Torus {
 public:
  explicit Torus(TorusSpec spec);
  ~Torus();
  Torus(const Torus&) = delete;
  Torus& operator=(const Torus&) = delete;

  const TorusSpec& spec() const { return spec_; }
  const CliffordRep& rep() const { return rep_; }
  int n() const { return spec_.n; }
  int dim() const { return rep_.dim; }
  int mode_count() const { return static_cast<int>(xi_.size()); }
  int grid_size() const { return static_cast<int>(grid_total_); }
  const Vec& xi(int mode) const { return xi_[static_cast<std::size_t>(mode)]; }
  double xi_norm(int mode) const { return xi_norm_[static_cast<std::size_t>(mode)]; }
  int mode_index(const std::vector<int>& k) const;
  // Integer grid coordinates of flat grid index g.
  std::vector<int> grid_coords(int g) const;
  double cell_volume() const;  // (2 pi / G)^n

  SpinorField zero() const;
  // Coefficients with independent standard normal real and imaginary parts,
  // scaled by (1 + |xi|^2)^{-decay/2}.
  SpinorField random(std::uint64_t seed, double decay = 0.0) const;

  SpinorField dirac_apply(const SpinorField& f) const;
  std::pair<SpinorField, SpinorField> split_projections(const SpinorField& f) const;
  SpinorField project_plus(const SpinorField& f) const;
  SpinorField project_minus(const SpinorField& f) const;
  // |D|^p applied mode-wise.
  SpinorField abs_dirac_power(const SpinorField& f, double p) const;
  // ( (2 pi)^n sum |xi|^{2s} |c|^2 )^{1/2}
  double sobolev_norm(const SpinorField& f, double s) const;
  double l2_norm(const SpinorField& f) const;
  // Re int <a, b> dx
  double inner(const SpinorField& a, const SpinorField& b) const;
  // Re int <D f, f> dx
  double quadratic_form(const SpinorField& f) const;

  GridSpinor to_grid(const SpinorField& f) const;
  // Forward transform and truncation to the mode set.
  SpinorField from_grid(const GridSpinor& g) const;
  GridReal density(const GridSpinor& g) const;
  // sum over the grid times the cell volume
  double integrate(const GridReal& v) const;
  GridReal kernel_apply(const KernelSpec& k, const GridReal& rho) const;

  void check(const SpinorField& f) const;
  // 2L - 1 grid points per axis make |psi|^2 and the projected product exact.
  bool dealiased() const;

 private:
  void fft(cplx* data, int howmany, bool forward) const;
  const std::vector<double>& symbol_table(const KernelSpec& k) const;

  TorusSpec spec_;
  CliffordRep rep_;
  std::vector<Vec> xi_;
  std::vector<double> xi_norm_;
  std::vector<long> mode_to_grid_;
  long grid_total_ = 0;
  struct Plans;
  std::unique_ptr<Plans> plans_;
  mutable KernelSpec cached_kernel_{};
  mutable std::vector<double> cached_symbol_;
};

// Relative deviation |J_gt(psi_t) - J_g(psi)| / |J_g(psi)| where every transformed
// quantity is built from the original ones through the conformal weights of u.
double conformal_bookkeeping_check(const Torus& t, const SpinorField& psi, const GridReal& u, const KernelSpec& k);

}  // namespace ndirac

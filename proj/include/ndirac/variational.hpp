#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ndirac/torus.hpp"

namespace ndirac {

enum class TauMethod { newton_cg, fixed_point };

struct SolverConfig {
  double tau_tol = 1e-10;     // H^{-1/2} norm of P^- residual
  int tau_max_iter = 60;      // Newton steps, or fixed-point sweeps
  TauMethod tau_method = TauMethod::newton_cg;
  double theta = 0.5;         // fixed-point damping
  double newton_tol = 1e-9;   // |d/dt J~(t psi)|
  int outer_max_iter = 400;
  double grad_tol = 1e-7;     // H^{-1/2} norm of the full residual at the minimizer
  double step0 = 1.0;
  int starts = 8;
  std::uint64_t seed = 1;
  bool disable_tau = false;   // tau forced to 0

  void validate() const;
};

struct EnergyParts {
  double quadratic = 0;  // Re int <D psi, psi>
  double quartic = 0;    // int (V * |psi|^2) |psi|^2
  double energy = 0;     // quadratic / 2 - quartic / 4
};

// Energy functional and its first two derivatives on one torus and kernel.
class Functional {
 public:
  Functional(const Torus& t, KernelSpec k);

  const Torus& torus() const { return t_; }
  const KernelSpec& kernel() const { return k_; }

  EnergyParts parts(const SpinorField& psi) const;
  double energy(const SpinorField& psi) const { return parts(psi).energy; }
  // D psi - P_L[(V * |psi|^2) psi]; its L^2 pairing is the derivative of the energy.
  SpinorField residual(const SpinorField& psi) const;
  // Second derivative at u applied to phi, as an L^2 representative.
  SpinorField hessian_apply(const SpinorField& u, const GridReal& potential, const GridSpinor& ugrid,
                            const SpinorField& phi) const;
  // V * |u|^2 on the grid together with the grid values of u.
  std::pair<GridReal, GridSpinor> potential(const SpinorField& u) const;

 private:
  const Torus& t_;
  KernelSpec k_;
};

double energy(const Functional& f, const SpinorField& psi);

struct Gradient {
  SpinorField residual;
  double magnitude = 0;  // sobolev_norm(residual, -1/2)
};

Gradient gradient(const Functional& f, const SpinorField& psi);

struct TauResult {
  SpinorField tau;
  double residual = 0;  // H^{-1/2} norm of P^- residual at psi + tau
  int iterations = 0;
};

// Maximizer of h -> J(psi_plus + h) over H^-. `warm` seeds the iteration.
TauResult tau_solve(const Functional& f, const SpinorField& psi_plus, const SolverConfig& cfg,
                    const SpinorField* warm = nullptr);

double reduced_energy(const Functional& f, const SpinorField& psi_plus, const SolverConfig& cfg);

struct NehariResult {
  double t_star = 0;
  double derivative = 0;  // d/dt J~(t psi) at t_star
  double value = 0;       // J~(t_star psi)
  SpinorField tau;        // tau(t_star psi)
  SpinorField residual;   // full residual at t_star psi + tau
  int evaluations = 0;
};

// d/dt J~(t psi) = Re int <residual(t psi + tau(t psi)), psi>.
double nehari_derivative(const Functional& f, const SpinorField& psi, double t, const SolverConfig& cfg,
                         SpinorField* tau_io = nullptr);

NehariResult nehari_scale(const Functional& f, const SpinorField& psi, const SolverConfig& cfg,
                          const SpinorField* warm_tau = nullptr, double t_guess = 0.0);

struct TraceRow {
  int start = 0;
  int iteration = 0;
  double value = 0;
  double gradient_norm = 0;
  double t_star = 0;
  double step = 0;
};

struct GroundStateReport {
  double delta0_estimate = 0;
  SpinorField minimizer;  // t* psi + tau on the Nehari manifold
  double gradient_norm = 0;
  double nehari_residual = 0;
  int iterations = 0;
  bool converged = false;
  int best_start = 0;
  std::vector<double> start_values;  // final value per start
  std::vector<bool> start_converged;
  std::vector<TraceRow> trace;
};

// Random unit-H^{1/2} element of H^+ with spectrally decaying coefficients.
SpinorField random_plus_field(const Torus& t, std::uint64_t seed);

GroundStateReport minimize_delta0(const Functional& f, const SolverConfig& cfg);

}  // namespace ndirac

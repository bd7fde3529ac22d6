#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ndirac {

enum class Provenance { formula, quadrature, consistency, fit, spectral, radial };

std::string to_string(Provenance p);

struct ConstantEntry {
  std::string name;
  double value;
  Provenance provenance;
  double discrepancy;  // relative deviation from a cross-check, NaN when none applies
};

struct DimensionalConstants {
  int n = 0;
  double h_n = 0;           // near-diagonal coefficient of the potential
  double b_n = 0;           // Green's function normalization, ball-volume form
  double b_n_sphere = 0;    // the same constant, sphere-area form
  double d_n = 0;           // h_n / b_n^{2/(n-2)}
  double c_n = 0;           // lambda_plus^{n-2} / Y_half
  double a_n = 0;           // |Psi_0|^2, forced by the eigen-identity
  double riesz_C_n = 0;     // closed-form Riesz constant of (1+|y|^2)^{-(n-1)}
  double eigen_factor = 0;  // D Psi = eigen_factor * f * Psi
  double lambda_plus_sphere = 0;
  double Y_half_sphere = 0;
  double Ybar_sphere = 0;      // bubble energy J(Psi) with the forced a_n
  double Ybar_invariants = 0;  // lambda_plus^2 Y_half / 4
  double Q_n = 0;              // a_n |S^{n-1}| int r^{n-1} (1+r^2)^{-(n-1)}
  double I_n = 0;              // int r^{n-1} (1+r^2)^{-n}, quadrature
  double I_n_beta = 0;         // B(n/2, n/2) / 2
  double omega_ball = 0;       // volume of the unit ball in R^n
  double omega_sphere = 0;     // area of S^{n-1}
  double vol_sphere_n = 0;     // volume of the round S^n

  std::vector<ConstantEntry> table() const;
};

// Unit-ball volume in R^n and area of S^{n-1}.
double unit_ball_volume(int n);
double unit_sphere_area(int n);

DimensionalConstants compute_constants(int n);

// (lambda_plus(S^n), Y_{(n-2)/2}(S^n)).
std::pair<double, double> sphere_invariants(int n);

// int_{R^n} |x - y|^{-2} (1 + |y|^2)^{-(n-1)} dy for |x| = r, reduced to a
// radial integral with the closed-form angular mean of |x - y|^{-2}.
double riesz_profile_integral(int n, double r, double rel_tol = 1e-11);

struct AuditReport {
  int n = 0;
  std::vector<double> radii;
  std::vector<double> riesz_C_samples;  // C_n measured at each radius
  double riesz_C_closed = 0;
  double riesz_C_spread = 0;            // max relative deviation between samples
  double eigen_factor = 0;
  double a_forced = 0;                  // eigen_factor / C_n
  double a_forced_half_reading = 0;     // (n/2) / C_n
  double a_definitional_ball = 0;       // omega read as unit-ball volume
  double a_definitional_sphere = 0;     // omega read as vol(S^n)
  double omega_closing = 0;             // omega that would make the definitional relation close
  double disc_ball = 0;                 // relative deviation from a_forced
  double disc_sphere = 0;
  double ac_ratio = 0;                  // a_forced c_n / n^{n-1}
  double ac_ratio_half = 0;             // a_forced c_n / (n/2)^{n-1}
  double ybar_candidate = 0;            // c^{1/(n-1)} a^{n/(n-1)} |S^{n-1}| I_n / 4
  double ybar_invariants = 0;           // lambda_plus^2 Y / 4
  double ybar_disc = 0;
  double ybar_candidate_half = 0;       // the same with a_forced_half_reading
  double ybar_disc_half = 0;

  std::vector<ConstantEntry> table() const;
};

AuditReport audit_bubble_chain(int n);

}  // namespace ndirac

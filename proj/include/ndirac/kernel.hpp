#pragma once

#include <cmath>
#include <string>

namespace ndirac {

enum class KernelKind { periodized_riesz, screened_bessel };

inline std::string to_string(KernelKind k) {
  return k == KernelKind::periodized_riesz ? "periodized_riesz" : "screened_bessel";
}

// Fourier coefficients vhat(q), q in Z^n, of the torus kernel; the convolution
// (V * rho)(x) = sum_q vhat(q) rhohat(q) e^{iqx} with rhohat(q) = (2 pi)^{-n} int rho e^{-iqx}.
// With vhat(q) = |q|^{2-n} the near-diagonal law is h_n |x - y|^{-2}.
struct KernelSpec {
  KernelKind kind = KernelKind::periodized_riesz;
  double mu = 20.0;   // vhat(0)
  double mass = 1.0;  // screening mass, screened_bessel only

  double symbol(int n, double q_sq) const {
    if (q_sq == 0.0) return mu;
    const double s = 0.5 * (n - 2);
    if (kind == KernelKind::periodized_riesz) return std::pow(q_sq, -s);
    return std::pow(q_sq + mass * mass, -s);
  }
};

}  // namespace ndirac

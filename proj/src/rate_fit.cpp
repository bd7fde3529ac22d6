#include "ndirac/rate_fit.hpp"

#include <cmath>

#include "ndirac/errors.hpp"

namespace ndirac {

RateFit rate_fit(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 4) throw ContractViolation("rate_fit: need at least 4 samples");
  const double m = static_cast<double>(samples.size());
  double sx = 0, sy = 0;
  for (const auto& [e, v] : samples) {
    if (!(e > 0)) throw ContractViolation("rate_fit: eps must be positive");
    if (!(v > 0)) throw ContractViolation("rate_fit: values must be positive");
    sx += std::log(e);
    sy += std::log(v);
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [e, v] : samples) {
    const double dx = std::log(e) - mx, dy = std::log(v) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0) throw ContractViolation("rate_fit: eps values must not all coincide");
  RateFit f;
  f.exponent = sxy / sxx;
  f.log_coefficient = my - f.exponent * mx;
  f.r_squared = syy == 0 ? 1.0 : sxy * sxy / (sxx * syy);
  return f;
}

double fixed_exponent_log_coefficient(const std::vector<std::pair<double, double>>& samples, double exponent) {
  if (samples.empty()) throw ContractViolation("fixed_exponent_log_coefficient: no samples");
  double s = 0;
  for (const auto& [e, v] : samples) {
    if (!(e > 0) || !(v > 0)) throw ContractViolation("fixed_exponent_log_coefficient: nonpositive sample");
    s += std::log(v) - exponent * std::log(e);
  }
  return s / static_cast<double>(samples.size());
}

}  // namespace ndirac

#pragma once

#include <utility>
#include <vector>

namespace ndirac {

struct RateFit {
  double exponent = 0;
  double log_coefficient = 0;  // value ~ exp(log_coefficient) eps^exponent
  double r_squared = 0;
};

// Least squares of log(value) against log(eps). Needs >= 4 samples and positive values.
RateFit rate_fit(const std::vector<std::pair<double, double>>& samples);

// Mean of log(value / eps^exponent) for a fixed exponent.
double fixed_exponent_log_coefficient(const std::vector<std::pair<double, double>>& samples, double exponent);

}  // namespace ndirac

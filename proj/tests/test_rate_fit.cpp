#include "doctest.h"

#include <cmath>

#include "ndirac/errors.hpp"
#include "ndirac/rate_fit.hpp"

using namespace ndirac;

TEST_CASE("exact power laws") {
  std::vector<std::pair<double, double>> s;
  for (double e : {0.4, 0.3, 0.2, 0.1, 0.05}) s.push_back({e, 3.0 * std::pow(e, 2.5)});
  const RateFit f = rate_fit(s);
  CHECK(f.exponent == doctest::Approx(2.5).epsilon(1e-13));
  CHECK(f.log_coefficient == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fixed_exponent_log_coefficient(s, 2.5) == doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("least squares slope with noise") {
  // log values off the line by +-0.1 alternately; the slope oracle is computed by hand
  const std::vector<double> eps{0.1, 0.2, 0.4, 0.8};
  std::vector<std::pair<double, double>> s;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double ly = 2.0 * std::log(eps[i]) + (i % 2 ? 0.1 : -0.1);
    s.push_back({eps[i], std::exp(ly)});
    const double lx = std::log(eps[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double nn = 4.0;
  const double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
  const RateFit f = rate_fit(s);
  CHECK(f.exponent == doctest::Approx(slope).epsilon(1e-13));
  CHECK(f.r_squared < 1.0);
  CHECK(f.r_squared > 0.9);
}

TEST_CASE("invalid samples") {
  CHECK_THROWS_AS(rate_fit({{0.1, 1}, {0.2, 2}, {0.3, 3}}), ContractViolation);
  CHECK_THROWS_AS(rate_fit({{0.1, 1}, {0.2, 2}, {0.3, -3}, {0.4, 1}}), ContractViolation);
  CHECK_THROWS_AS(rate_fit({{0.1, 1}, {0.1, 2}, {0.1, 3}, {0.1, 1}}), ContractViolation);
  CHECK_THROWS_AS(fixed_exponent_log_coefficient({}, 2.0), ContractViolation);
}

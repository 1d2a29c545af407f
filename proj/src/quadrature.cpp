#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>

#include "chainfountain/shocks.hpp"

namespace chainfountain {

double active_power_by_quadrature(const ChainParams& params, const OperatingPoint& op, double v) {
  const double weight = params.lambda * params.g;
  if (op.degenerate()) {
    // straight fall of height h1
    return weight * v * params.h1;
  }
  // ds/dtheta = 1/c = h1 K / sin^2(theta); gravity does work -lambda g cos(theta) per unit length
  const double k = op.shape_scale();
  auto integrand = [](double theta) {
    const double s = std::sin(theta);
    return std::cos(theta) / (s * s);
  };
  using boost::math::quadrature::gauss_kronrod;
  auto piece = [&](double a, double b) {
    return a < b ? gauss_kronrod<double, 61>::integrate(integrand, a, b, 15, 1e-12) : 0.0;
  };
  // split where the integrand changes sign
  const double apex = std::clamp(kHalfPi, op.theta0, op.theta1);
  const double integral = piece(op.theta0, apex) + piece(apex, op.theta1);
  return -weight * v * params.h1 * k * integral;
}

}  // namespace chainfountain

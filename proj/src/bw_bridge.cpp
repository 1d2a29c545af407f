#include "chainfountain/bw_bridge.hpp"

#include <cmath>

namespace chainfountain {

BwParams to_bw(double f, double theta0, double theta1) {
  if (!(f >= 0.0 && f <= 1.0)) throw DomainError("f must lie in [0, 1]");
  if (!(theta0 > 0.0 && theta0 <= kHalfPi)) throw DomainError("theta0 must lie in (0, pi/2]");
  if (!(theta1 >= kHalfPi && theta1 <= kPi)) throw DomainError("theta1 must lie in [pi/2, pi]");
  const double s0 = std::sin(theta0);
  const double s1 = std::sin(kPi - theta1);
  return {f * s1 / s0 * (1.0 - s1), 1.0 - f * (1.0 - s1)};
}

ShockModelFit from_bw(const BwParams& bw, double theta0) {
  if (!(theta0 > 0.0 && theta0 <= kHalfPi)) throw DomainError("theta0 must lie in (0, pi/2]");
  const double s0 = std::sin(theta0);
  const double slack = 1.0 - bw.beta;
  const double denom = slack - bw.alpha * s0;
  if (!(denom > 0.0)) throw DomainError("1 - beta - alpha sin(theta0) must be positive");
  const double s1 = bw.alpha * s0 / slack;
  if (!(s1 >= 0.0 && s1 <= 1.0)) throw DomainError("implied sin(theta1) lies outside [0, 1]");

  ShockModelFit fit;
  fit.f = slack * slack / denom;
  fit.sin_theta1 = s1;
  fit.theta1 = kPi - std::asin(s1);
  fit.chi = (1.0 - s1) * (s0 - s1) / s0;
  fit.f_in_range = fit.f >= 0.0 && fit.f <= 1.0;
  fit.below_pickup = s1 <= s0;
  return fit;
}

}  // namespace chainfountain

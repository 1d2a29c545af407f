#pragma once

#include "chainfountain/types.hpp"

namespace chainfountain {

/// Phenomenological tension coefficients: tau0 = (1 - alpha) lambda v^2 at
/// pickup, tau1 = beta lambda v^2 at putdown.
struct BwParams {
  double alpha = 0.0;
  double beta = 0.0;

  /// 0 <= alpha <= 1 and beta >= 0.
  [[nodiscard]] bool in_range() const { return alpha >= 0.0 && alpha <= 1.0 && beta >= 0.0; }
};

/// alpha = f (sin th1 / sin th0)(1 - sin th1), beta = 1 - f (1 - sin th1).
BwParams to_bw(double f, double theta0, double theta1);

struct ShockModelFit {
  double f = 0.0;
  double theta1 = 0.0;      ///< supplementary branch, in (pi/2, pi]
  double sin_theta1 = 0.0;
  double chi = 0.0;         ///< (1 - sin th1)(sin th0 - sin th1) / sin th0
  bool f_in_range = false;  ///< 0 <= f <= 1
  bool below_pickup = false;  ///< sin th1 <= sin th0, required for the fountain to drop
  [[nodiscard]] bool valid() const { return f_in_range && below_pickup; }
};

/// Inverse map: f = (1 - beta)^2 / (1 - beta - alpha sin th0),
/// sin th1 = alpha sin th0 / (1 - beta).
/// Throws DomainError when the denominator is not positive or sin th1 > 1.
/// Out-of-model results are returned with the validity flags cleared.
ShockModelFit from_bw(const BwParams& bw, double theta0);

}  // namespace chainfountain

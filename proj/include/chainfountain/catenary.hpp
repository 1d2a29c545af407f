#pragma once

#include <vector>

#include "chainfountain/types.hpp"

namespace chainfountain {

/// Putdown geometry implied by the drop condition y(theta1) = -h1.
///
/// All quantities are computed in rationalized form so that no step
/// subtracts nearly equal numbers:
///   sin_theta1 = 2 s0 (1 - chi) / (1 + s0 + R),  R = sqrt((1 - s0)^2 + 4 chi s0)
///   ratio      = sin_theta1 / s0
///   drop_gap   = (1 - ratio) / chi
/// The ratio stays finite as theta0 -> 0, where it tends to 1 - chi.
struct PutdownBranch {
  double sin_theta1 = 0.0;
  double ratio = 0.0;
  double drop_gap = 0.0;
};

/// Throws DomainError unless 0 < chi <= 1 and 0 < theta0 <= pi/2.
PutdownBranch putdown_branch(double chi, double theta0);

/// Putdown angle theta1 in (pi/2, pi] for operating parameters (chi, theta0).
///
/// The drop condition fixes only sin(theta1); the chain must be past the apex
/// when it meets the floor, so the supplementary value pi - asin(.) is returned.
double theta1_of(double chi, double theta0);

/// Dimensionless kinematic state of a steady fountain plus the catenary constant.
struct OperatingPoint {
  double chi = 0.0;     ///< h1 g / (f v^2), in (0, 1]
  double theta0 = 0.0;  ///< pickup angle [rad]
  double theta1 = 0.0;  ///< putdown angle [rad]
  double nu = 0.0;      ///< v / sqrt(2 h1 g)
  double a2 = 0.0;      ///< catenary constant a^2 [N]

  // Cached sines of the shock angles and the rationalized putdown quantities.
  double sin_theta0 = 0.0;
  double cos_theta0 = 0.0;
  double sin_theta1 = 0.0;
  double ratio = 0.0;
  double drop_gap = 0.0;

  /// Straight-fall limit chi = 1, where sin(theta1) = 0 and a^2 = 0.
  [[nodiscard]] bool degenerate() const { return sin_theta1 == 0.0; }

  /// (1 - sin theta1) sin theta1 / chi: the common shape prefactor in units of h1.
  [[nodiscard]] double shape_scale() const { return sin_theta1 * (1.0 - sin_theta1) / chi; }

  /// Chain speed v [m/s] for the given setup.
  [[nodiscard]] double speed(const ChainParams& params) const { return nu * params.fall_speed(); }
};

/// Builds the operating point for (chi, theta0). Requires f > 0.
OperatingPoint make_operating_point(const ChainParams& params, double chi, double theta0);

/// a^2 = f lambda v^2 sin(theta1) (1 - sin(theta1)).
double a_squared(const ChainParams& params, double v, double theta1);

/// tau = lambda v^2 - a^2 / sin(theta), for 0 < theta < pi.
double tension_at(const ChainParams& params, double v, double a2, double theta);

/// c = (lambda g / a^2) sin^2(theta), the arc-length derivative of the tangent angle.
double curvature_at(const ChainParams& params, double a2, double theta);

/// Cartesian position (origin at the pickup point) for theta in [theta0, theta1].
Vec2 shape_point(const OperatingPoint& op, double h1, double theta);

/// Arc length from the pickup point, s(theta) = (a^2 / lambda g)(cot theta0 - cot theta).
double arc_length_at(const OperatingPoint& op, const ChainParams& params, double theta);

/// Apex height h2 = y(pi/2).
double rise_height(const OperatingPoint& op, double h1);

/// Horizontal span w = x(theta1).
double fountain_width(const OperatingPoint& op, double h1);

struct ShapeSample {
  double theta = 0.0;
  double x = 0.0;
  double y = 0.0;
  double s = 0.0;
  double tau = 0.0;
  double curvature = 0.0;
  bool degenerate = false;  ///< straight-fall limit; curvature reported as 0
};

/// Full state of the arc at angle theta. At theta1 the tension is evaluated as
/// lambda v^2 [1 - f (1 - sin theta1)], which stays finite when theta1 = pi.
ShapeSample sample_shape(const OperatingPoint& op, const ChainParams& params, double theta);

/// `count` samples at uniformly spaced angles on [theta0, theta1]; the last
/// sample is taken exactly at theta1.
std::vector<ShapeSample> sample_curve(const OperatingPoint& op, const ChainParams& params,
                                      int count);

}  // namespace chainfountain

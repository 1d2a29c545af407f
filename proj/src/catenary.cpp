#include "chainfountain/catenary.hpp"

#include <cmath>
#include <string>

namespace chainfountain {

namespace {

void require_arc_angle(const OperatingPoint& op, double theta) {
  if (!(theta >= op.theta0 && theta <= op.theta1)) {
    throw DomainError("theta must lie in [theta0, theta1]");
  }
}

// |cos theta1| on the supplementary branch.
double putdown_cos_magnitude(const OperatingPoint& op) {
  return std::sqrt((1.0 - op.sin_theta1) * (1.0 + op.sin_theta1));
}

// K / sin(theta0) = ratio (1 - sin theta1) / chi, finite as theta0 -> 0.
double scaled_pickup_factor(const OperatingPoint& op) {
  return op.ratio * (1.0 - op.sin_theta1) / op.chi;
}

}  // namespace

PutdownBranch putdown_branch(double chi, double theta0) {
  if (!(chi > 0.0 && chi <= 1.0)) throw DomainError("chi must lie in (0, 1]");
  if (!(theta0 > 0.0 && theta0 <= kHalfPi)) throw DomainError("theta0 must lie in (0, pi/2]");

  const double s0 = std::sin(theta0);
  const double root = std::sqrt((1.0 - s0) * (1.0 - s0) + 4.0 * chi * s0);
  const double denom = 1.0 + s0 + root;

  PutdownBranch branch;
  branch.ratio = 2.0 * (1.0 - chi) / denom;
  branch.sin_theta1 = s0 * branch.ratio;
  branch.drop_gap = (2.0 + 4.0 * s0 / (root + 1.0 - s0)) / denom;
  return branch;
}

double theta1_of(double chi, double theta0) {
  return kPi - std::asin(putdown_branch(chi, theta0).sin_theta1);
}

OperatingPoint make_operating_point(const ChainParams& params, double chi, double theta0) {
  params.validate();
  if (params.f == 0.0) {
    throw DomainError("f = 0 admits no steady solution (chi is undefined)");
  }
  const PutdownBranch branch = putdown_branch(chi, theta0);

  OperatingPoint op;
  op.chi = chi;
  op.theta0 = theta0;
  op.sin_theta0 = std::sin(theta0);
  op.cos_theta0 = std::cos(theta0);
  op.sin_theta1 = branch.sin_theta1;
  op.ratio = branch.ratio;
  op.drop_gap = branch.drop_gap;
  op.theta1 = kPi - std::asin(branch.sin_theta1);
  op.nu = std::sqrt(1.0 / (2.0 * params.f * chi));
  // f lambda v^2 s1 (1 - s1) with v^2 = h1 g / (f chi)
  op.a2 = params.lambda * params.g * params.h1 * op.shape_scale();
  return op;
}

double a_squared(const ChainParams& params, double v, double theta1) {
  if (!(v > 0.0)) throw DomainError("v must be positive");
  if (!(theta1 > kHalfPi && theta1 <= kPi)) throw DomainError("theta1 must lie in (pi/2, pi]");
  const double s1 = std::sin(kPi - theta1);
  return params.f * params.lambda * v * v * s1 * (1.0 - s1);
}

double tension_at(const ChainParams& params, double v, double a2, double theta) {
  if (!(theta > 0.0 && theta < kPi)) throw DomainError("tension undefined at theta = 0 or pi");
  if (!(a2 >= 0.0)) throw DomainError("a2 must be nonnegative");
  return params.lambda * v * v - a2 / std::sin(theta);
}

double curvature_at(const ChainParams& params, double a2, double theta) {
  if (!(a2 > 0.0)) throw DomainError("curvature undefined for a2 = 0 (straight fall)");
  const double s = std::sin(theta);
  return params.lambda * params.g / a2 * s * s;
}

Vec2 shape_point(const OperatingPoint& op, double h1, double theta) {
  require_arc_angle(op, theta);
  const double k = op.shape_scale();
  const double log_pickup = std::log(std::tan(0.5 * op.theta0));

  if (theta == op.theta1) {
    // (1 - cos theta1) / sin theta1 = (1 + |cos theta1|) / sin theta1
    const double x = op.degenerate()
                         ? 0.0
                         : k * (std::log((1.0 + putdown_cos_magnitude(op)) / op.sin_theta1) -
                                log_pickup);
    return {h1 * x, -h1 * (1.0 - op.sin_theta1) * op.drop_gap};
  }

  const double s = std::sin(theta);
  // sin(theta) - sin(theta0), without cancellation near theta0
  const double rise = 2.0 * std::cos(0.5 * (theta + op.theta0)) * std::sin(0.5 * (theta - op.theta0));
  const double y = scaled_pickup_factor(op) * rise / s;
  const double x = k * (std::log(std::tan(0.5 * theta)) - log_pickup);
  return {h1 * x, h1 * y};
}

double arc_length_at(const OperatingPoint& op, const ChainParams& params, double theta) {
  require_arc_angle(op, theta);
  const double pickup = scaled_pickup_factor(op);
  if (theta == op.theta1) {
    const double tail = (1.0 - op.sin_theta1) * putdown_cos_magnitude(op) / op.chi;
    return params.h1 * (pickup * op.cos_theta0 + tail);
  }
  // cot theta0 - cot theta = sin(theta - theta0) / (sin theta0 sin theta)
  return params.h1 * pickup * std::sin(theta - op.theta0) / std::sin(theta);
}

double rise_height(const OperatingPoint& op, double h1) {
  return h1 * scaled_pickup_factor(op) * (1.0 - op.sin_theta0);
}

double fountain_width(const OperatingPoint& op, double h1) {
  return shape_point(op, h1, op.theta1).x;
}

ShapeSample sample_shape(const OperatingPoint& op, const ChainParams& params, double theta) {
  const Vec2 p = shape_point(op, params.h1, theta);
  const double v = op.speed(params);
  const double lv2 = params.lambda * v * v;

  ShapeSample sample;
  sample.theta = theta;
  sample.x = p.x;
  sample.y = p.y;
  sample.s = arc_length_at(op, params, theta);
  sample.degenerate = op.degenerate();
  sample.tau = theta == op.theta1 ? lv2 * (1.0 - params.f * (1.0 - op.sin_theta1))
                                  : tension_at(params, v, op.a2, theta);
  sample.curvature = sample.degenerate ? 0.0 : curvature_at(params, op.a2, theta);
  return sample;
}

std::vector<ShapeSample> sample_curve(const OperatingPoint& op, const ChainParams& params,
                                      int count) {
  if (count < 2) throw DomainError("at least two samples are required");
  std::vector<ShapeSample> out;
  out.reserve(static_cast<std::size_t>(count));
  const double step = (op.theta1 - op.theta0) / static_cast<double>(count - 1);
  for (int i = 0; i < count; ++i) {
    const double theta = i == count - 1 ? op.theta1 : op.theta0 + step * static_cast<double>(i);
    out.push_back(sample_shape(op, params, theta));
  }
  return out;
}

}  // namespace chainfountain

#include "chainfountain/shocks.hpp"

#include <cmath>

namespace chainfountain {

namespace {

constexpr double kUnitTolerance = 1e-12;
constexpr double kSpeedConsistency = 1e-10;

void require_unit(Vec2 t, const char* name) {
  if (std::abs(t.norm2() - 1.0) > kUnitTolerance) {
    throw DomainError(std::string(name) + " is not a unit vector");
  }
}

}  // namespace

ShockForces shock_forces(const ChainParams& params, const OperatingPoint& op, double v) {
  params.validate();
  if (!(v > 0.0)) throw DomainError("v must be positive");
  const double chi_from_speed = params.h1 * params.g / (params.f * v * v);
  if (std::abs(chi_from_speed - op.chi) > kSpeedConsistency * op.chi) {
    throw ConsistencyError("operating point chi does not match h1 g / (f v^2)");
  }

  const double lv2 = params.lambda * v * v;
  const double flv2 = params.f * lv2;
  const double s0 = op.sin_theta0;
  const double s1 = op.sin_theta1;
  const double c1 = std::sqrt((1.0 - s1) * (1.0 + s1));  // -cos(theta1)
  const double pickup_share = op.ratio * (1.0 - s1);       // (s1 / s0)(1 - s1)

  ShockForces out;
  out.phi0 = {-flv2 * (1.0 - s0) * (1.0 + pickup_share), flv2 * pickup_share * op.cos_theta0};
  out.phi1 = {-flv2 * s1 * (1.0 - s1), flv2 * c1 * (1.0 - s1)};
  out.phi_minus = flv2 * (pickup_share + (1.0 - s0));
  out.tau_plus = lv2;
  out.tau_minus = lv2 - out.phi_minus;
  out.tau0 = lv2 * (1.0 - params.f * pickup_share);
  out.tau1 = lv2 * (1.0 - params.f * (1.0 - s1));
  return out;
}

double shock_dissipation(const ChainParams& params, double v, Vec2 t_minus, Vec2 t_plus) {
  const Vec2 velocity_jump = v * (t_plus - t_minus);
  return -0.5 * params.f * params.lambda * v * velocity_jump.norm2();
}

JumpResiduals jump_residuals(double tau_minus, double tau_plus, Vec2 t_minus, Vec2 t_plus, double v,
                             const ChainParams& params, Vec2 force) {
  require_unit(t_minus, "t_minus");
  require_unit(t_plus, "t_plus");
  const double lv2 = params.lambda * v * v;

  JumpResiduals r;
  r.momentum = (tau_plus - lv2) * t_plus - (tau_minus - lv2) * t_minus + force;
  // [[tau t . velocity]] + 1/2 lambda s0' [[v^2]] + W_s with s0' = -v and equal speeds
  r.energy = v * (tau_plus - tau_minus) + shock_dissipation(params, v, t_minus, t_plus);
  return r;
}

ExternalSupply external_shock_supplies(double tau, double v, const ChainParams& params,
                                       ExternalShock kind) {
  if (!(v >= 0.0)) throw DomainError("v must be nonnegative");
  const double lv2 = params.lambda * v * v;
  const double sign = kind == ExternalShock::pickup ? 1.0 : -1.0;
  // pickup: Phi* = -(tau - lambda v^2) t, W* = -(tau - lambda v^2 / 2) v; putdown flips both
  return {sign * (lv2 - tau), sign * -(tau - 0.5 * lv2) * v};
}

EnergyAudit energy_audit(const ChainParams& params, const OperatingPoint& op, double v) {
  const ShockForces forces = shock_forces(params, op, v);
  const Vec2 ex{1.0, 0.0};
  const Vec2 t0{op.sin_theta0, op.cos_theta0};
  const Vec2 t1{op.sin_theta1, -std::sqrt((1.0 - op.sin_theta1) * (1.0 + op.sin_theta1))};

  EnergyAudit audit;
  audit.w_active = (forces.tau0 - forces.tau1) * v;
  audit.w_star_minus =
      external_shock_supplies(forces.tau_minus, v, params, ExternalShock::pickup).power;
  audit.w_star_plus =
      external_shock_supplies(forces.tau_plus, v, params, ExternalShock::putdown).power;
  audit.w_shock_0 = shock_dissipation(params, v, ex, t0);
  audit.w_shock_1 = shock_dissipation(params, v, t1, ex);
  audit.residual = audit.w_active + audit.w_star_minus + audit.w_star_plus + audit.w_shock_0 +
                   audit.w_shock_1;
  return audit;
}

}  // namespace chainfountain

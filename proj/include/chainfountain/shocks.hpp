#pragma once

#include "chainfountain/catenary.hpp"
#include "chainfountain/types.hpp"

namespace chainfountain {

/// Concentrated forces and boundary tensions of the steady solution.
///
/// p0 / p1 are the internal shocks where the chain leaves the table and meets
/// the floor; the external shocks sit just before p0 (coil) and just after p1 (heap).
struct ShockForces {
  Vec2 phi0;               ///< force at the pickup shock p0 [N]
  Vec2 phi1;               ///< force at the putdown shock p1 [N]
  double phi_minus = 0.0;  ///< supply at the coil, along e_x [N]
  double tau_plus = 0.0;   ///< tension beyond p1 (free deposition) [N]
  double tau_minus = 0.0;  ///< tension before p0 [N]
  double tau0 = 0.0;       ///< arc tension just after p0 [N]
  double tau1 = 0.0;       ///< arc tension just before p1 [N]
};

/// Throws ConsistencyError when chi != h1 g / (f v^2) beyond 1e-10 relative.
ShockForces shock_forces(const ChainParams& params, const OperatingPoint& op, double v);

struct JumpResiduals {
  Vec2 momentum;        ///< [[(tau - lambda v^2) t]] + Phi  [N]
  double energy = 0.0;  ///< v [[tau]] + W_s with W_s from the dissipation law [W]
};

/// Balance residuals at a steady internal shock (shock speed -v).
/// Throws DomainError when either tangent is not a unit vector.
JumpResiduals jump_residuals(double tau_minus, double tau_plus, Vec2 t_minus, Vec2 t_plus, double v,
                             const ChainParams& params, Vec2 force);

/// Power dissipated at an internal shock, -1/2 f lambda |s0'| |[[velocity]]|^2, with |s0'| = v.
double shock_dissipation(const ChainParams& params, double v, Vec2 t_minus, Vec2 t_plus);

enum class ExternalShock { pickup, putdown };

/// Supplies at an external shock where links are set in motion (pickup) or
/// brought to rest (putdown).
struct ExternalSupply {
  double force = 0.0;  ///< component of the supply along the chain tangent [N]
  double power = 0.0;  ///< energy supply [W]
};

ExternalSupply external_shock_supplies(double tau, double v, const ChainParams& params,
                                       ExternalShock kind);

/// The five power supplies of the steady fountain and their sum.
struct EnergyAudit {
  double w_active = 0.0;      ///< gravity acting on the moving arc
  double w_star_minus = 0.0;  ///< coil (pickup) external shock, either sign
  double w_star_plus = 0.0;   ///< heap (putdown) external shock
  double w_shock_0 = 0.0;     ///< internal shock at p0
  double w_shock_1 = 0.0;     ///< internal shock at p1
  double residual = 0.0;      ///< sum of all five; vanishes for a steady solution
};

EnergyAudit energy_audit(const ChainParams& params, const OperatingPoint& op, double v);

/// Gravity power over the arc, -lambda g v \int cos(theta) ds, by adaptive
/// Gauss-Kronrod quadrature in theta. Independent of the closed form used by
/// energy_audit.
double active_power_by_quadrature(const ChainParams& params, const OperatingPoint& op, double v);

}  // namespace chainfountain

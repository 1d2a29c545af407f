#include <cmath>

#include "chainfountain/solver.hpp"

namespace chainfountain {

void FrictionParams::validate() const {
  if (!(std::isfinite(mu0) && mu0 >= 0.0)) throw DomainError("mu0 must be nonnegative");
  if (!(std::isfinite(mu1) && mu1 >= 0.0)) throw DomainError("mu1 must be nonnegative");
}

FrictionParams FrictionParams::from_coefficients(double k0, double k1, const ChainParams& params) {
  params.validate();
  if (params.f == 0.0) throw DomainError("friction scaling needs f > 0");
  const double scale = params.lambda * std::sqrt(params.f * params.h1 * params.g);
  FrictionParams mu{k0 / scale, k1 / scale};
  mu.validate();
  return mu;
}

SelectionResiduals selection_residuals(double chi, double theta0, const FrictionParams& mu) {
  const PutdownBranch branch = putdown_branch(chi, theta0);
  const double s0 = std::sin(theta0);
  const double s1 = branch.sin_theta1;
  const double root_chi = std::sqrt(chi);
  return {(1.0 - s0) * (1.0 + branch.ratio * (1.0 - s1)) - mu.mu0 * root_chi,
          s1 * (1.0 - s1) - mu.mu1 * root_chi};
}

double compatibility_bound(double mu1) {
  if (!(mu1 >= 1.0)) throw DomainError("compatibility bound applies only for mu1 >= 1");
  return 4.0 * (std::sqrt(2.0 * mu1 - 1.0) - 1.0);
}

double pickup_bracket(double chi, double theta0) {
  const PutdownBranch branch = putdown_branch(chi, theta0);
  return branch.ratio * (1.0 - branch.sin_theta1) + (1.0 - std::sin(theta0));
}

bool admissibility(double f, double chi, double theta0) {
  return f * pickup_bracket(chi, theta0) <= 1.0;
}

}  // namespace chainfountain

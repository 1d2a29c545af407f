#pragma once

#include <string>
#include <variant>
#include <vector>

#include "chainfountain/catenary.hpp"
#include "chainfountain/level_set.hpp"
#include "chainfountain/shocks.hpp"
#include "chainfountain/types.hpp"

namespace chainfountain {

/// Dimensionless friction couplings at the pickup (mu0) and putdown (mu1) shocks.
struct FrictionParams {
  double mu0 = 0.0;
  double mu1 = 0.0;

  void validate() const;

  /// From dimensional friction coefficients k0, k1 [kg/s]:
  /// mu_i = k_i / (lambda sqrt(f h1 g)).
  static FrictionParams from_coefficients(double k0, double k1, const ChainParams& params);
};

/// Search rectangle in (chi, theta0), clamped away from the edges by `margin`.
struct SearchDomain {
  double margin = 1e-6;

  [[nodiscard]] double chi_min() const { return margin; }
  [[nodiscard]] double chi_max() const { return 1.0; }
  [[nodiscard]] double theta0_min() const { return margin; }
  [[nodiscard]] double theta0_max() const { return kHalfPi - margin; }
  [[nodiscard]] bool contains(double chi, double theta0) const {
    return chi >= chi_min() && chi <= chi_max() && theta0 >= theta0_min() &&
           theta0 <= theta0_max();
  }
};

struct SelectionResiduals {
  double r0 = 0.0;  ///< pickup friction balance
  double r1 = 0.0;  ///< putdown friction balance
};

/// Friction selection residuals
///   r0 = (1 - sin th0)[1 + (sin th1 / sin th0)(1 - sin th1)] - mu0 sqrt(chi)
///   r1 = sin th1 (1 - sin th1) - mu1 sqrt(chi)
/// for 0 < chi <= 1, 0 < theta0 <= pi/2.
SelectionResiduals selection_residuals(double chi, double theta0, const FrictionParams& mu);

/// Lower bound on mu0 for a physical solution when mu1 >= 1: 4 (sqrt(2 mu1 - 1) - 1).
double compatibility_bound(double mu1);

/// (sin th1 / sin th0)(1 - sin th1) + (1 - sin th0), the coil-supply factor:
/// Phi = f lambda v^2 * bracket. Lies in [0, 2].
double pickup_bracket(double chi, double theta0);

/// True iff the coil-side tension is nonnegative: f * pickup_bracket <= 1.
bool admissibility(double f, double chi, double theta0);

/// One intersection of the two residual zero sets located by the grid oracle.
struct RootCell {
  int chi_index = 0;     ///< coarse cell column
  int theta0_index = 0;  ///< coarse cell row
  double chi = 0.0;      ///< refined location
  double theta0 = 0.0;
  double residual = 0.0;  ///< max(|r0|, |r1|) at the refined location
  Rect cell;              ///< coarse cell bounds (x = chi, y = theta0)
};

struct GridScanOptions {
  SearchDomain domain;
  int refine_levels = 40;      ///< quadtree bisection depth per candidate cell
  int frontier_limit = 256;    ///< cells kept per refinement level
  bool parallel = true;
};

/// Brute-force root finder: scans an n x n grid over the search domain, keeps
/// cells where both residuals change sign at the corners, refines each by
/// quadtree bisection (discarding cells whose sign changes vanish under
/// subdivision), and merges refined roots closer than one coarse cell diagonal.
/// Roots are returned in order of increasing (chi_index, theta0_index).
std::vector<RootCell> oracle_grid_scan(const FrictionParams& mu, int n,
                                       const GridScanOptions& options = {});

enum class NoSolutionKind { compatibility_bound, inadmissible, no_root };

struct NoSolution {
  NoSolutionKind kind = NoSolutionKind::no_root;
  std::string reason;
};

std::string to_string(NoSolutionKind kind);

struct SolveDiagnostics {
  int newton_iterations = 0;
  bool used_fallback = false;
  int root_cells = 0;  ///< roots reported by the seeding scan
  double r0 = 0.0;
  double r1 = 0.0;
  double momentum_residual_0 = 0.0;  ///< max component at p0, relative to lambda v^2
  double momentum_residual_1 = 0.0;  ///< max component at p1, relative to lambda v^2
  double energy_residual = 0.0;      ///< audit residual relative to lambda v^3
};

struct FountainSolution {
  OperatingPoint op;
  double v = 0.0;
  ShockForces forces;
  EnergyAudit audit;
  double h2 = 0.0;
  double width = 0.0;
  bool tension_nonnegative = false;  ///< tau_minus >= 0
  bool chi_within_bound = false;     ///< chi <= 1
  bool admissible = false;
  SolveDiagnostics diagnostics;
};

/// Full steady solution at a given operating point, without any selection.
FountainSolution assemble_solution(const ChainParams& params, double chi, double theta0);

struct SolveOptions {
  int seed_grid = 128;
  double tolerance = 1e-10;
  int max_iterations = 100;
  double jacobian_step = 1e-7;
  /// Reject mu1 >= 1 inputs with mu0 below compatibility_bound(mu1) before searching.
  bool screen_compatibility_bound = true;
  GridScanOptions scan;
};

using SolveResult = std::variant<FountainSolution, NoSolution>;

/// Operating point selected by the friction balances for (f, mu0, mu1).
/// Seeds a damped Newton iteration from the grid scan (largest-chi root when
/// several are found), falling back to quadtree bisection of the seed cell when
/// Newton stalls or leaves the domain. Throws ConvergenceError if neither meets
/// the tolerance.
SolveResult solve_fountain(const ChainParams& params, const FrictionParams& mu,
                           const SolveOptions& options = {});

enum class CurveFamily { mu0, mu1, f };

std::string to_string(CurveFamily family);

struct CurvePolyline {
  CurveFamily family = CurveFamily::mu0;
  double value = 0.0;
  std::vector<Vec2> points;  ///< (chi, theta0) pairs
};

/// Tolerance on |residual| for every traced point.
inline constexpr double kTraceTolerance = 1e-9;

/// Zero sets of r0 for each mu0, of r1 for each mu1, and, when f > 1/2, the
/// admissibility boundary f * pickup_bracket = 1, over the search domain.
std::vector<CurvePolyline> trace_curve_families(double f, const std::vector<double>& mu0_values,
                                                const std::vector<double>& mu1_values,
                                                int resolution, bool parallel = true,
                                                const SearchDomain& domain = {});

}  // namespace chainfountain

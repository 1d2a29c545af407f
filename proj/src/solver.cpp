#include "chainfountain/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <tuple>

#include "chainfountain/format.hpp"
#include "chainfountain/parallel.hpp"

namespace chainfountain {

namespace {

struct Point {
  double chi = 0.0;
  double theta0 = 0.0;
};

double max_norm(const SelectionResiduals& r) { return std::max(std::abs(r.r0), std::abs(r.r1)); }

bool straddles(std::array<double, 4> v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *lo <= 0.0 && *hi >= 0.0;
}

// Both residuals change sign (or vanish) over the corners of `cell`.
bool both_straddle(const Rect& cell, const FrictionParams& mu) {
  std::array<double, 4> r0{};
  std::array<double, 4> r1{};
  const std::array<Point, 4> corners{{{cell.x_min, cell.y_min},
                                      {cell.x_max, cell.y_min},
                                      {cell.x_max, cell.y_max},
                                      {cell.x_min, cell.y_max}}};
  for (std::size_t k = 0; k < 4; ++k) {
    const SelectionResiduals r = selection_residuals(corners[k].chi, corners[k].theta0, mu);
    r0[k] = r.r0;
    r1[k] = r.r1;
  }
  return straddles(r0) && straddles(r1);
}

Point centre(const Rect& cell) {
  return {0.5 * (cell.x_min + cell.x_max), 0.5 * (cell.y_min + cell.y_max)};
}

double centre_residual(const Rect& cell, const FrictionParams& mu) {
  const Point c = centre(cell);
  return max_norm(selection_residuals(c.chi, c.theta0, mu));
}

// Quadtree bisection of a candidate cell; nullopt when no sub-cell keeps both
// sign changes (the two zero sets pass through the cell without meeting).
std::optional<Point> refine_cell(const Rect& cell, const FrictionParams& mu, int levels,
                                 int frontier_limit) {
  std::vector<Rect> frontier{cell};
  for (int level = 0; level < levels; ++level) {
    std::vector<Rect> next;
    for (const Rect& r : frontier) {
      const double xm = 0.5 * (r.x_min + r.x_max);
      const double ym = 0.5 * (r.y_min + r.y_max);
      const std::array<Rect, 4> children{{{r.x_min, xm, r.y_min, ym},
                                          {xm, r.x_max, r.y_min, ym},
                                          {r.x_min, xm, ym, r.y_max},
                                          {xm, r.x_max, ym, r.y_max}}};
      for (const Rect& child : children) {
        if (both_straddle(child, mu)) next.push_back(child);
      }
    }
    if (next.empty()) return std::nullopt;
    if (next.size() > static_cast<std::size_t>(frontier_limit)) {
      std::vector<double> score(next.size());
      for (std::size_t k = 0; k < next.size(); ++k) score[k] = centre_residual(next[k], mu);
      std::vector<std::size_t> order(next.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });
      std::vector<Rect> kept;
      kept.reserve(static_cast<std::size_t>(frontier_limit));
      for (int k = 0; k < frontier_limit; ++k) kept.push_back(next[order[static_cast<std::size_t>(k)]]);
      next = std::move(kept);
    }
    frontier = std::move(next);
  }
  const auto best = std::min_element(frontier.begin(), frontier.end(), [&](const Rect& a, const Rect& b) {
    return centre_residual(a, mu) < centre_residual(b, mu);
  });
  return centre(*best);
}

struct NewtonOutcome {
  Point root;
  int iterations = 0;
  bool converged = false;
};

NewtonOutcome damped_newton(Point start, const FrictionParams& mu, const SearchDomain& domain,
                            const SolveOptions& options) {
  auto eval = [&](Point p) { return selection_residuals(p.chi, p.theta0, mu); };

  NewtonOutcome out{start, 0, false};
  SelectionResiduals r = eval(out.root);
  for (int it = 0; it <= options.max_iterations; ++it) {
    out.iterations = it;
    if (max_norm(r) <= options.tolerance) {
      out.converged = true;
      return out;
    }
    if (it == options.max_iterations) break;

    const Point p = out.root;
    const double h = options.jacobian_step;
    const double c_hi = std::min(p.chi + h, domain.chi_max());
    const double c_lo = std::max(p.chi - h, domain.chi_min());
    const double t_hi = std::min(p.theta0 + h, domain.theta0_max());
    const double t_lo = std::max(p.theta0 - h, domain.theta0_min());
    const SelectionResiduals rc_hi = eval({c_hi, p.theta0});
    const SelectionResiduals rc_lo = eval({c_lo, p.theta0});
    const SelectionResiduals rt_hi = eval({p.chi, t_hi});
    const SelectionResiduals rt_lo = eval({p.chi, t_lo});
    const double j00 = (rc_hi.r0 - rc_lo.r0) / (c_hi - c_lo);
    const double j10 = (rc_hi.r1 - rc_lo.r1) / (c_hi - c_lo);
    const double j01 = (rt_hi.r0 - rt_lo.r0) / (t_hi - t_lo);
    const double j11 = (rt_hi.r1 - rt_lo.r1) / (t_hi - t_lo);
    const double det = j00 * j11 - j01 * j10;
    if (!std::isfinite(det) || det == 0.0) break;
    const double d_chi = -(j11 * r.r0 - j01 * r.r1) / det;
    const double d_theta = -(-j10 * r.r0 + j00 * r.r1) / det;

    bool accepted = false;
    double step = 1.0;
    for (int halving = 0; halving < 40; ++halving, step *= 0.5) {
      const Point trial{p.chi + step * d_chi, p.theta0 + step * d_theta};
      if (!domain.contains(trial.chi, trial.theta0)) continue;
      const SelectionResiduals rt = eval(trial);
      if (max_norm(rt) < max_norm(r)) {
        out.root = trial;
        r = rt;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  return out;
}

Rect search_rect(const SearchDomain& d) {
  return {d.chi_min(), d.chi_max(), d.theta0_min(), d.theta0_max()};
}

}  // namespace

std::vector<RootCell> oracle_grid_scan(const FrictionParams& mu, int n,
                                       const GridScanOptions& options) {
  if (n < 16) throw DomainError("grid scan needs n >= 16");
  mu.validate();
  const Rect box = search_rect(options.domain);
  const double d_chi = (box.x_max - box.x_min) / n;
  const double d_theta = (box.y_max - box.y_min) / n;
  auto chi_at = [&](int i) { return i == n ? box.x_max : box.x_min + d_chi * i; };
  auto theta_at = [&](int j) { return j == n ? box.y_max : box.y_min + d_theta * j; };

  const auto side = static_cast<std::size_t>(n + 1);
  std::vector<SelectionResiduals> nodes(side * side);
  parallel_for(
      side,
      [&](std::size_t i) {
        for (std::size_t j = 0; j < side; ++j) {
          nodes[i * side + j] =
              selection_residuals(chi_at(static_cast<int>(i)), theta_at(static_cast<int>(j)), mu);
        }
      },
      options.parallel);
  auto node = [&](int i, int j) {
    return nodes[static_cast<std::size_t>(i) * side + static_cast<std::size_t>(j)];
  };

  std::vector<Rect> candidates;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::array<SelectionResiduals, 4> c{node(i, j), node(i + 1, j), node(i + 1, j + 1),
                                                node(i, j + 1)};
      if (straddles({c[0].r0, c[1].r0, c[2].r0, c[3].r0}) &&
          straddles({c[0].r1, c[1].r1, c[2].r1, c[3].r1})) {
        candidates.push_back({chi_at(i), chi_at(i + 1), theta_at(j), theta_at(j + 1)});
      }
    }
  }

  std::vector<std::optional<Point>> refined(candidates.size());
  parallel_for(
      candidates.size(),
      [&](std::size_t k) {
        refined[k] = refine_cell(candidates[k], mu, options.refine_levels, options.frontier_limit);
      },
      options.parallel);

  // Merge refined roots closer than one coarse cell diagonal (in cell units).
  std::vector<RootCell> roots;
  for (const auto& p : refined) {
    if (!p) continue;
    const double residual = max_norm(selection_residuals(p->chi, p->theta0, mu));
    bool merged = false;
    for (RootCell& existing : roots) {
      const double dx = (existing.chi - p->chi) / d_chi;
      const double dy = (existing.theta0 - p->theta0) / d_theta;
      if (dx * dx + dy * dy <= 2.0) {
        if (residual < existing.residual) {
          existing.chi = p->chi;
          existing.theta0 = p->theta0;
          existing.residual = residual;
        }
        merged = true;
        break;
      }
    }
    if (!merged) roots.push_back({0, 0, p->chi, p->theta0, residual, {}});
  }
  for (RootCell& root : roots) {
    root.chi_index = std::clamp(static_cast<int>((root.chi - box.x_min) / d_chi), 0, n - 1);
    root.theta0_index = std::clamp(static_cast<int>((root.theta0 - box.y_min) / d_theta), 0, n - 1);
    root.cell = {chi_at(root.chi_index), chi_at(root.chi_index + 1), theta_at(root.theta0_index),
                 theta_at(root.theta0_index + 1)};
  }
  std::sort(roots.begin(), roots.end(), [](const RootCell& a, const RootCell& b) {
    return std::tie(a.chi_index, a.theta0_index) < std::tie(b.chi_index, b.theta0_index);
  });
  return roots;
}

std::string to_string(NoSolutionKind kind) {
  switch (kind) {
    case NoSolutionKind::compatibility_bound:
      return "compatibility_bound";
    case NoSolutionKind::inadmissible:
      return "inadmissible";
    case NoSolutionKind::no_root:
      return "no_root";
  }
  return "unknown";
}

std::string to_string(CurveFamily family) {
  switch (family) {
    case CurveFamily::mu0:
      return "mu0";
    case CurveFamily::mu1:
      return "mu1";
    case CurveFamily::f:
      return "f";
  }
  return "unknown";
}

FountainSolution assemble_solution(const ChainParams& params, double chi, double theta0) {
  FountainSolution sol;
  sol.op = make_operating_point(params, chi, theta0);
  sol.v = sol.op.speed(params);
  sol.forces = shock_forces(params, sol.op, sol.v);
  sol.audit = energy_audit(params, sol.op, sol.v);
  sol.h2 = rise_height(sol.op, params.h1);
  sol.width = fountain_width(sol.op, params.h1);
  sol.tension_nonnegative = sol.forces.tau_minus >= 0.0;
  sol.chi_within_bound = chi <= 1.0;
  sol.admissible = sol.tension_nonnegative && sol.chi_within_bound;

  const double lv2 = params.lambda * sol.v * sol.v;
  const Vec2 ex{1.0, 0.0};
  const Vec2 t0{sol.op.sin_theta0, sol.op.cos_theta0};
  const Vec2 t1{sol.op.sin_theta1,
                -std::sqrt((1.0 - sol.op.sin_theta1) * (1.0 + sol.op.sin_theta1))};
  const JumpResiduals at_p0 =
      jump_residuals(sol.forces.tau_minus, sol.forces.tau0, ex, t0, sol.v, params, sol.forces.phi0);
  const JumpResiduals at_p1 =
      jump_residuals(sol.forces.tau1, sol.forces.tau_plus, t1, ex, sol.v, params, sol.forces.phi1);
  sol.diagnostics.momentum_residual_0 =
      std::max(std::abs(at_p0.momentum.x), std::abs(at_p0.momentum.y)) / lv2;
  sol.diagnostics.momentum_residual_1 =
      std::max(std::abs(at_p1.momentum.x), std::abs(at_p1.momentum.y)) / lv2;
  sol.diagnostics.energy_residual = std::abs(sol.audit.residual) / (lv2 * sol.v);
  return sol;
}

SolveResult solve_fountain(const ChainParams& params, const FrictionParams& mu,
                           const SolveOptions& options) {
  params.validate();
  mu.validate();
  if (params.f == 0.0) throw DomainError("f = 0 admits no steady solution");

  if (options.screen_compatibility_bound && mu.mu1 >= 1.0) {
    const double bound = compatibility_bound(mu.mu1);
    if (mu.mu0 < bound) {
      return NoSolution{NoSolutionKind::compatibility_bound,
                        "compatibility bound violated: need mu0 ≥ " + format_number(bound)};
    }
  }

  const SearchDomain& domain = options.scan.domain;
  const std::vector<RootCell> roots = oracle_grid_scan(mu, options.seed_grid, options.scan);
  if (roots.empty()) {
    return NoSolution{NoSolutionKind::no_root,
                      "no intersection of the mu0 and mu1 curves inside the search domain"};
  }
  const RootCell& seed = *std::max_element(roots.begin(), roots.end(), [](const RootCell& a, const RootCell& b) {
    return a.chi < b.chi;
  });

  NewtonOutcome newton = damped_newton(centre(seed.cell), mu, domain, options);
  bool fallback = false;
  int iterations = newton.iterations;
  if (!newton.converged) {
    fallback = true;
    newton = damped_newton({seed.chi, seed.theta0}, mu, domain, options);
    iterations += newton.iterations;
    if (!newton.converged) {
      throw ConvergenceError("selection residuals did not reach tolerance " +
                             format_number(options.tolerance));
    }
  }

  FountainSolution sol = assemble_solution(params, newton.root.chi, newton.root.theta0);
  const SelectionResiduals r = selection_residuals(newton.root.chi, newton.root.theta0, mu);
  sol.diagnostics.newton_iterations = iterations;
  sol.diagnostics.used_fallback = fallback;
  sol.diagnostics.root_cells = static_cast<int>(roots.size());
  sol.diagnostics.r0 = r.r0;
  sol.diagnostics.r1 = r.r1;

  if (!sol.admissible) {
    const double bracket = pickup_bracket(sol.op.chi, sol.op.theta0);
    return NoSolution{NoSolutionKind::inadmissible,
                      "selected point has negative coil tension: f * bracket = " +
                          format_number(params.f * bracket) + " > 1"};
  }
  return sol;
}

std::vector<CurvePolyline> trace_curve_families(double f, const std::vector<double>& mu0_values,
                                                const std::vector<double>& mu1_values,
                                                int resolution, bool parallel,
                                                const SearchDomain& domain) {
  if (resolution < 2) throw DomainError("resolution must be at least 2");
  if (!(f >= 0.0 && f <= 1.0)) throw DomainError("f must lie in [0, 1]");
  const Rect box = search_rect(domain);
  std::vector<CurvePolyline> out;

  auto emit = [&](CurveFamily family, double value, const ScalarField& field) {
    for (auto& line : trace_zero_level(field, box, resolution, parallel)) {
      out.push_back({family, value, std::move(line)});
    }
  };

  for (double mu0 : mu0_values) {
    const FrictionParams mu{mu0, 0.0};
    mu.validate();
    emit(CurveFamily::mu0, mu0,
         [mu](double chi, double theta0) { return selection_residuals(chi, theta0, mu).r0; });
  }
  for (double mu1 : mu1_values) {
    const FrictionParams mu{0.0, mu1};
    mu.validate();
    emit(CurveFamily::mu1, mu1,
         [mu](double chi, double theta0) { return selection_residuals(chi, theta0, mu).r1; });
  }
  if (f > 0.5) {
    emit(CurveFamily::f, f,
         [f](double chi, double theta0) { return f * pickup_bracket(chi, theta0) - 1.0; });
  }
  return out;
}

}  // namespace chainfountain

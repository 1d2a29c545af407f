#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <variant>

#include "chainfountain/bw_bridge.hpp"
#include "chainfountain/catenary.hpp"
#include "chainfountain/cli.hpp"
#include "chainfountain/format.hpp"
#include "chainfountain/parallel.hpp"
#include "chainfountain/shocks.hpp"
#include "chainfountain/solver.hpp"

namespace chainfountain::cli {

namespace {

using Json = nlohmann::ordered_json;

double to_radians(const RunConfig& config, double angle) {
  return config.angle_unit == AngleUnit::deg ? degrees_to_radians(angle) : angle;
}

ChainParams chain_params(const RunConfig& config, double default_f) {
  ChainParams params{config.lambda, config.g, config.h1, config.f.value_or(default_f)};
  params.validate();
  return params;
}

double required_f(const RunConfig& config) {
  if (!config.f) throw DomainError("--f is required for this command");
  return *config.f;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json vec_json(Vec2 v) { return Json{{"x", v.x}, {"y", v.y}}; }

Json audit_json(const EnergyAudit& audit) {
  return Json{{"wa", audit.w_active},          {"w_star_minus", audit.w_star_minus},
              {"w_star_plus", audit.w_star_plus}, {"ws0", audit.w_shock_0},
              {"ws1", audit.w_shock_1},         {"residual", audit.residual}};
}

Json solution_json(const FountainSolution& sol) {
  const SolveDiagnostics& d = sol.diagnostics;
  Json j;
  j["chi"] = sol.op.chi;
  j["theta0"] = sol.op.theta0;
  j["theta1"] = sol.op.theta1;
  j["nu"] = sol.op.nu;
  j["v"] = sol.v;
  j["a2"] = sol.op.a2;
  j["tau0"] = sol.forces.tau0;
  j["tau1"] = sol.forces.tau1;
  j["tau_minus"] = sol.forces.tau_minus;
  j["tau_plus"] = sol.forces.tau_plus;
  j["phi0"] = vec_json(sol.forces.phi0);
  j["phi1"] = vec_json(sol.forces.phi1);
  j["phi_minus"] = sol.forces.phi_minus;
  j["h2"] = sol.h2;
  j["width"] = sol.width;
  j["energy"] = audit_json(sol.audit);
  j["admissible"] = sol.admissible;
  j["diagnostics"] = Json{{"r0", d.r0},
                          {"r1", d.r1},
                          {"newton_iterations", d.newton_iterations},
                          {"used_fallback", d.used_fallback},
                          {"root_cells", d.root_cells},
                          {"momentum_residual_p0", d.momentum_residual_0},
                          {"momentum_residual_p1", d.momentum_residual_1},
                          {"energy_residual", d.energy_residual}};
  return j;
}

constexpr const char* kShapeHeader =
    "theta_rad,x_over_h1,y_over_h1,s_over_h1,tau_over_lambda_v2,curvature_times_h1";

struct ScaledRow {
  double theta, x, y, s, tau, curvature;
};

std::vector<ScaledRow> scaled_shape(const ChainParams& params, double chi, double theta0,
                                    int samples) {
  const OperatingPoint op = make_operating_point(params, chi, theta0);
  const double v = op.speed(params);
  const double lv2 = params.lambda * v * v;
  std::vector<ScaledRow> rows;
  for (const ShapeSample& s : sample_curve(op, params, samples)) {
    rows.push_back({s.theta, s.x / params.h1, s.y / params.h1, s.s / params.h1, s.tau / lv2,
                    s.curvature * params.h1});
  }
  return rows;
}

void append_csv_row(std::string& out, std::initializer_list<std::string> cells) {
  bool first = true;
  for (const std::string& cell : cells) {
    if (!first) out += ',';
    out += cell;
    first = false;
  }
  out += '\n';
}

Json row_json(const ScaledRow& r) {
  return Json{{"theta_rad", r.theta},           {"x_over_h1", r.x},
              {"y_over_h1", r.y},               {"s_over_h1", r.s},
              {"tau_over_lambda_v2", r.tau},    {"curvature_times_h1", r.curvature}};
}

void require_positive_samples(int samples) {
  if (samples < 2) throw DomainError("--samples must be at least 2");
}

}  // namespace

int cmd_solve(const RunConfig& config, std::string& payload) {
  const ChainParams params = chain_params(config, required_f(config));
  const FrictionParams mu{config.mu0, config.mu1};
  SolveOptions options;
  options.screen_compatibility_bound = config.screen_bound;
  options.scan.parallel = config.parallel;

  const SolveResult result = solve_fountain(params, mu, options);
  if (const auto* none = std::get_if<NoSolution>(&result)) {
    payload += dump(Json{{"status", "no_solution"},
                         {"reason_code", to_string(none->kind)},
                         {"reason", none->reason}});
    return kExitNoSolution;
  }
  payload += dump(solution_json(std::get<FountainSolution>(result)));
  return kExitOk;
}

int cmd_shape(const RunConfig& config, std::string& payload) {
  require_positive_samples(config.samples);
  const ChainParams params = chain_params(config, 1.0);
  const auto rows = scaled_shape(params, config.chi, to_radians(config, config.theta0), config.samples);
  if (config.format == Format::json) {
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back(row_json(r));
    payload += dump(arr);
    return kExitOk;
  }
  payload += kShapeHeader;
  payload += '\n';
  for (const auto& r : rows) {
    append_csv_row(payload, {format_number(r.theta), format_number(r.x), format_number(r.y),
                             format_number(r.s), format_number(r.tau), format_number(r.curvature)});
  }
  return kExitOk;
}

int cmd_fountain_figure(const RunConfig& config, std::string& payload) {
  require_positive_samples(config.samples);
  if (config.chi_list.empty() || config.theta0_list.empty()) {
    throw DomainError("--chi-list and --theta0-list must be nonempty");
  }
  const ChainParams params = chain_params(config, 1.0);
  Json arr = Json::array();
  if (config.format == Format::csv) {
    payload += "chi,theta0_rad,";
    payload += kShapeHeader;
    payload += '\n';
  }
  for (double chi : config.chi_list) {
    for (double theta0_in : config.theta0_list) {
      const double theta0 = to_radians(config, theta0_in);
      const auto rows = scaled_shape(params, chi, theta0, config.samples);
      if (config.format == Format::json) {
        const OperatingPoint op = make_operating_point(params, chi, theta0);
        Json curve{{"chi", chi},
                   {"theta0_rad", theta0},
                   {"theta1_rad", op.theta1},
                   {"h2_over_h1", rise_height(op, 1.0)},
                   {"width_over_h1", fountain_width(op, 1.0)},
                   {"rows", Json::array()}};
        for (const auto& r : rows) curve["rows"].push_back(row_json(r));
        arr.push_back(std::move(curve));
        continue;
      }
      for (const auto& r : rows) {
        append_csv_row(payload, {format_number(chi), format_number(theta0), format_number(r.theta),
                                 format_number(r.x), format_number(r.y), format_number(r.s),
                                 format_number(r.tau), format_number(r.curvature)});
      }
    }
  }
  if (config.format == Format::json) payload += dump(arr);
  return kExitOk;
}

int cmd_sweep_curves(const RunConfig& config, std::string& payload) {
  if (config.mu0_list.empty() || config.mu1_list.empty()) {
    throw DomainError("--mu0-list and --mu1-list must be nonempty");
  }
  const double f = required_f(config);
  const auto curves =
      trace_curve_families(f, config.mu0_list, config.mu1_list, config.resolution, config.parallel);
  if (config.format == Format::json) {
    Json arr = Json::array();
    for (const auto& c : curves) {
      Json pts = Json::array();
      for (const Vec2& p : c.points) pts.push_back(Json::array({p.x, p.y}));
      arr.push_back(Json{{"family", to_string(c.family)}, {"value", c.value}, {"points", pts}});
    }
    payload += dump(arr);
    return kExitOk;
  }
  payload += "family,mu_or_f,chi,theta0_rad\n";
  for (const auto& c : curves) {
    const std::string family = to_string(c.family);
    const std::string value = format_number(c.value);
    for (const Vec2& p : c.points) {
      append_csv_row(payload, {family, value, format_number(p.x), format_number(p.y)});
    }
  }
  return kExitOk;
}

int cmd_energy_audit(const RunConfig& config, std::string& payload) {
  const ChainParams params = chain_params(config, required_f(config));
  const OperatingPoint op = make_operating_point(params, config.chi, to_radians(config, config.theta0));
  const double v = op.speed(params);
  const EnergyAudit audit = energy_audit(params, op, v);
  const double lv3 = params.lambda * v * v * v;

  Json j;
  j["chi"] = op.chi;
  j["theta0"] = op.theta0;
  j["theta1"] = op.theta1;
  j["f"] = params.f;
  j["v"] = v;
  j["energy"] = audit_json(audit);
  j["residual_over_lambda_v3"] = audit.residual / lv3;
  if (config.verify) {
    const double quad = active_power_by_quadrature(params, op, v);
    j["verify"] = Json{{"wa_closed_form", audit.w_active},
                       {"wa_quadrature", quad},
                       {"relative_difference", std::abs(quad - audit.w_active) / std::abs(audit.w_active)}};
  }
  payload += dump(j);
  return kExitOk;
}

int cmd_bw(const RunConfig& config, std::string& payload) {
  const BwParams bw =
      to_bw(required_f(config), to_radians(config, config.theta0), to_radians(config, config.theta1));
  payload += dump(Json{{"alpha", bw.alpha}, {"beta", bw.beta}, {"in_range", bw.in_range()}});
  return kExitOk;
}

int cmd_bw_inverse(const RunConfig& config, std::string& payload) {
  const ShockModelFit fit = from_bw({config.alpha, config.beta}, to_radians(config, config.theta0));
  payload += dump(Json{{"f", fit.f},
                       {"theta1", fit.theta1},
                       {"sin_theta1", fit.sin_theta1},
                       {"chi", fit.chi},
                       {"f_in_range", fit.f_in_range},
                       {"below_pickup", fit.below_pickup},
                       {"valid", fit.valid()}});
  return kExitOk;
}

int execute(const RunConfig& config, std::string& payload, std::ostream& err) {
  try {
    switch (config.command) {
      case Command::solve:
        return cmd_solve(config, payload);
      case Command::shape:
        return cmd_shape(config, payload);
      case Command::sweep_curves:
        return cmd_sweep_curves(config, payload);
      case Command::fountain_figure:
        return cmd_fountain_figure(config, payload);
      case Command::energy_audit:
        return cmd_energy_audit(config, payload);
      case Command::bw:
        return cmd_bw(config, payload);
      case Command::bw_inverse:
        return cmd_bw_inverse(config, payload);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Steady chain fountain solver", "chainfountain"};
  app.require_subcommand(1);

  const std::map<std::string, Format> formats{{"csv", Format::csv}, {"json", Format::json}};
  const std::map<std::string, AngleUnit> units{{"deg", AngleUnit::deg}, {"rad", AngleUnit::rad}};

  auto common = [&](CLI::App* sub) {
    sub->add_option("--output,-o", config.output, "write the result to this file");
    sub->add_option("--angle-unit", config.angle_unit, "unit of angle inputs (deg|rad)")
        ->transform(CLI::CheckedTransformer(units, CLI::ignore_case));
  };
  auto physical = [&](CLI::App* sub) {
    sub->add_option("--lambda", config.lambda, "mass per unit length [kg/m]");
    sub->add_option("--g", config.g, "gravitational acceleration [m/s^2]");
    sub->add_option("--h1", config.h1, "drop height [m]");
  };
  auto format = [&](CLI::App* sub) {
    sub->add_option("--format", config.format, "output format (csv|json)")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  };

  auto* solve = app.add_subcommand("solve", "operating point selected by friction");
  solve->add_option("--f", config.f, "shock dissipation fraction")->required();
  solve->add_option("--mu0", config.mu0, "pickup friction")->required();
  solve->add_option("--mu1", config.mu1, "putdown friction")->required();
  solve->add_flag("!--no-bound-screen", config.screen_bound,
                  "search even when mu0 is below the mu1 >= 1 compatibility bound");
  physical(solve);
  common(solve);

  auto* shape = app.add_subcommand("shape", "sampled catenary for (chi, theta0)");
  shape->add_option("--chi", config.chi)->required();
  shape->add_option("--theta0", config.theta0)->required();
  shape->add_option("--samples", config.samples, "number of rows")->capture_default_str();
  shape->add_option("--f", config.f, "dissipation fraction for the tension column (default 1)");
  physical(shape);
  format(shape);
  common(shape);

  auto* sweep = app.add_subcommand("sweep-curves", "zero sets of the friction residuals");
  sweep->add_option("--f", config.f)->required();
  sweep->add_option("--mu0-list", config.mu0_list)->required()->delimiter(',');
  sweep->add_option("--mu1-list", config.mu1_list)->required()->delimiter(',');
  sweep->add_option("--resolution", config.resolution)->capture_default_str();
  format(sweep);
  common(sweep);

  auto* figure = app.add_subcommand("fountain-figure", "batch of shapes over chi and theta0");
  figure->add_option("--chi-list", config.chi_list)->delimiter(',')->capture_default_str();
  figure->add_option("--theta0-list", config.theta0_list)->delimiter(',')->capture_default_str();
  figure->add_option("--samples", config.samples)->capture_default_str();
  figure->add_option("--f", config.f, "dissipation fraction for the tension column (default 1)");
  physical(figure);
  format(figure);
  common(figure);

  auto* audit = app.add_subcommand("energy-audit", "power supplies and their sum");
  audit->add_option("--f", config.f)->required();
  audit->add_option("--chi", config.chi)->required();
  audit->add_option("--theta0", config.theta0)->required();
  audit->add_flag("--verify", config.verify, "recompute the gravity power by quadrature");
  physical(audit);
  common(audit);

  auto* bw = app.add_subcommand("bw", "(f, theta0, theta1) -> (alpha, beta)");
  bw->add_option("--f", config.f)->required();
  bw->add_option("--theta0", config.theta0)->required();
  bw->add_option("--theta1", config.theta1)->required();
  common(bw);

  auto* bw_inv = app.add_subcommand("bw-inverse", "(alpha, beta, theta0) -> (f, theta1)");
  bw_inv->add_option("--alpha", config.alpha)->required();
  bw_inv->add_option("--beta", config.beta)->required();
  bw_inv->add_option("--theta0", config.theta0)->required();
  common(bw_inv);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();  // program name
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  if (*solve) config.command = Command::solve;
  if (*shape) config.command = Command::shape;
  if (*sweep) config.command = Command::sweep_curves;
  if (*figure) config.command = Command::fountain_figure;
  if (*audit) config.command = Command::energy_audit;
  if (*bw) config.command = Command::bw;
  if (*bw_inv) config.command = Command::bw_inverse;
  config.parallel = parallel_enabled_by_environment();

  std::string payload;
  const int code = execute(config, payload, err);
  if (config.output) {
    std::ofstream file(*config.output, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << *config.output << "\n";
      return kExitUsage;
    }
    file << payload;
  } else {
    out << payload;
  }
  return code;
}

}  // namespace chainfountain::cli

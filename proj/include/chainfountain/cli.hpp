#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace chainfountain::cli {

enum class Command { solve, shape, sweep_curves, fountain_figure, energy_audit, bw, bw_inverse };
enum class Format { csv, json };
enum class AngleUnit { deg, rad };

/// Exit codes: solved / usage or domain error / well-posed problem without a solution.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNoSolution = 2;

/// Parsed command line. Angles are stored as typed on the command line and
/// converted with `angle_unit` when a command runs.
struct RunConfig {
  Command command = Command::solve;

  double lambda = 1.0;
  double g = 9.81;
  double h1 = 1.0;
  std::optional<double> f;

  double mu0 = 0.0;
  double mu1 = 0.0;
  double chi = 0.0;
  double theta0 = 0.0;
  double theta1 = 0.0;
  double alpha = 0.0;
  double beta = 0.0;

  std::vector<double> mu0_list;
  std::vector<double> mu1_list;
  std::vector<double> chi_list{0.5, 0.8};
  std::vector<double> theta0_list{1, 2, 3, 4, 5, 6, 7, 8, 9};
  int resolution = 128;
  int samples = 256;

  bool verify = false;
  bool screen_bound = true;
  bool parallel = true;

  std::optional<std::string> output;
  Format format = Format::csv;
  AngleUnit angle_unit = AngleUnit::deg;
};

/// Parses `args` (program name first) and runs the selected command, writing
/// the result to `out` (or to --output) and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs an already parsed configuration. Text that would go to the output
/// destination is appended to `payload`.
int execute(const RunConfig& config, std::string& payload, std::ostream& err);

// Individual command bodies; each returns an exit code and fills `payload`.
int cmd_solve(const RunConfig& config, std::string& payload);
int cmd_shape(const RunConfig& config, std::string& payload);
int cmd_sweep_curves(const RunConfig& config, std::string& payload);
int cmd_fountain_figure(const RunConfig& config, std::string& payload);
int cmd_energy_audit(const RunConfig& config, std::string& payload);
int cmd_bw(const RunConfig& config, std::string& payload);
int cmd_bw_inverse(const RunConfig& config, std::string& payload);

}  // namespace chainfountain::cli

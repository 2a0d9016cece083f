/**
 * @file cli.hpp
 * @brief Command-line front end: argument parsing, CSV output and the
 * step-size convergence study.
 *
 * Exit codes: 0 success, 2 usage error, 3 simulation failure.
 */
#ifndef DAEO_CLI_HPP
#define DAEO_CLI_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "daeo/config.hpp"
#include "daeo/integrator.hpp"
#include "daeo/problem.hpp"

namespace daeo {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitSimulation = 3;

enum class RunMode { simulate, converge, help };

struct RunSpec {
  std::string problem_name;
  IntegratorConfig cfg;
  std::filesystem::path output_path;
  RunMode mode = RunMode::simulate;
  /// Step sizes of the convergence study.
  std::vector<double> dts;
  /// Usage text, filled for RunMode::help.
  std::string help;
};

/// Default step sizes of the convergence study.
std::vector<double> default_convergence_dts();

/// Throws UsageError for unknown, malformed or missing flags and for
/// unregistered problem names.
RunSpec parse_args(int argc, const char *const *argv);

/// Comma-separated positive reals. Throws UsageError.
std::vector<double> parse_dt_list(const std::string &text);

/// Events CSV path derived from the trajectory path: dir/stem_events.ext.
std::filesystem::path events_path(const std::filesystem::path &trajectory);

void write_trajectory_csv(std::ostream &os, const DAEOProblem &p,
                          const IntegratorConfig &cfg, const Trajectory &traj);
void write_events_csv(std::ostream &os, const DAEOProblem &p,
                      const IntegratorConfig &cfg, const Trajectory &traj);

/// dt * sum over non-event points of |x_num(t) - x_ref(t)|_1. Throws
/// UnsupportedProblem if @p p has no closed-form solution.
double error_norm(const Trajectory &traj, const DAEOProblem &p);

/// Least-squares slope of log(error) against log(dt). Throws DomainError for
/// non-positive errors or fewer than two distinct step sizes.
double fit_loglog_slope(const std::vector<double> &dts,
                        const std::vector<double> &errors);

struct ConvergenceRow {
  double dt = 0.0;
  double error_on = 0.0;
  double error_off = 0.0;
};

struct ConvergenceResult {
  std::vector<ConvergenceRow> rows;
  double slope_on = 0.0;
  double slope_off = 0.0;
};

/// Runs every step size with events on and off. Throws UsageError for fewer
/// than three step sizes.
ConvergenceResult convergence_study(const DAEOProblem &p,
                                    const IntegratorConfig &cfg,
                                    const std::vector<double> &dts);

void write_convergence_csv(std::ostream &os, const DAEOProblem &p,
                           const ConvergenceResult &result);

/// Simulates and writes the trajectory and events files.
void run_simulation(const RunSpec &spec, std::ostream &log);

/// Parses, runs and maps failures to exit codes.
int run_cli(int argc, const char *const *argv, std::ostream &out,
            std::ostream &err);

} // namespace daeo

#endif // DAEO_CLI_HPP

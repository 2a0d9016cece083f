#include "daeo/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "daeo/errors.hpp"

namespace fs = std::filesystem;

namespace daeo {

std::vector<double> default_convergence_dts() {
  return {0.04, 0.02, 0.01, 0.005, 0.0025, 0.00125};
}

std::vector<double> parse_dt_list(const std::string &text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    std::string item = text.substr(start, comma - start);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (item.empty() || used != item.size() || !(v > 0.0) || !std::isfinite(v)) {
      throw UsageError("invalid step size '" + item + "' in --converge list");
    }
    out.push_back(v);
    start = comma + 1;
  }
  return out;
}

RunSpec parse_args(int argc, const char *const *argv) {
  CLI::App app{"Simulate a DAE with an embedded global optimization "
               "criterion, or run a step-size convergence study.",
               "daeo_sim"};
  std::string problem;
  double dt = 0.02;
  double t_end = 0.0;
  std::string events = "on";
  std::string output;
  std::string converge;
  double tol = 0.0;

  app.add_option("--problem", problem, "Problem name")->required();
  app.add_option("--dt", dt, "Time step")->check(CLI::PositiveNumber);
  auto *t_end_opt = app.add_option("--t-end", t_end, "End time override");
  app.add_option("--events", events, "Event location on|off")
      ->check(CLI::IsMember({"on", "off"}));
  app.add_option("--output", output, "Output CSV path");
  auto *converge_opt =
      app.add_option("--converge", converge,
                     "Convergence study over a comma-separated dt list "
                     "(default list when empty)")
          ->expected(0, 1);
  auto *tol_opt = app.add_option("--tol", tol, "Newton tolerance")
                      ->check(CLI::PositiveNumber);

  RunSpec spec;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    spec.mode = RunMode::help;
    spec.help = app.help();
    return spec;
  } catch (const CLI::ParseError &e) {
    throw UsageError(e.what());
  }

  const auto names = problem_names();
  if (std::find(names.begin(), names.end(), problem) == names.end()) {
    throw UsageError("unknown problem '" + problem + "'");
  }
  spec.problem_name = problem;
  spec.cfg.dt = dt;
  spec.cfg.events_enabled = events == "on";
  if (t_end_opt->count() > 0) {
    if (!(t_end > make_problem(problem).t0)) {
      throw UsageError("--t-end must lie after the initial time");
    }
    spec.cfg.t_end = t_end;
  }
  if (tol_opt->count() > 0) {
    spec.cfg.newton_tol = tol;
    spec.cfg.optimizer.newton_tol = tol;
  }
  if (converge_opt->count() > 0) {
    spec.mode = RunMode::converge;
    spec.dts = converge.empty() ? default_convergence_dts()
                                : parse_dt_list(converge);
    if (spec.dts.size() < 3) {
      throw UsageError("--converge needs at least three step sizes");
    }
  }
  if (output.empty()) {
    output = problem + (spec.mode == RunMode::converge ? "_convergence.csv"
                                                       : "_trajectory.csv");
  }
  spec.output_path = output;
  try {
    spec.cfg.validate();
  } catch (const ConfigError &e) {
    throw UsageError(e.what());
  }
  return spec;
}

fs::path events_path(const fs::path &trajectory) {
  fs::path out = trajectory;
  out.replace_filename(trajectory.stem().string() + "_events" +
                       trajectory.extension().string());
  return out;
}

namespace {

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::string box_text(const IntervalVector &box) {
  std::string out;
  for (std::size_t i = 0; i < box.size(); ++i) {
    out += fmt::format("{}[{}, {}]", i ? " x " : "", num(box[i].lo()),
                       num(box[i].hi()));
  }
  return out;
}

std::vector<std::string> columns(const std::string &base, std::size_t n) {
  if (n == 1) {
    return {base};
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(base + std::to_string(i));
  }
  return out;
}

void write_row(std::ostream &os, const std::vector<std::string> &fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    os << (i ? "," : "") << fields[i];
  }
  os << '\n';
}

void append(std::vector<std::string> &row, const Vector &v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    row.push_back(num(v[i]));
  }
}

void write_metadata(std::ostream &os, const DAEOProblem &p,
                    const IntegratorConfig &cfg) {
  const auto &o = cfg.optimizer;
  fmt::print(os, "# problem: {}\n", p.name);
  fmt::print(os, "# dt: {}\n", num(cfg.dt));
  fmt::print(os, "# t0: {}, t_end: {}\n", num(p.t0),
             num(cfg.t_end.value_or(p.t_end)));
  fmt::print(os, "# events: {}\n", cfg.events_enabled ? "on" : "off");
  fmt::print(os, "# ydomain: {}\n", box_text(p.ydomain));
  fmt::print(os,
             "# newton_tol: {}, event_tol: {}, detect_safety: {}, "
             "detect_abstol: {}, tie_tol: {}\n",
             num(cfg.newton_tol), num(cfg.event_tol), num(cfg.detect_safety),
             num(cfg.detect_abstol), num(cfg.tie_tol));
  fmt::print(os,
             "# optimizer: min_width: {}, merge_tol: {}, newton_tol: {}, "
             "split_fraction: {}\n",
             num(o.min_width), num(o.merge_tol), num(o.newton_tol),
             num(o.split_fraction));
  os << "# rows with event=1 are located events; the error norm uses only "
        "rows with event=0\n";
}

/// Writes through a temporary file that replaces @p path only on success.
template <typename Writer>
void write_file(const fs::path &path, Writer &&writer) {
  fs::path tmp = path;
  tmp += ".tmp";
  try {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) {
      throw std::runtime_error("cannot open " + tmp.string());
    }
    writer(os);
    os.close();
    if (!os) {
      throw std::runtime_error("failed writing " + tmp.string());
    }
    fs::rename(tmp, path);
  } catch (...) {
    std::error_code ec;
    fs::remove(tmp, ec);
    throw;
  }
}

} // namespace

void write_trajectory_csv(std::ostream &os, const DAEOProblem &p,
                          const IntegratorConfig &cfg, const Trajectory &traj) {
  write_metadata(os, p, cfg);
  std::vector<std::string> header{"t"};
  for (auto &c : columns("x", p.nx)) {
    header.push_back(c);
  }
  for (auto &c : columns("y", p.ny)) {
    header.push_back(c);
  }
  header.emplace_back("h");
  header.emplace_back("event");
  write_row(os, header);
  for (const auto &pt : traj.points) {
    std::vector<std::string> row{num(pt.t)};
    append(row, pt.x);
    append(row, pt.ystar);
    row.push_back(num(pt.hstar));
    row.emplace_back(pt.is_event ? "1" : "0");
    write_row(os, row);
  }
}

void write_events_csv(std::ostream &os, const DAEOProblem &p,
                      const IntegratorConfig &cfg, const Trajectory &traj) {
  write_metadata(os, p, cfg);
  std::vector<std::string> header{"t_event"};
  for (auto &c : columns("x", p.nx)) {
    header.push_back(c);
  }
  for (auto &c : columns("y_before", p.ny)) {
    header.push_back(c);
  }
  for (auto &c : columns("y_after", p.ny)) {
    header.push_back(c);
  }
  write_row(os, header);
  for (const auto &e : traj.events) {
    std::vector<std::string> row{num(e.t_event)};
    append(row, e.x_event);
    append(row, e.y_before);
    append(row, e.y_after);
    write_row(os, row);
  }
}

double error_norm(const Trajectory &traj, const DAEOProblem &p) {
  if (!p.reference || !p.reference->x_of_t) {
    throw UnsupportedProblem("problem '" + p.name +
                             "' has no closed-form reference solution");
  }
  double sum = 0.0;
  for (const auto &pt : traj.points) {
    if (!pt.is_event) {
      sum += (pt.x - p.reference->x_of_t(pt.t)).lpNorm<1>();
    }
  }
  return traj.dt * sum;
}

double fit_loglog_slope(const std::vector<double> &dts,
                        const std::vector<double> &errors) {
  if (dts.size() != errors.size() || dts.size() < 2) {
    throw DomainError("slope fit needs matching data of at least two points");
  }
  const auto n = static_cast<double>(dts.size());
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < dts.size(); ++i) {
    if (!(dts[i] > 0.0) || !(errors[i] > 0.0) || !std::isfinite(errors[i])) {
      throw DomainError("degenerate fit: errors and step sizes must be positive");
    }
    const double lx = std::log(dts[i]);
    const double ly = std::log(errors[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  const bool distinct = std::any_of(dts.begin(), dts.end(),
                                    [&](double dt) { return dt != dts.front(); });
  if (!distinct || !(std::abs(denom) > 0.0)) {
    throw DomainError("degenerate fit: step sizes are not distinct");
  }
  return (n * sxy - sx * sy) / denom;
}

ConvergenceResult convergence_study(const DAEOProblem &p,
                                    const IntegratorConfig &cfg,
                                    const std::vector<double> &dts) {
  if (dts.size() < 3) {
    throw UsageError("a convergence study needs at least three step sizes");
  }
  ConvergenceResult result;
  std::vector<double> on;
  std::vector<double> off;
  for (double dt : dts) {
    IntegratorConfig c = cfg;
    c.dt = dt;
    c.events_enabled = true;
    const double e_on = error_norm(simulate(p, c), p);
    c.events_enabled = false;
    const double e_off = error_norm(simulate(p, c), p);
    result.rows.push_back({dt, e_on, e_off});
    on.push_back(e_on);
    off.push_back(e_off);
  }
  result.slope_on = fit_loglog_slope(dts, on);
  result.slope_off = fit_loglog_slope(dts, off);
  return result;
}

void write_convergence_csv(std::ostream &os, const DAEOProblem &p,
                           const ConvergenceResult &result) {
  fmt::print(os, "# problem: {}\n", p.name);
  fmt::print(os, "# ydomain: {}\n", box_text(p.ydomain));
  os << "# error: dt * sum of |x_num - x_ref|_1 over grid rows\n";
  fmt::print(os, "# slope_on: {}, slope_off: {}\n", num(result.slope_on),
             num(result.slope_off));
  os << "dt,error_on,error_off\n";
  for (const auto &r : result.rows) {
    write_row(os, {num(r.dt), num(r.error_on), num(r.error_off)});
  }
}

void run_simulation(const RunSpec &spec, std::ostream &log) {
  const DAEOProblem p = make_problem(spec.problem_name);
  const Trajectory traj = simulate(p, spec.cfg);
  const fs::path ev = events_path(spec.output_path);
  write_file(spec.output_path, [&](std::ostream &os) {
    write_trajectory_csv(os, p, spec.cfg, traj);
  });
  try {
    write_file(ev, [&](std::ostream &os) {
      write_events_csv(os, p, spec.cfg, traj);
    });
  } catch (...) {
    std::error_code ec;
    fs::remove(spec.output_path, ec);
    throw;
  }
  fmt::print(log, "{}: {} points, {} events -> {}, {}\n", p.name,
             traj.points.size(), traj.events.size(), spec.output_path.string(),
             ev.string());
}

int run_cli(int argc, const char *const *argv, std::ostream &out,
            std::ostream &err) {
  RunSpec spec;
  try {
    spec = parse_args(argc, argv);
  } catch (const UsageError &e) {
    fmt::print(err, "error: {}\nRun with --help for usage.\n", e.what());
    return kExitUsage;
  }
  if (spec.mode == RunMode::help) {
    out << spec.help;
    return kExitSuccess;
  }

  try {
    if (spec.mode == RunMode::simulate) {
      run_simulation(spec, out);
      return kExitSuccess;
    }
    const DAEOProblem p = make_problem(spec.problem_name);
    const ConvergenceResult result = convergence_study(p, spec.cfg, spec.dts);
    write_file(spec.output_path, [&](std::ostream &os) {
      write_convergence_csv(os, p, result);
    });
    out << "dt,error_on,error_off\n";
    for (const auto &r : result.rows) {
      write_row(out, {num(r.dt), num(r.error_on), num(r.error_off)});
    }
    fmt::print(out, "slope_on: {:.4f}\nslope_off: {:.4f}\n", result.slope_on,
               result.slope_off);
    return kExitSuccess;
  } catch (const UsageError &e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const UnsupportedProblem &e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const SimulationError &e) {
    fmt::print(err, "simulation failed at t = {}: {}\n", num(e.t), e.what());
    return kExitSimulation;
  } catch (const std::exception &e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitSimulation;
  }
}

} // namespace daeo

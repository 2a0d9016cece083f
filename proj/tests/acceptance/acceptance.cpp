/**
 * @file acceptance.cpp
 * @brief Acceptance gate: one PASS/FAIL line per criterion with the measured
 * quantity and wall time. `acceptance N` runs criterion N, no argument runs
 * all of them. Exit status is nonzero if any selected criterion fails.
 */
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "daeo/cli.hpp"
#include "daeo/derivatives.hpp"
#include "daeo/global_optimizer.hpp"
#include "daeo/integrator.hpp"
#include "daeo/problem.hpp"
#include "daeo/sensitivity.hpp"
#include "../oracles.hpp"

namespace {

using daeo::Interval;
using daeo::IntervalVector;
using daeo::Vector;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char *title;
  double time_limit;
  std::function<Outcome()> check;
};

Vector vec1(double v) {
  Vector out(1);
  out[0] = v;
  return out;
}

std::string fmt(const char *format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double reoptimize(const oracle::Objective1D &o, double x, double y0) {
  double y = y0;
  for (int i = 0; i < 100; ++i) {
    y -= o.h_y(x, y) / o.h_yy(x, y);
  }
  return y;
}

double rel_err(double value, double ref) {
  return std::abs(value - ref) / std::max(std::abs(ref), 1.0);
}

Outcome event_time_ex1() {
  const auto p = daeo::example1();
  const auto traj = daeo::simulate(p, daeo::IntegratorConfig{});
  if (traj.events.size() != 1) {
    return {false, fmt("%zu events located, expected 1", traj.events.size())};
  }
  const double err = std::abs(traj.events[0].t_event - std::log(2.0) / 3.0);
  return {err <= 1e-6, fmt("t_event = %.10f, |error| = %.3e (limit 1e-6)",
                           traj.events[0].t_event, err)};
}

Outcome convergence_orders() {
  const auto p = daeo::example1();
  const auto r = daeo::convergence_study(p, daeo::IntegratorConfig{},
                                         daeo::default_convergence_dts());
  const bool on = r.slope_on >= 1.8 && r.slope_on <= 2.2;
  const bool off = r.slope_off >= 0.8 && r.slope_off <= 1.2;
  return {on && off, fmt("slope_on = %.4f in [1.8, 2.2], slope_off = %.4f in [0.8, 1.2]",
                         r.slope_on, r.slope_off)};
}

Outcome events_ex2() {
  const auto p = daeo::example2();
  const auto traj = daeo::simulate(p, daeo::IntegratorConfig{});
  const std::vector<double> expected{0.589331, 1.160423, 1.523812, 1.790295};
  if (traj.events.size() != expected.size()) {
    return {false, fmt("%zu events located, expected 4", traj.events.size())};
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    worst = std::max(worst, std::abs(traj.events[i].t_event - expected[i]));
  }
  return {worst <= 5e-3, fmt("4 events, max |t - t_ref| = %.3e (limit 5e-3)", worst)};
}

Outcome completeness() {
  std::mt19937_64 rng(20240521);
  std::size_t checked = 0;
  std::size_t missing = 0;
  std::size_t not_minima = 0;
  for (const auto &[p, o] : {std::pair{daeo::example1(), oracle::ex1()},
                             std::pair{daeo::example2(), oracle::ex2()}}) {
    const auto traj = daeo::simulate(p, daeo::IntegratorConfig{});
    double xlo = traj.points.front().x[0];
    double xhi = xlo;
    for (const auto &pt : traj.points) {
      xlo = std::min(xlo, pt.x[0]);
      xhi = std::max(xhi, pt.x[0]);
    }
    std::uniform_real_distribution<double> ux(xlo, xhi);
    const double lo = p.ydomain[0].lo();
    const double hi = p.ydomain[0].hi();
    for (int k = 0; k < 20; ++k) {
      const double x = ux(rng);
      const auto found = daeo::find_local_optima(p.h, vec1(x), p.ydomain, {});
      for (const auto &m : oracle::grid_minima(o, x, lo, hi, 10000)) {
        ++checked;
        const bool hit = std::any_of(found.optima.begin(), found.optima.end(),
                                     [&](const auto &q) { return std::abs(q.y[0] - m.y) <= 1e-6; });
        missing += hit ? 0 : 1;
      }
      for (const auto &q : found.optima) {
        const double y = q.y[0];
        if (!(std::abs(o.h_y(x, y)) <= 1e-8 && o.h_yy(x, y) > 0.0)) {
          ++not_minima;
        }
      }
    }
  }
  return {missing == 0 && not_minima == 0,
          fmt("%zu oracle minima, %zu unmatched, %zu returned points fail the "
              "second-order test",
              checked, missing, not_minima)};
}

Outcome interval_soundness() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t checks = 0;
  std::size_t violations = 0;
  const auto count = [&](bool ok) {
    ++checks;
    violations += ok ? 0 : 1;
  };
  for (const auto &p : {daeo::example1(), daeo::example2()}) {
    const double lo = p.ydomain[0].lo();
    const double span = p.ydomain[0].hi() - lo;
    // Each box yields four inclusion checks.
    for (int k = 0; k < 12500; ++k) {
      const double x = -1.0 + 8.0 * unit(rng);
      const double a = lo + span * unit(rng);
      const double b = std::min(a + span * std::pow(10.0, -6.0 * unit(rng)), lo + span);
      const double y = a + (b - a) * unit(rng);
      const IntervalVector box{Interval(a, b)};
      const auto enc = daeo::interval_enclosure_y(p.h, vec1(x), box);
      const auto d = daeo::objective_derivatives(p.h, vec1(x), vec1(std::clamp(y, a, b)));
      std::vector<Interval> xs{Interval(x)};
      std::vector<Interval> ys{box[0]};
      const auto natural = daeo::evaluate<Interval>(p, xs, ys);
      count(enc.value.contains(d.value));
      count(natural.h.contains(d.value));
      count(enc.gradient[0].contains(d.grad_y[0]));
      count(enc.hessian(0, 0).contains(d.hess_yy(0, 0)));
    }
  }
  return {violations == 0, fmt("%zu inclusion checks, %zu violations", checks, violations)};
}

Outcome derivative_correctness() {
  std::mt19937_64 rng(99);
  double worst_grad = 0.0;
  double worst_hess = 0.0;
  double worst_dydx = 0.0;
  std::size_t points = 0;
  constexpr double step = 1e-6;
  for (const auto &[p, o, xlo, xhi] :
       {std::tuple{daeo::example1(), oracle::ex1(), 0.0, 1.5},
        std::tuple{daeo::example2(), oracle::ex2(), 1.0, 6.6}}) {
    std::uniform_real_distribution<double> ux(xlo, xhi);
    std::uniform_real_distribution<double> uy(p.ydomain[0].lo(), p.ydomain[0].hi());
    for (int k = 0; k < 100; ++k) {
      ++points;
      const double x = ux(rng);
      const double y = uy(rng);
      const auto d = daeo::objective_derivatives(p.h, vec1(x), vec1(y));
      const double gy = oracle::central_difference([&](double s) { return o.h(x, s); }, y, step);
      const double gx = oracle::central_difference([&](double s) { return o.h(s, y); }, x, step);
      const double hyy =
          oracle::central_difference([&](double s) { return o.h_y(x, s); }, y, step);
      const double hyx =
          oracle::central_difference([&](double s) { return o.h_y(s, y); }, x, step);
      worst_grad = std::max({worst_grad, rel_err(d.grad_y[0], gy), rel_err(d.grad_x[0], gx)});
      worst_hess = std::max({worst_hess, rel_err(d.hess_yy(0, 0), hyy),
                             rel_err(d.hess_yx(0, 0), hyx)});

      // Implicit derivative at a local minimizer of h(x, .).
      const auto minima = oracle::grid_minima(o, x, p.ydomain[0].lo(), p.ydomain[0].hi(), 10000);
      const auto &m = minima[k % minima.size()];
      const double fd = (reoptimize(o, x + step, m.y) - reoptimize(o, x - step, m.y)) / (2 * step);
      const double ad = daeo::implicit_dy_dx(p.h, vec1(x), vec1(m.y))(0, 0);
      worst_dydx = std::max(worst_dydx, rel_err(ad, fd));
    }
  }
  const double worst = std::max({worst_grad, worst_hess, worst_dydx});
  return {worst <= 1e-5,
          fmt("%zu points, max relative error: gradient %.2e, Hessian %.2e, "
              "dy/dx %.2e (limit 1e-5)",
              points, worst_grad, worst_hess, worst_dydx)};
}

Outcome trajectory_shape() {
  const auto p = daeo::example1();
  const auto &ref = p.reference->x_of_t;
  const double te = p.reference->event_times[0];
  daeo::IntegratorConfig cfg;
  const auto on = daeo::simulate(p, cfg);
  cfg.events_enabled = false;
  const auto off = daeo::simulate(p, cfg);
  double max_on = 0.0;
  double max_off = 0.0;
  double off_pre = 0.0;
  double off_post = 0.0;
  for (const auto &pt : on.points) {
    max_on = std::max(max_on, std::abs(pt.x[0] - ref(pt.t)[0]));
  }
  for (const auto &pt : off.points) {
    const double e = std::abs(pt.x[0] - ref(pt.t)[0]);
    max_off = std::max(max_off, e);
    (pt.t <= te ? off_pre : off_post) = std::max(pt.t <= te ? off_pre : off_post, e);
  }
  const bool ok = max_on <= 2e-2 && max_off <= 2e-2 && off_post >= 5.0 * off_pre;
  return {ok, fmt("max error on %.2e, off %.2e (limit 2e-2); events-off post/pre "
                  "max error ratio %.1f (limit 5)",
                  max_on, max_off, off_post / off_pre)};
}

const std::vector<Criterion> &criteria() {
  static const std::vector<Criterion> all{
      {1, "event time of the first example", 1.0, event_time_ex1},
      {2, "convergence orders of the first example", 30.0, convergence_orders},
      {3, "event count and times of the second example", 60.0, events_ex2},
      {4, "global search completeness", 30.0, completeness},
      {5, "interval inclusion soundness", 10.0, interval_soundness},
      {6, "derivatives against finite differences", 60.0, derivative_correctness},
      {7, "trajectories against the closed-form solution", 60.0, trajectory_shape},
  };
  return all;
}

bool run(const Criterion &c) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = c.check();
  } catch (const std::exception &e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs < c.time_limit;
  const bool pass = out.pass && in_time;
  std::printf("[%s] criterion %d (%s): %s; runtime %.2f s (limit %.0f s)\n",
              pass ? "PASS" : "FAIL", c.id, c.title, out.detail.c_str(), secs,
              c.time_limit);
  return pass;
}

} // namespace

int main(int argc, char **argv) {
  bool all_pass = true;
  if (argc > 1) {
    const int id = std::atoi(argv[1]);
    const auto &cs = criteria();
    const auto it = std::find_if(cs.begin(), cs.end(), [&](const auto &c) { return c.id == id; });
    if (it == cs.end()) {
      std::fprintf(stderr, "unknown criterion '%s'\n", argv[1]);
      return 2;
    }
    all_pass = run(*it);
  } else {
    for (const auto &c : criteria()) {
      all_pass = run(c) && all_pass;
    }
  }
  return all_pass ? 0 : 1;
}

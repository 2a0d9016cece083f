#include <doctest.h>

#include <cmath>
#include <numbers>

#include "daeo/derivatives.hpp"
#include "daeo/errors.hpp"
#include "daeo/integrator.hpp"
#include "daeo/problem.hpp"
#include "daeo/sensitivity.hpp"
#include "oracles.hpp"

using daeo::IntegratorConfig;
using daeo::Interval;
using daeo::Vector;

namespace {

Vector vec1(double v) {
  Vector out(1);
  out[0] = v;
  return out;
}

/// h = (y - x)^2 with f = 1: the minimizer is y = x.
daeo::DAEOProblem tracking_problem() {
  return {"track",
          1,
          1,
          daeo::Dynamics([](auto x, auto, auto out) { out[0] = 0.0 * x[0] + 1.0; }),
          daeo::Objective([](auto x, auto y) { return daeo::sqr(y[0] - x[0]); }),
          vec1(0.0),
          0.0,
          1.0,
          daeo::IntervalVector{Interval(-3.0, 3.0)},
          std::nullopt};
}

/// Minimizer of the second example near @p y0, by bracketed Newton on the
/// hand-written gradient.
double reoptimize(double x, double y0) {
  const auto o = oracle::ex2();
  double y = y0;
  for (int i = 0; i < 100; ++i) {
    y -= o.h_y(x, y) / o.h_yy(x, y);
  }
  return y;
}

} // namespace

TEST_CASE("one trapezoidal step in the first phase of the first example") {
  const auto p = daeo::example1();
  const IntegratorConfig cfg;
  const auto r = daeo::trapezoid_step(p, 0.0, vec1(1.0), vec1(1.0), 0.02, cfg);
  CHECK(r.x[0] == doctest::Approx((1.0 - 0.03) / (1.0 + 0.03)).epsilon(1e-14));
  CHECK(r.y[0] == 1.0);
}

TEST_CASE("zero step returns the current state") {
  const auto p = daeo::example2();
  const IntegratorConfig cfg;
  const double y0 = reoptimize(1.0, 0.95);
  const auto r = daeo::trapezoid_step(p, 0.0, vec1(1.0), vec1(y0), 0.0, cfg);
  CHECK(r.x[0] == 1.0);
  CHECK(r.y[0] == doctest::Approx(y0).epsilon(1e-14));
}

TEST_CASE("trapezoidal step stays on the continued branch") {
  const auto p = daeo::example2();
  const IntegratorConfig cfg;
  const double y0 = reoptimize(1.0, 2.1);
  const auto r = daeo::trapezoid_step(p, 0.0, vec1(1.0), vec1(y0), 0.02, cfg);
  CHECK(std::abs(daeo::gradient_y(p.h, r.x, r.y)[0]) <= cfg.newton_tol);
  CHECK(std::abs(r.y[0] - reoptimize(r.x[0], y0)) < 1e-12);
  CHECK(r.x[0] == doctest::Approx(1.0 + 0.01 * (y0 + r.y[0])).epsilon(1e-14));
}

TEST_CASE("Newton divergence is reported with the last iterate") {
  const auto p = daeo::example2();
  IntegratorConfig cfg;
  cfg.max_newton_iters = 1;
  try {
    (void)daeo::trapezoid_step(p, 0.0, vec1(1.0), vec1(0.95), 0.3, cfg);
    FAIL("expected a step failure");
  } catch (const daeo::StepFailure &e) {
    CHECK(e.x_last.size() == 1);
    CHECK(e.y_last.size() == 1);
  }
}

TEST_CASE("implicit derivative of the minimizer") {
  const auto p1 = daeo::example1();
  CHECK(std::abs(daeo::implicit_dy_dx(p1.h, vec1(1.0), vec1(1.0))(0, 0)) < 1e-15);
  CHECK(std::abs(daeo::dy_dt(p1, vec1(1.0), vec1(1.0))[0]) < 1e-15);

  const auto t = tracking_problem();
  CHECK(daeo::implicit_dy_dx(t.h, vec1(0.3), vec1(0.3))(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(daeo::dy_dt(t, vec1(0.3), vec1(0.3))[0] == doctest::Approx(1.0).epsilon(1e-15));

  const auto p2 = daeo::example2();
  const double y = reoptimize(1.0, 0.95);
  const double dydx = daeo::implicit_dy_dx(p2.h, vec1(1.0), vec1(y))(0, 0);
  const double fd = (reoptimize(1.0 + 1e-5, y) - reoptimize(1.0 - 1e-5, y)) / 2e-5;
  CHECK(std::abs(dydx - fd) / std::abs(fd) <= 1e-4);
  CHECK(daeo::dy_dt(p2, vec1(1.0), vec1(y))[0] == doctest::Approx(dydx * y).epsilon(1e-14));
}

TEST_CASE("singular Hessian is a degeneracy") {
  daeo::Objective quartic([](auto, auto y) { return daeo::pow_int(y[0], 4); });
  CHECK_THROWS_AS(daeo::implicit_dy_dx(quartic, vec1(0.0), vec1(0.0)),
                  daeo::DegeneracyError);
}

TEST_CASE("configuration validation") {
  IntegratorConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.detect_safety = -2.0;
  CHECK_THROWS_AS(cfg.validate(), daeo::ConfigError);
  cfg = IntegratorConfig{};
  cfg.newton_tol = -1e-12;
  CHECK_THROWS_AS(cfg.validate(), daeo::ConfigError);
  cfg = IntegratorConfig{};
  cfg.detect_abstol = -1e-8;
  CHECK_THROWS_AS(cfg.validate(), daeo::ConfigError);
  cfg = IntegratorConfig{};
  cfg.dt = 0.0;
  CHECK_THROWS_AS(cfg.validate(), daeo::ConfigError);
  cfg = IntegratorConfig{};
  cfg.t_end = -1.0;
  CHECK_THROWS_AS(daeo::simulate(daeo::example1(), cfg), daeo::ConfigError);
}

TEST_CASE("first example with events") {
  const auto p = daeo::example1();
  const IntegratorConfig cfg;
  const auto traj = daeo::simulate(p, cfg);
  REQUIRE(traj.events.size() == 1);
  const auto &e = traj.events[0];
  CHECK(std::abs(e.t_event - std::log(2.0) / 3.0) < 1e-4);
  CHECK(e.y_before[0] == doctest::Approx(1.0));
  CHECK(e.y_after[0] == doctest::Approx(-1.0));
  CHECK(e.located_by == daeo::LocatedBy::newton);
  const double x_end = traj.points.back().x[0];
  CHECK(traj.points.back().t == 1.0);
  CHECK(std::abs(x_end - std::exp(-1.0 + 2.0 / 3.0 * std::log(0.5))) <= 5e-4);
}

TEST_CASE("second example with events") {
  const auto p = daeo::example2();
  const IntegratorConfig cfg;
  const auto traj = daeo::simulate(p, cfg);
  CHECK(traj.events.size() == 4);
}

TEST_CASE("trajectory invariants") {
  for (const auto &p : {daeo::example1(), daeo::example2()}) {
    for (bool events : {true, false}) {
      IntegratorConfig cfg;
      cfg.events_enabled = events;
      const auto traj = daeo::simulate(p, cfg);
      std::size_t event_points = 0;
      std::size_t label = traj.points.front().active_label;
      for (std::size_t i = 0; i < traj.points.size(); ++i) {
        const auto &pt = traj.points[i];
        if (i > 0) {
          CHECK(pt.t > traj.points[i - 1].t);
        }
        CHECK(daeo::gradient_y(p.h, pt.x, pt.ystar).norm() <= 10 * cfg.newton_tol);
        if (pt.is_event) {
          // The incoming and outgoing branches tie at an event point.
          REQUIRE(pt.optima.optima.size() >= 2);
          CHECK(pt.hstar <= pt.optima.optima[1].value + 1e-8);
          ++event_points;
          CHECK(pt.active_label != label);
          label = pt.active_label;
        } else {
          CHECK(pt.hstar <= pt.optima.optima.front().value + 1e-8);
          if (events) {
            CHECK(pt.active_label == label);
          }
        }
        label = pt.active_label;
      }
      CHECK(event_points == traj.events.size());
      if (!events) {
        CHECK(traj.events.empty());
      }
    }
  }
}

TEST_CASE("end time override") {
  IntegratorConfig cfg;
  cfg.t_end = 0.5;
  const auto traj = daeo::simulate(daeo::example1(), cfg);
  CHECK(traj.points.back().t == 0.5);
  CHECK(traj.points.size() == 27);
}

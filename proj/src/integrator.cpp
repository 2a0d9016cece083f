#include "daeo/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include <Eigen/LU>

#include "daeo/derivatives.hpp"
#include "daeo/errors.hpp"
#include "daeo/sensitivity.hpp"

namespace daeo {

void IntegratorConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ConfigError("time step must be positive");
  }
  if (!(newton_tol > 0.0) || !(detect_abstol > 0.0) || !(tie_tol > 0.0) ||
      !(event_tol > 0.0)) {
    throw ConfigError("tolerances must be positive");
  }
  if (!(detect_safety > 0.0)) {
    throw ConfigError("detection safety factor must be positive");
  }
  if (max_newton_iters == 0 || max_event_iters == 0 ||
      max_bisection_probes == 0) {
    throw ConfigError("iteration limits must be positive");
  }
  if (t_end && !std::isfinite(*t_end)) {
    throw ConfigError("end time must be finite");
  }
  optimizer.validate();
}

StepResult trapezoid_step(const DAEOProblem &p, double /*t_k*/,
                          const Vector &x_k, const Vector &y_k, double dt,
                          const IntegratorConfig &cfg) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const auto nx = static_cast<Eigen::Index>(p.nx);
  const auto ny = static_cast<Eigen::Index>(p.ny);
  const Vector f_k = evaluate_dynamics(p.f, x_k, y_k);

  Vector x = x_k + dt * f_k;
  Vector y = y_k;
  try {
    y += dt * dy_dt(p, x_k, y_k);
  } catch (const DegeneracyError &) {
    // No sensitivity available; start from the current branch point.
  }

  Vector residual(nx + ny);
  Matrix jac(nx + ny, nx + ny);
  for (std::size_t it = 0; it <= cfg.max_newton_iters; ++it) {
    const DynamicsJacobian fj = dynamics_jacobian(p.f, x, y);
    const ObjectiveDerivatives hd = objective_derivatives(p.h, x, y);
    residual.head(nx) = x - x_k - 0.5 * dt * (fj.value + f_k);
    residual.tail(ny) = hd.grad_y;
    const double rnorm = residual.norm();
    if (!std::isfinite(rnorm)) {
      break;
    }
    if (rnorm <= cfg.newton_tol) {
      return {x, y};
    }
    if (it == cfg.max_newton_iters) {
      break;
    }
    jac.topLeftCorner(nx, nx) =
        Matrix::Identity(nx, nx) - 0.5 * dt * fj.d_x;
    jac.topRightCorner(nx, ny) = -0.5 * dt * fj.d_y;
    jac.bottomLeftCorner(ny, nx) = hd.hess_yx;
    jac.bottomRightCorner(ny, ny) = hd.hess_yy;
    const Vector delta = Eigen::PartialPivLU<Matrix>(jac).solve(residual);
    x -= delta.head(nx);
    y -= delta.tail(ny);
    const double znorm = std::hypot(x.norm(), y.norm());
    if (delta.norm() <= 4.0 * eps * (1.0 + znorm)) {
      // Stalled at the rounding floor.
      residual.head(nx) =
          x - x_k - 0.5 * dt * (evaluate_dynamics(p.f, x, y) + f_k);
      residual.tail(ny) = gradient_y(p.h, x, y);
      if (residual.norm() <= std::sqrt(cfg.newton_tol)) {
        return {x, y};
      }
      break;
    }
  }
  throw StepFailure("trapezoidal Newton iteration did not converge", x, y);
}

namespace {

struct State {
  double t = 0.0;
  Vector x;
  Vector y;
  std::size_t label = 0;
  LocalOptimaSet optima;
};

class Simulator {
public:
  Simulator(const DAEOProblem &p, const IntegratorConfig &cfg)
      : m_p(p), m_cfg(cfg) {}

  Trajectory run() {
    const double t_end = m_cfg.t_end.value_or(m_p.t_end);
    if (!(t_end > m_p.t0)) {
      throw ConfigError("end time must exceed the initial time");
    }
    m_traj.dt = m_cfg.dt;

    State s;
    s.t = m_p.t0;
    s.x = m_p.x0;
    s.optima = search(s.x, s.t);
    for (auto &o : s.optima.optima) {
      o.label = m_next_label++;
    }
    const GlobalChoice g = global_minimum(s.optima, m_cfg.tie_tol);
    s.y = g.optimum.y;
    s.label = g.optimum.label;
    record(s, false);

    const double span = t_end - m_p.t0;
    const auto steps =
        static_cast<std::size_t>(std::ceil(span / m_cfg.dt * (1.0 - 1e-12)));
    for (std::size_t k = 1; k <= steps; ++k) {
      const double target =
          k == steps ? t_end : m_p.t0 + static_cast<double>(k) * m_cfg.dt;
      const double t_start = s.t;
      try {
        s = advance(std::move(s), target, 0);
      } catch (const SimulationError &) {
        throw;
      } catch (const std::exception &e) {
        throw SimulationError(e.what(), t_start);
      }
      record(s, false);
    }
    return std::move(m_traj);
  }

private:
  LocalOptimaSet search(const Vector &x, double t) const {
    LocalOptimaSet s = find_local_optima(m_p.h, x, m_p.ydomain, m_cfg.optimizer);
    s.t = t;
    if (s.optima.empty()) {
      throw SimulationError("no local minimizer in the search box", t);
    }
    return s;
  }

  void record(const State &s, bool is_event) {
    TrajectoryPoint pt;
    pt.t = s.t;
    pt.x = s.x;
    pt.ystar = s.y;
    pt.hstar = m_p.h(as_span(s.x), as_span(s.y));
    pt.optima = s.optima;
    pt.active_label = s.label;
    pt.is_event = is_event;
    m_traj.points.push_back(std::move(pt));
  }

  double match_tol(const Vector &y) const {
    return std::max(m_cfg.optimizer.merge_tol, std::sqrt(m_cfg.newton_tol)) *
           (1.0 + y.norm());
  }

  /// Carries labels from @p prev to @p next by nearest neighbour within the
  /// displacement bound of each previous optimum; unmatched members get
  /// fresh labels.
  void match_labels(LocalOptimaSet &next, const LocalOptimaSet &prev,
                    double dt) {
    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < prev.optima.size(); ++i) {
      const auto &o = prev.optima[i];
      double speed = 0.0;
      try {
        speed = dy_dt(m_p, prev.x, o.y).norm();
      } catch (const DegeneracyError &) {
      }
      const double bound =
          m_cfg.detect_safety * std::abs(dt) * speed + m_cfg.detect_abstol;
      for (std::size_t j = 0; j < next.optima.size(); ++j) {
        const double d = (next.optima[j].y - o.y).norm();
        if (d <= bound) {
          pairs.emplace_back(d, i, j);
        }
      }
    }
    std::sort(pairs.begin(), pairs.end());
    std::vector<bool> used_prev(prev.optima.size(), false);
    std::vector<bool> used_next(next.optima.size(), false);
    for (const auto &[d, i, j] : pairs) {
      if (!used_prev[i] && !used_next[j]) {
        used_prev[i] = used_next[j] = true;
        next.optima[j].label = prev.optima[i].label;
      }
    }
    for (std::size_t j = 0; j < next.optima.size(); ++j) {
      if (!used_next[j]) {
        next.optima[j].label = m_next_label++;
      }
    }
  }

  /// Gives @p label to the member of @p set that coincides with the
  /// continued branch point @p y. Returns false if no member does.
  bool force_label(LocalOptimaSet &set, const Vector &y, std::size_t label) {
    auto nearest = std::min_element(
        set.optima.begin(), set.optima.end(),
        [&](const LocalOptimum &a, const LocalOptimum &b) {
          return (a.y - y).norm() < (b.y - y).norm();
        });
    if ((nearest->y - y).norm() > match_tol(y)) {
      return false;
    }
    if (nearest->label != label) {
      for (auto &o : set.optima) {
        if (o.label == label) {
          o.label = nearest->label;
        }
      }
      nearest->label = label;
    }
    return true;
  }

  State split(State s, double t_target, std::size_t depth) {
    const double mid = 0.5 * (s.t + t_target);
    State half = advance(std::move(s), mid, depth + 1);
    return advance(std::move(half), t_target, depth + 1);
  }

  State advance(State s, double t_target, std::size_t depth) {
    if (depth > m_cfg.max_split_depth) {
      throw SimulationError("step could not be resolved by splitting", s.t);
    }
    const double dt = t_target - s.t;
    const Vector dydt_k = dy_dt(m_p, s.x, s.y);

    StepResult step;
    try {
      step = trapezoid_step(m_p, s.t, s.x, s.y, dt, m_cfg);
    } catch (const StepFailure &) {
      return split(std::move(s), t_target, depth);
    }

    LocalOptimaSet next = search(step.x, t_target);
    match_labels(next, s.optima, dt);
    force_label(next, step.y, s.label);
    const GlobalChoice g = global_minimum(next, m_cfg.tie_tol);
    const DetectionVerdict verdict =
        detect_event(s.y, g.optimum.y, dydt_k, dt, m_cfg.detect_safety,
                     m_cfg.detect_abstol);

    if (!verdict.event_detected || g.optimum.label == s.label) {
      return State{t_target, step.x, step.y, s.label, std::move(next)};
    }
    if (!m_cfg.events_enabled) {
      return State{t_target, step.x, g.optimum.y, g.optimum.label,
                   std::move(next)};
    }

    DenseSegment seg{s.t,
                     t_target,
                     s.x,
                     step.x,
                     evaluate_dynamics(m_p.f, s.x, s.y),
                     evaluate_dynamics(m_p.f, step.x, step.y)};
    EventRecord rec;
    try {
      Vector y2_k;
      bool tracked = true;
      try {
        y2_k = track_local_optimum(m_p.h, s.x, g.optimum.y,
                                   dy_dt(m_p, step.x, g.optimum.y), -dt,
                                   m_cfg);
      } catch (const TrackingFailure &) {
        tracked = false;
      }
      if (tracked) {
        const double h_k = event_function(m_p.h, s.x, s.y, y2_k);
        const double h_next =
            event_function(m_p.h, step.x, step.y, g.optimum.y);
        if (h_k * h_next > 0.0) {
          // The incoming branch only touches the active one; no switch.
          return State{t_target, step.x, step.y, s.label, std::move(next)};
        }
        try {
          rec = locate_event(m_p, seg, s.y, y2_k, m_cfg);
        } catch (const TrackingFailure &) {
          tracked = false;
        }
      }
      if (!tracked) {
        rec = locate_event_by_search(m_p, seg, s.y, m_cfg);
      }
    } catch (const LocationFailure &) {
      return split(std::move(s), t_target, depth);
    }

    return restart_at_event(std::move(s), rec, t_target, depth);
  }

  State restart_at_event(State s, EventRecord rec, double t_target,
                         std::size_t depth) {
    const double te = rec.t_event;
    StepResult pre = trapezoid_step(m_p, s.t, s.x, s.y, te - s.t, m_cfg);
    LocalOptimaSet at_event = search(pre.x, te);
    match_labels(at_event, s.optima, te - s.t);
    force_label(at_event, pre.y, s.label);

    const LocalOptimum *incoming = nullptr;
    for (const auto &o : at_event.optima) {
      if (o.label == s.label) {
        continue;
      }
      if (!incoming ||
          (o.y - rec.y_after).norm() < (incoming->y - rec.y_after).norm()) {
        incoming = &o;
      }
    }
    if (!incoming) {
      throw SimulationError("incoming branch missing at the event", s.t);
    }

    // The record keeps the located state; the trajectory continues from the
    // re-integrated one.
    State e{te, pre.x, incoming->y, incoming->label, std::move(at_event)};
    record(e, true);
    m_traj.events.push_back(std::move(rec));
    return advance(std::move(e), t_target, depth + 1);
  }

  const DAEOProblem &m_p;
  const IntegratorConfig &m_cfg;
  Trajectory m_traj;
  std::size_t m_next_label = 1;
};

} // namespace

Trajectory simulate(const DAEOProblem &p, const IntegratorConfig &cfg) {
  cfg.validate();
  p.validate();
  return Simulator(p, cfg).run();
}

} // namespace daeo

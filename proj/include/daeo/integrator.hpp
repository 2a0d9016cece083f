/**
 * @file integrator.hpp
 * @brief Implicit trapezoidal integration of x' = f(x, y), grad_y h(x, y) = 0
 * with a global search after every step and optional event location.
 */
#ifndef DAEO_INTEGRATOR_HPP
#define DAEO_INTEGRATOR_HPP

#include <cstddef>
#include <vector>

#include "daeo/config.hpp"
#include "daeo/events.hpp"
#include "daeo/global_optimizer.hpp"
#include "daeo/linalg.hpp"
#include "daeo/problem.hpp"

namespace daeo {

struct StepResult {
  Vector x;
  Vector y;
};

/**
 * @brief One trapezoidal step continuing the branch of y_k.
 *
 * Solves x' - x_k - dt/2 (f(x', y') + f(x_k, y_k)) = 0 and
 * grad_y h(x', y') = 0 by Newton with an LU-factored Jacobian. Throws
 * StepFailure carrying the last iterate when Newton does not converge.
 */
StepResult trapezoid_step(const DAEOProblem &p, double t_k, const Vector &x_k,
                          const Vector &y_k, double dt,
                          const IntegratorConfig &cfg);

struct TrajectoryPoint {
  double t = 0.0;
  Vector x;
  /// Active minimizer.
  Vector ystar;
  double hstar = 0.0;
  LocalOptimaSet optima;
  /// Label of the active member of @c optima.
  std::size_t active_label = 0;
  /// True for the extra point recorded at a located event.
  bool is_event = false;
};

struct Trajectory {
  /// Strictly increasing in t.
  std::vector<TrajectoryPoint> points;
  std::vector<EventRecord> events;
  double dt = 0.0;
};

/// Integrates from p.t0 to cfg.t_end (or p.t_end) on the grid t0 + k dt.
/// Throws SimulationError with the start time of the failing step.
Trajectory simulate(const DAEOProblem &p, const IntegratorConfig &cfg);

} // namespace daeo

#endif // DAEO_INTEGRATOR_HPP

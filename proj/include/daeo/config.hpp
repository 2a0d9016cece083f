/**
 * @file config.hpp
 * @brief Settings of the time integrator and event handling.
 */
#ifndef DAEO_CONFIG_HPP
#define DAEO_CONFIG_HPP

#include <cstddef>
#include <optional>

#include "daeo/global_optimizer.hpp"

namespace daeo {

struct IntegratorConfig {
  double dt = 0.02;
  /// Residual norm at which Newton iterations stop.
  double newton_tol = 1e-12;
  std::size_t max_newton_iters = 50;
  bool events_enabled = true;
  /// Safety factor on the optimizer displacement bound.
  double detect_safety = 2.0;
  double detect_abstol = 1e-8;
  double tie_tol = 1e-9;
  /// Target |H| at a located event.
  double event_tol = 1e-10;
  std::size_t max_event_iters = 25;
  std::size_t max_bisection_probes = 60;
  /// A step is halved at most this many times before the run aborts.
  std::size_t max_split_depth = 10;
  /// Overrides the problem horizon.
  std::optional<double> t_end;
  OptimizerConfig optimizer;

  /// Throws ConfigError on non-positive step, tolerances or limits.
  void validate() const;
};

} // namespace daeo

#endif // DAEO_CONFIG_HPP

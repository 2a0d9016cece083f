/**
 * @file errors.hpp
 * @brief Exception types raised by the DAEO library.
 */
#ifndef DAEO_ERRORS_HPP
#define DAEO_ERRORS_HPP

#include <stdexcept>
#include <string>

#include "daeo/linalg.hpp"

namespace daeo {

/// Invalid arguments to a constructor (reversed bounds, NaN, empty boxes).
class ConstructionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An elemental or arithmetic operation was applied outside its domain.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Rejected configuration values.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Lookup of a problem name that is not registered.
class UnknownProblem : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// The branch-and-bound work queue grew past its configured limit.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Newton refinement inside a certified box did not converge.
class RefinementFailure : public std::runtime_error {
public:
  RefinementFailure(const std::string &what, Vector lower, Vector upper)
      : std::runtime_error(what), box_lower(std::move(lower)),
        box_upper(std::move(upper)) {}
  Vector box_lower;
  Vector box_upper;
};

/// The Hessian of the objective is singular or indefinite where it must not
/// be.
class DegeneracyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Newton on the discretized DAE did not converge. Carries the last iterate.
class StepFailure : public std::runtime_error {
public:
  StepFailure(const std::string &what, Vector x, Vector y)
      : std::runtime_error(what), x_last(std::move(x)), y_last(std::move(y)) {}
  Vector x_last;
  Vector y_last;
};

/// A local optimum could not be followed to the next state.
class TrackingFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The event root could not be located on a segment.
class LocationFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Evaluation outside the validity range of an interpolant.
class RangeError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// Malformed command line.
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// The requested operation needs data the problem does not provide.
class UnsupportedProblem : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// The time loop had to abort. @c t is the start of the offending step.
class SimulationError : public std::runtime_error {
public:
  SimulationError(const std::string &what, double at)
      : std::runtime_error(what), t(at) {}
  double t;
};

} // namespace daeo

#endif // DAEO_ERRORS_HPP

/**
 * @file events.hpp
 * @brief Detection and location of switches of the global minimizer between
 * two local-minimizer branches.
 *
 * A switch is detected when the global minimizer moves further in one step
 * than its own sensitivity allows. It is located as the root of the event
 * function H = h(x, y1) - h(x, y2) along a cubic Hermite interpolant of the
 * state over the step.
 */
#ifndef DAEO_EVENTS_HPP
#define DAEO_EVENTS_HPP

#include "daeo/algebra.hpp"
#include "daeo/config.hpp"
#include "daeo/linalg.hpp"
#include "daeo/problem.hpp"

namespace daeo {

/// event_detected == (displacement > bound)
struct DetectionVerdict {
  bool event_detected = false;
  double displacement = 0.0;
  double bound = 0.0;
};

/// bound = gamma * |dt| * |dydt_k| + abstol, Euclidean norms.
DetectionVerdict detect_event(const Vector &ystar_k, const Vector &ystar_next,
                              const Vector &dydt_k, double dt, double gamma,
                              double abstol);

/// H = h(x, y1) - h(x, y2)
double event_function(const Objective &h, const Vector &x, const Vector &y1,
                      const Vector &y2);

/// dH/dx including the grad_y h * dy/dx terms of both branches.
Vector event_gradient(const Objective &h, const Vector &x, const Vector &y1,
                      const Vector &y2);

/// State and slope at both ends of one step.
struct DenseSegment {
  double t_k = 0.0;
  double t_next = 0.0;
  Vector x_k;
  Vector x_next;
  Vector f_k;
  Vector f_next;
};

/// Cubic Hermite interpolant. Throws RangeError outside [t_k, t_next].
Vector dense_output(const DenseSegment &seg, double t);
/// Time derivative of the interpolant.
Vector dense_derivative(const DenseSegment &seg, double t);

/**
 * @brief Follows a local minimizer from y_prev to the state x_next.
 *
 * Newton starts from y_prev + dt * dydt_prev. Throws TrackingFailure on
 * divergence, an indefinite Hessian, or a result further from y_prev than
 * the detection bound for |dt|.
 */
Vector track_local_optimum(const Objective &h, const Vector &x_next,
                           const Vector &y_prev, const Vector &dydt_prev,
                           double dt, const IntegratorConfig &cfg);

enum class LocatedBy { newton, bisection };

struct EventRecord {
  double t_event = 0.0;
  Vector x_event;
  /// Active minimizer before and after the switch.
  Vector y_before;
  Vector y_after;
  LocatedBy located_by = LocatedBy::newton;
};

/**
 * @brief Safeguarded Newton on s(t) = H(x~(t)) over the segment.
 *
 * y1_k and y2_k are the outgoing and incoming branches at seg.t_k; both are
 * re-tracked at every iterate. Two Newton steps outside the bracket switch
 * to bisection on s. Throws LocationFailure without a sign change, for a
 * non-transversal crossing, or when the probe budget is exhausted. Throws
 * TrackingFailure when a branch cannot be followed.
 */
EventRecord locate_event(const DAEOProblem &p, const DenseSegment &seg,
                         const Vector &y1_k, const Vector &y2_k,
                         const IntegratorConfig &cfg);

/**
 * @brief Bisection on whether the global minimizer has left the branch of
 * y1_k, with a full global search per probe.
 *
 * For steps where the incoming branch does not exist over the whole segment.
 * Throws LocationFailure when the probe budget is exhausted.
 */
EventRecord locate_event_by_search(const DAEOProblem &p,
                                   const DenseSegment &seg, const Vector &y1_k,
                                   const IntegratorConfig &cfg);

} // namespace daeo

#endif // DAEO_EVENTS_HPP

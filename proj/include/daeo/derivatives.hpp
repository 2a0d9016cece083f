/**
 * @file derivatives.hpp
 * @brief Real and interval derivatives of problem functions by
 * forward-over-forward propagation.
 */
#ifndef DAEO_DERIVATIVES_HPP
#define DAEO_DERIVATIVES_HPP

#include "daeo/algebra.hpp"
#include "daeo/box.hpp"
#include "daeo/linalg.hpp"

namespace daeo {

/// ∂_y h(x, y)
Vector gradient_y(const Objective &h, const Vector &x, const Vector &y);
/// ∂_x h(x, y)
Vector gradient_x(const Objective &h, const Vector &x, const Vector &y);
/// ∂²_yy h(x, y), n_y x n_y
Matrix hessian_yy(const Objective &h, const Vector &x, const Vector &y);
/// ∂²_yx h(x, y), n_y x n_x
Matrix hessian_yx(const Objective &h, const Vector &x, const Vector &y);

/// Everything up to second order from one pass seeded on (x, y).
struct ObjectiveDerivatives {
  double value = 0.0;
  Vector grad_x;
  Vector grad_y;
  Matrix hess_yy;
  Matrix hess_yx;
};
ObjectiveDerivatives objective_derivatives(const Objective &h, const Vector &x,
                                           const Vector &y);

/// Enclosure of {∂_y h(x, y) | y in ybox}.
IntervalVector interval_gradient_y(const Objective &h, const Vector &x,
                                   const IntervalVector &ybox);
/// Enclosure of {∂²_yy h(x, y) | y in ybox}.
IntervalSymMatrix interval_hessian_yy(const Objective &h, const Vector &x,
                                      const IntervalVector &ybox);

/// Value, gradient and Hessian enclosures over a y-box from a single
/// Dual2<Interval> evaluation.
struct IntervalEnclosure {
  Interval value;
  IntervalVector gradient;
  IntervalSymMatrix hessian;
};
IntervalEnclosure interval_enclosure_y(const Objective &h, const Vector &x,
                                       const IntervalVector &ybox);

/// f(x, y) with its Jacobians ∂_x f (n_x x n_x) and ∂_y f (n_x x n_y).
struct DynamicsJacobian {
  Vector value;
  Matrix d_x;
  Matrix d_y;
};
Vector evaluate_dynamics(const Dynamics &f, const Vector &x, const Vector &y);
DynamicsJacobian dynamics_jacobian(const Dynamics &f, const Vector &x,
                                   const Vector &y);

} // namespace daeo

#endif // DAEO_DERIVATIVES_HPP

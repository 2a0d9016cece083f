/**
 * @file sensitivity.hpp
 * @brief Sensitivities of a local minimizer y(x) of h(x, .) and Newton
 * refinement of stationary points.
 */
#ifndef DAEO_SENSITIVITY_HPP
#define DAEO_SENSITIVITY_HPP

#include <cstddef>
#include <optional>

#include "daeo/algebra.hpp"
#include "daeo/linalg.hpp"
#include "daeo/problem.hpp"

namespace daeo {

/// dy/dx = -(h_yy)^{-1} h_yx, n_y x n_x. Throws DegeneracyError unless h_yy
/// is positive definite.
Matrix implicit_dy_dx(const Objective &h, const Vector &x, const Vector &y);

/// dy/dt = dy/dx f(x, y) along the flow.
Vector dy_dt(const DAEOProblem &p, const Vector &x, const Vector &y);

/**
 * @brief Newton on grad_y h(x, .) = 0 from @p y0.
 *
 * Converged when the gradient norm is at most @p tol, or when the iterate
 * stalls at the rounding floor with a gradient norm of at most sqrt(tol).
 * Returns nothing on divergence or a singular Hessian.
 */
std::optional<Vector> newton_stationary(const Objective &h, const Vector &x,
                                        const Vector &y0, double tol,
                                        std::size_t max_iters);

} // namespace daeo

#endif // DAEO_SENSITIVITY_HPP

#include "daeo/sensitivity.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "daeo/derivatives.hpp"
#include "daeo/errors.hpp"

namespace daeo {

Matrix implicit_dy_dx(const Objective &h, const Vector &x, const Vector &y) {
  ObjectiveDerivatives d = objective_derivatives(h, x, y);
  Eigen::LLT<Matrix> llt(d.hess_yy);
  if (llt.info() != Eigen::Success) {
    throw DegeneracyError("objective Hessian is not positive definite");
  }
  return -llt.solve(d.hess_yx);
}

Vector dy_dt(const DAEOProblem &p, const Vector &x, const Vector &y) {
  return implicit_dy_dx(p.h, x, y) * evaluate_dynamics(p.f, x, y);
}

std::optional<Vector> newton_stationary(const Objective &h, const Vector &x,
                                        const Vector &y0, double tol,
                                        std::size_t max_iters) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  Vector y = y0;
  for (std::size_t it = 0; it <= max_iters; ++it) {
    const Vector g = gradient_y(h, x, y);
    const double gnorm = g.norm();
    if (!std::isfinite(gnorm)) {
      return std::nullopt;
    }
    if (gnorm <= tol) {
      return y;
    }
    if (it == max_iters) {
      break;
    }
    Eigen::PartialPivLU<Matrix> lu(hessian_yy(h, x, y));
    if (!(std::abs(lu.determinant()) > 0.0)) {
      return std::nullopt;
    }
    const Vector step = lu.solve(g);
    y -= step;
    if (step.norm() <= 4.0 * eps * (1.0 + y.norm())) {
      if (gradient_y(h, x, y).norm() <= std::sqrt(tol)) {
        return y;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

} // namespace daeo

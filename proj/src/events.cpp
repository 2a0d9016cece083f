#include "daeo/events.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>

#include "daeo/derivatives.hpp"
#include "daeo/errors.hpp"
#include "daeo/global_optimizer.hpp"
#include "daeo/sensitivity.hpp"

namespace daeo {

DetectionVerdict detect_event(const Vector &ystar_k, const Vector &ystar_next,
                              const Vector &dydt_k, double dt, double gamma,
                              double abstol) {
  DetectionVerdict v;
  v.displacement = (ystar_next - ystar_k).norm();
  v.bound = gamma * std::abs(dt) * dydt_k.norm() + abstol;
  v.event_detected = v.displacement > v.bound;
  return v;
}

double event_function(const Objective &h, const Vector &x, const Vector &y1,
                      const Vector &y2) {
  return h(as_span(x), as_span(y1)) - h(as_span(x), as_span(y2));
}

namespace {

Vector total_x_derivative(const Objective &h, const Vector &x,
                          const Vector &y) {
  ObjectiveDerivatives d = objective_derivatives(h, x, y);
  return d.grad_x + implicit_dy_dx(h, x, y).transpose() * d.grad_y;
}

void check_inside(const DenseSegment &seg, double t) {
  if (!(t >= seg.t_k && t <= seg.t_next)) {
    throw RangeError("time outside the interpolation segment");
  }
}

} // namespace

Vector event_gradient(const Objective &h, const Vector &x, const Vector &y1,
                      const Vector &y2) {
  return total_x_derivative(h, x, y1) - total_x_derivative(h, x, y2);
}

Vector dense_output(const DenseSegment &seg, double t) {
  check_inside(seg, t);
  const double span = seg.t_next - seg.t_k;
  const double s = (t - seg.t_k) / span;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  return h00 * seg.x_k + h10 * span * seg.f_k + h01 * seg.x_next +
         h11 * span * seg.f_next;
}

Vector dense_derivative(const DenseSegment &seg, double t) {
  check_inside(seg, t);
  const double span = seg.t_next - seg.t_k;
  const double s = (t - seg.t_k) / span;
  const double s2 = s * s;
  const double d00 = 6.0 * s2 - 6.0 * s;
  const double d10 = 3.0 * s2 - 4.0 * s + 1.0;
  const double d01 = -6.0 * s2 + 6.0 * s;
  const double d11 = 3.0 * s2 - 2.0 * s;
  return (d00 * seg.x_k + d01 * seg.x_next) / span + d10 * seg.f_k +
         d11 * seg.f_next;
}

Vector track_local_optimum(const Objective &h, const Vector &x_next,
                           const Vector &y_prev, const Vector &dydt_prev,
                           double dt, const IntegratorConfig &cfg) {
  const Vector predictor = y_prev + dt * dydt_prev;
  auto y = newton_stationary(h, x_next, predictor, cfg.newton_tol,
                             cfg.max_newton_iters);
  if (!y) {
    throw TrackingFailure("Newton diverged while tracking a local minimizer");
  }
  Eigen::LLT<Matrix> llt(hessian_yy(h, x_next, *y));
  if (llt.info() != Eigen::Success) {
    throw TrackingFailure("tracked point is not a strict local minimizer");
  }
  const double bound =
      cfg.detect_safety * std::abs(dt) * dydt_prev.norm() + cfg.detect_abstol;
  if ((*y - y_prev).norm() > bound) {
    throw TrackingFailure("tracked minimizer left its basin");
  }
  return *y;
}

namespace {

struct Probe {
  double t = 0.0;
  double s = 0.0;
  double ds = 0.0;
  Vector x;
  Vector y1;
  Vector y2;
};

/// Minimum ratio of the local slope at the root to the secant slope over
/// the segment. Below this the crossing is treated as tangential.
constexpr double kTransversality = 1e-3;

bool same_sign(double a, double b) { return (a > 0.0) == (b > 0.0); }

} // namespace

EventRecord locate_event(const DAEOProblem &p, const DenseSegment &seg,
                         const Vector &y1_k, const Vector &y2_k,
                         const IntegratorConfig &cfg) {
  const double span = seg.t_next - seg.t_k;
  const Vector dydt1 = dy_dt(p, seg.x_k, y1_k);
  const Vector dydt2 = dy_dt(p, seg.x_k, y2_k);

  auto probe = [&](double t) {
    Probe r;
    r.t = t;
    r.x = dense_output(seg, t);
    const double elapsed = t - seg.t_k;
    r.y1 = track_local_optimum(p.h, r.x, y1_k, dydt1, elapsed, cfg);
    r.y2 = track_local_optimum(p.h, r.x, y2_k, dydt2, elapsed, cfg);
    r.s = event_function(p.h, r.x, r.y1, r.y2);
    r.ds = event_gradient(p.h, r.x, r.y1, r.y2).dot(dense_derivative(seg, t));
    return r;
  };

  const Probe lo = probe(seg.t_k);
  const Probe hi = probe(seg.t_next);
  if (same_sign(lo.s, hi.s) && lo.s != 0.0 && hi.s != 0.0) {
    throw LocationFailure("event function does not change sign on the step");
  }
  const double secant = std::abs(hi.s - lo.s) / span;

  const double t_min = std::nextafter(seg.t_k, seg.t_next);
  const double t_max = std::nextafter(seg.t_next, seg.t_k);

  auto finish = [&](const Probe &r, LocatedBy how) {
    if (std::abs(r.ds) < kTransversality * secant) {
      throw LocationFailure("event crossing is not transversal");
    }
    return EventRecord{std::clamp(r.t, t_min, t_max), r.x, r.y1, r.y2, how};
  };

  double a = seg.t_k;
  double b = seg.t_next;
  double sa = lo.s;
  double t = hi.s != lo.s ? a - sa * (b - a) / (hi.s - sa) : 0.5 * (a + b);
  t = std::clamp(t, t_min, t_max);

  int outside = 0;
  for (std::size_t it = 0; it < cfg.max_event_iters && outside < 2; ++it) {
    Probe r = probe(t);
    if (std::abs(r.s) <= cfg.event_tol) {
      return finish(r, LocatedBy::newton);
    }
    if (same_sign(r.s, sa)) {
      a = t;
      sa = r.s;
    } else {
      b = t;
    }
    double next = t - r.s / r.ds;
    if (!std::isfinite(next) || !(next > a && next < b)) {
      ++outside;
      next = 0.5 * (a + b);
    }
    t = next;
  }

  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t probes = 0; probes < cfg.max_bisection_probes; ++probes) {
    t = 0.5 * (a + b);
    Probe r = probe(t);
    if (std::abs(r.s) <= cfg.event_tol ||
        b - a <= 4.0 * eps * std::max(1.0, std::abs(t))) {
      return finish(r, LocatedBy::bisection);
    }
    if (same_sign(r.s, sa)) {
      a = t;
      sa = r.s;
    } else {
      b = t;
    }
  }
  throw LocationFailure("event location exhausted its probe budget");
}

EventRecord locate_event_by_search(const DAEOProblem &p,
                                   const DenseSegment &seg, const Vector &y1_k,
                                   const IntegratorConfig &cfg) {
  const Vector dydt1 = dy_dt(p, seg.x_k, y1_k);

  struct Verdict {
    bool switched;
    Vector y;
  };
  auto classify = [&](double t) {
    const Vector x = dense_output(seg, t);
    LocalOptimaSet s = find_local_optima(p.h, x, p.ydomain, cfg.optimizer);
    const Vector y = global_minimum(s, cfg.tie_tol).optimum.y;
    const bool switched = detect_event(y1_k, y, dydt1, t - seg.t_k,
                                       cfg.detect_safety, cfg.detect_abstol)
                              .event_detected;
    return Verdict{switched, y};
  };

  Verdict at_end = classify(seg.t_next);
  if (!at_end.switched) {
    throw LocationFailure("global minimizer did not switch on the step");
  }
  double a = seg.t_k;
  double b = seg.t_next;
  Vector ya = y1_k;
  Vector yb = at_end.y;
  const double time_tol = 1e-13 * std::max(1.0, std::abs(seg.t_next));

  std::size_t probes = 1;
  while (b - a > time_tol) {
    if (probes++ >= cfg.max_bisection_probes) {
      throw LocationFailure("event bisection exhausted its probe budget");
    }
    const double m = 0.5 * (a + b);
    Verdict v = classify(m);
    if (v.switched) {
      b = m;
      yb = std::move(v.y);
    } else {
      a = m;
      ya = std::move(v.y);
    }
  }
  const double t = std::clamp(0.5 * (a + b), std::nextafter(seg.t_k, seg.t_next),
                              std::nextafter(seg.t_next, seg.t_k));
  return EventRecord{t, dense_output(seg, t), ya, yb, LocatedBy::bisection};
}

} // namespace daeo

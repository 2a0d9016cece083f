#include "daeo/global_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Cholesky>

#include "daeo/derivatives.hpp"
#include "daeo/errors.hpp"

namespace daeo {

void OptimizerConfig::validate() const {
  if (!(min_width > 0.0) || !(merge_tol > 0.0) || !(newton_tol > 0.0) ||
      !(tie_tol > 0.0)) {
    throw ConfigError("optimizer tolerances must be positive");
  }
  if (max_depth == 0 || max_boxes == 0 || max_newton_iters == 0) {
    throw ConfigError("optimizer limits must be positive");
  }
  if (alpha && !(*alpha > 0.0)) {
    throw ConfigError("pruning alpha must be positive");
  }
  if (!(split_fraction > 0.0 && split_fraction < 1.0)) {
    throw ConfigError("split fraction must lie in (0, 1)");
  }
}

namespace {

double value_at(const Objective &h, const Vector &x, const Vector &y) {
  return h(as_span(x), as_span(y));
}

bool lower_corner_less(const IntervalVector &a, const IntervalVector &b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].lo() != b[i].lo()) {
      return a[i].lo() < b[i].lo();
    }
  }
  return false;
}

bool certainly_nonconvex(const IntervalSymMatrix &hess) {
  for (std::size_t i = 0; i < hess.size(); ++i) {
    if (hess(i, i).hi() < 0.0) {
      return true;
    }
  }
  return false;
}

/// Narrows gradient components that are monotone over @p box. Component i
/// is monotone when no entry of Hessian row i contains zero; its range is
/// then attained at two opposite corners, enclosed by point evaluations.
void tighten_monotone(const Objective &h, const Vector &x,
                      const IntervalVector &box, IntervalVector &grad,
                      const IntervalSymMatrix &hess) {
  const std::size_t n = box.size();
  for (std::size_t i = 0; i < n; ++i) {
    bool monotone = true;
    for (std::size_t j = 0; j < n && monotone; ++j) {
      monotone = !hess(i, j).contains(0.0);
    }
    if (!monotone) {
      continue;
    }
    std::vector<Interval> low_corner(n);
    std::vector<Interval> high_corner(n);
    for (std::size_t j = 0; j < n; ++j) {
      const bool increasing = hess(i, j).lo() > 0.0;
      low_corner[j] = Interval(increasing ? box[j].lo() : box[j].hi());
      high_corner[j] = Interval(increasing ? box[j].hi() : box[j].lo());
    }
    const double lo =
        interval_gradient_y(h, x, IntervalVector(std::move(low_corner)))[i].lo();
    const double hi =
        interval_gradient_y(h, x, IntervalVector(std::move(high_corner)))[i].hi();
    const double a = std::max(lo, grad[i].lo());
    const double b = std::min(hi, grad[i].hi());
    if (a <= b) {
      grad[i] = Interval(a, b);
    }
  }
}

bool strictly_inside(const Vector &y, const Vector &lo, const Vector &hi) {
  return ((y.array() > lo.array()) && (y.array() < hi.array())).all();
}

/// Gradient with components pointing out of the box at an active bound
/// zeroed. @p active marks those components.
Vector projected_gradient(const Vector &g, const Vector &y, const Vector &lo,
                          const Vector &hi, std::vector<bool> &active) {
  Vector pg = g;
  active.assign(static_cast<std::size_t>(g.size()), false);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    if ((y[i] <= lo[i] && g[i] > 0.0) || (y[i] >= hi[i] && g[i] < 0.0)) {
      pg[i] = 0.0;
      active[static_cast<std::size_t>(i)] = true;
    }
  }
  return pg;
}

/// Newton direction on the free components, steepest descent where the
/// reduced Hessian is not positive definite.
Vector free_direction(const Vector &g, const Matrix &hess,
                      const std::vector<bool> &active) {
  std::vector<Eigen::Index> free;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    if (!active[static_cast<std::size_t>(i)]) {
      free.push_back(i);
    }
  }
  const auto nf = static_cast<Eigen::Index>(free.size());
  Matrix hff(nf, nf);
  Vector gf(nf);
  for (Eigen::Index a = 0; a < nf; ++a) {
    gf[a] = g[free[static_cast<std::size_t>(a)]];
    for (Eigen::Index b = 0; b < nf; ++b) {
      hff(a, b) = hess(free[static_cast<std::size_t>(a)],
                       free[static_cast<std::size_t>(b)]);
    }
  }
  Vector pf;
  Eigen::LLT<Matrix> llt(hff);
  if (llt.info() == Eigen::Success) {
    pf = -llt.solve(gf);
  } else {
    pf = -gf;
  }
  Vector p = Vector::Zero(g.size());
  for (Eigen::Index a = 0; a < nf; ++a) {
    p[free[static_cast<std::size_t>(a)]] = pf[a];
  }
  return p;
}

Vector clamp_to(const Vector &y, const Vector &lo, const Vector &hi) {
  return y.cwiseMax(lo).cwiseMin(hi);
}

std::optional<LocalOptimum> projected_newton(const Objective &h,
                                             const Vector &x,
                                             const IntervalVector &box,
                                             const OptimizerConfig &cfg) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  // Accepted gradient norm when the iteration stalls at the rounding floor.
  const double stall_tol = std::sqrt(cfg.newton_tol);
  const Vector lo = box.lower();
  const Vector hi = box.upper();
  Vector y = box.midpoint();
  std::vector<bool> active;

  auto finish = [&](const Vector &yy) {
    return LocalOptimum{yy, value_at(h, x, yy), 0};
  };

  for (std::size_t it = 0; it < cfg.max_newton_iters; ++it) {
    const Vector g = gradient_y(h, x, y);
    const Vector pg = projected_gradient(g, y, lo, hi, active);
    const double gnorm = pg.norm();
    const bool any_active = std::find(active.begin(), active.end(), true) !=
                            active.end();
    if (gnorm <= cfg.newton_tol) {
      if (any_active) {
        return std::nullopt;
      }
      return finish(y);
    }

    const Vector p = free_direction(g, hessian_yy(h, x, y), active);
    const double hy = value_at(h, x, y);
    double step = 1.0;
    Vector next = y;
    bool accepted = false;
    for (int ls = 0; ls < 60 && !accepted; ++ls, step *= 0.5) {
      next = clamp_to(y + step * p, lo, hi);
      if (value_at(h, x, next) <= hy + 1e-4 * g.dot(next - y)) {
        accepted = true;
        break;
      }
      std::vector<bool> active_next;
      Vector gn = gradient_y(h, x, next);
      if (projected_gradient(gn, next, lo, hi, active_next).norm() < gnorm) {
        accepted = true;
        break;
      }
    }

    const bool stalled =
        !accepted || (next - y).norm() <= 4.0 * eps * (1.0 + y.norm());
    if (stalled) {
      if (!any_active && strictly_inside(y, lo, hi) && g.norm() <= stall_tol) {
        return finish(y);
      }
      return std::nullopt;
    }
    y = next;
  }
  throw RefinementFailure("Newton refinement did not converge", lo, hi);
}

} // namespace

BoxSearch search_boxes(const Objective &h, const Vector &x,
                       const IntervalVector &domain,
                       const OptimizerConfig &cfg) {
  cfg.validate();
  BoxSearch out;
  std::vector<BoxTask> stack{{domain, 0}};
  double incumbent = std::numeric_limits<double>::infinity();
  const double alpha = cfg.pruning_alpha();

  while (!stack.empty()) {
    BoxTask task = std::move(stack.back());
    stack.pop_back();

    IntervalEnclosure enc = interval_enclosure_y(h, x, task.box);
    if (cfg.pruning && enc.value.lo() > incumbent + alpha) {
      ++out.pruned;
      continue;
    }
    if (!contains_zero(enc.gradient) || certainly_nonconvex(enc.hessian)) {
      ++out.discarded;
      continue;
    }
    if (cfg.pruning) {
      incumbent = std::min(incumbent, value_at(h, x, task.box.midpoint()));
    }
    if (is_positive_definite(enc.hessian)) {
      tighten_monotone(h, x, task.box, enc.gradient, enc.hessian);
      if (!contains_zero(enc.gradient)) {
        ++out.discarded;
        continue;
      }
      out.certified.push_back(
          {std::move(task.box), std::move(enc.gradient), std::move(enc.hessian)});
      continue;
    }
    if (task.box.width() <= cfg.min_width || task.depth >= cfg.max_depth) {
      out.unresolved.push_back(std::move(task));
      continue;
    }
    auto [left, right] = task.box.split(cfg.split_fraction);
    stack.push_back({std::move(right), task.depth + 1});
    stack.push_back({std::move(left), task.depth + 1});
    if (stack.size() > cfg.max_boxes) {
      throw ResourceError("box work list exceeded its limit");
    }
  }

  std::sort(out.certified.begin(), out.certified.end(),
            [](const CertifiedBox &a, const CertifiedBox &b) {
              return lower_corner_less(a.box, b.box);
            });
  std::sort(out.unresolved.begin(), out.unresolved.end(),
            [](const BoxTask &a, const BoxTask &b) {
              return lower_corner_less(a.box, b.box);
            });
  return out;
}

std::vector<CertifiedBox> find_convex_boxes(const Objective &h, const Vector &x,
                                            const IntervalVector &domain,
                                            const OptimizerConfig &cfg) {
  return search_boxes(h, x, domain, cfg).certified;
}

std::optional<LocalOptimum> local_refine(const Objective &h, const Vector &x,
                                         const CertifiedBox &box,
                                         const OptimizerConfig &cfg) {
  return projected_newton(h, x, box.box, cfg);
}

std::optional<LocalOptimum> refine_in_box(const Objective &h, const Vector &x,
                                          const IntervalVector &box,
                                          const OptimizerConfig &cfg) {
  auto opt = projected_newton(h, x, box, cfg);
  if (opt && !is_strict_local_minimum(h, x, opt->y,
                                      std::sqrt(cfg.newton_tol))) {
    return std::nullopt;
  }
  return opt;
}

LocalOptimaSet find_local_optima(const Objective &h, const Vector &x,
                                 const IntervalVector &domain,
                                 const OptimizerConfig &cfg) {
  BoxSearch search = search_boxes(h, x, domain, cfg);
  std::vector<LocalOptimum> candidates;
  for (const auto &box : search.certified) {
    if (auto opt = local_refine(h, x, box, cfg)) {
      candidates.push_back(std::move(*opt));
    }
  }
  for (const auto &task : search.unresolved) {
    try {
      if (auto opt = refine_in_box(h, x, task.box, cfg)) {
        candidates.push_back(std::move(*opt));
      }
    } catch (const RefinementFailure &) {
      // Unresolved boxes carry no certificate; a failed refinement there
      // is not evidence of a missed minimum.
    }
  }

  LocalOptimaSet out;
  out.x = x;
  for (auto &c : candidates) {
    auto dup = std::find_if(out.optima.begin(), out.optima.end(),
                            [&](const LocalOptimum &o) {
                              return (o.y - c.y).norm() <= cfg.merge_tol;
                            });
    if (dup == out.optima.end()) {
      out.optima.push_back(std::move(c));
    } else if (c.value < dup->value) {
      *dup = std::move(c);
    }
  }
  std::sort(out.optima.begin(), out.optima.end(),
            [](const LocalOptimum &a, const LocalOptimum &b) {
              if (a.value != b.value) {
                return a.value < b.value;
              }
              return std::lexicographical_compare(a.y.begin(), a.y.end(),
                                                  b.y.begin(), b.y.end());
            });
  return out;
}

GlobalChoice global_minimum(const LocalOptimaSet &s, double tie_tol) {
  if (s.optima.empty()) {
    throw std::logic_error("global minimum of an empty optima set");
  }
  auto best = std::min_element(
      s.optima.begin(), s.optima.end(),
      [](const LocalOptimum &a, const LocalOptimum &b) { return a.value < b.value; });
  bool tie = std::any_of(s.optima.begin(), s.optima.end(),
                         [&](const LocalOptimum &o) {
                           return &o != &*best &&
                                  o.value - best->value <= tie_tol;
                         });
  return {*best, tie};
}

double lower_bound(const Objective &h, const Vector &x,
                   const IntervalVector &box) {
  std::vector<Interval> xs;
  xs.reserve(static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    xs.emplace_back(x[i]);
  }
  return h(std::span<const Interval>(xs),
           std::span<const Interval>(box.components()))
      .lo();
}

bool is_strict_local_minimum(const Objective &h, const Vector &x,
                             const Vector &y, double grad_tol) {
  if (gradient_y(h, x, y).norm() > grad_tol) {
    return false;
  }
  Eigen::LLT<Matrix> llt(hessian_yy(h, x, y));
  return llt.info() == Eigen::Success;
}

} // namespace daeo

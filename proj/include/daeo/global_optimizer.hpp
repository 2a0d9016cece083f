/**
 * @file global_optimizer.hpp
 * @brief Branch-and-bound enumeration of all local minimizers of h(x, .)
 * over a box, using interval enclosures of the gradient and Hessian.
 *
 * A box is discarded when its gradient enclosure excludes zero or some
 * Hessian diagonal is certainly negative. It is certified when the gradient
 * enclosure contains zero and the Hessian enclosure is positive definite,
 * which leaves at most one strict local minimizer inside. Everything else is
 * split until it is certified or falls below the width floor.
 */
#ifndef DAEO_GLOBAL_OPTIMIZER_HPP
#define DAEO_GLOBAL_OPTIMIZER_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "daeo/algebra.hpp"
#include "daeo/box.hpp"
#include "daeo/linalg.hpp"

namespace daeo {

struct OptimizerConfig {
  /// Ambiguous boxes narrower than this are reported as unresolved.
  double min_width = 1e-10;
  std::size_t max_depth = 60;
  /// Limit on the pending work list.
  std::size_t max_boxes = 100000;
  /// Optima closer than this are the same optimum.
  double merge_tol = 1e-8;
  /// Gradient norm accepted as stationary.
  double newton_tol = 1e-12;
  std::size_t max_newton_iters = 50;
  /// Optimum values closer than this count as a tie.
  double tie_tol = 1e-9;
  /// Discard boxes whose objective lower bound exceeds incumbent + alpha.
  bool pruning = false;
  /// Defaults to 10 * tie_tol.
  std::optional<double> alpha;
  /// Cut position within the widest component, relative to its lower end.
  /// Off-centre so that symmetric minimizers do not land on a cut.
  double split_fraction = 63.0 / 128.0;

  double pruning_alpha() const { return alpha.value_or(10.0 * tie_tol); }
  /// Throws ConfigError on non-positive tolerances or a fraction outside
  /// (0, 1).
  void validate() const;
};

struct BoxTask {
  IntervalVector box;
  std::size_t depth = 0;
};

/// 0 is in gradient_enclosure and hessian_enclosure is positive definite.
struct CertifiedBox {
  IntervalVector box;
  IntervalVector gradient_enclosure;
  IntervalSymMatrix hessian_enclosure;
};

struct BoxSearch {
  /// Sorted by lower corner.
  std::vector<CertifiedBox> certified;
  /// Ambiguous boxes at the width or depth floor, sorted by lower corner.
  std::vector<BoxTask> unresolved;
  std::size_t discarded = 0;
  std::size_t pruned = 0;
};

struct LocalOptimum {
  Vector y;
  double value = 0.0;
  /// Assigned by the integrator; zero when produced by the optimizer.
  std::size_t label = 0;
};

/// Pairwise distinct within merge_tol, sorted by value ascending.
struct LocalOptimaSet {
  std::vector<LocalOptimum> optima;
  Vector x;
  double t = 0.0;
};

struct GlobalChoice {
  LocalOptimum optimum;
  bool tie = false;
};

/// Full box search with bookkeeping of unresolved and discarded boxes.
/// Throws ResourceError when the work list exceeds cfg.max_boxes.
BoxSearch search_boxes(const Objective &h, const Vector &x,
                       const IntervalVector &domain,
                       const OptimizerConfig &cfg);

/// The certified boxes of search_boxes.
std::vector<CertifiedBox> find_convex_boxes(const Objective &h, const Vector &x,
                                            const IntervalVector &domain,
                                            const OptimizerConfig &cfg);

/**
 * @brief Projected Newton on the stationarity condition from the box
 * midpoint.
 *
 * Returns nothing when the iteration settles on the box boundary with a
 * nonzero gradient. Throws RefinementFailure after cfg.max_newton_iters.
 */
std::optional<LocalOptimum> local_refine(const Objective &h, const Vector &x,
                                         const CertifiedBox &box,
                                         const OptimizerConfig &cfg);

/// As above for a box without a certificate. Additionally requires a real
/// positive definite Hessian at the result.
std::optional<LocalOptimum> refine_in_box(const Objective &h, const Vector &x,
                                          const IntervalVector &box,
                                          const OptimizerConfig &cfg);

/// All local minimizers of h(x, .) in @p domain.
LocalOptimaSet find_local_optima(const Objective &h, const Vector &x,
                                 const IntervalVector &domain,
                                 const OptimizerConfig &cfg);

/// Minimum-value element. Throws std::logic_error for an empty set.
GlobalChoice global_minimum(const LocalOptimaSet &s, double tie_tol);

/// Lower end of the natural interval extension of h over @p box.
double lower_bound(const Objective &h, const Vector &x,
                   const IntervalVector &box);

/// Real second-order test: gradient norm within @p grad_tol and positive
/// definite Hessian.
bool is_strict_local_minimum(const Objective &h, const Vector &x,
                             const Vector &y, double grad_tol);

} // namespace daeo

#endif // DAEO_GLOBAL_OPTIMIZER_HPP

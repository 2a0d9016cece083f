/**
 * @file problem.hpp
 * @brief A DAEO instance x' = f(x, y), y in argmin h(x, .), and the built-in
 * problem registry.
 */
#ifndef DAEO_PROBLEM_HPP
#define DAEO_PROBLEM_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "daeo/algebra.hpp"
#include "daeo/box.hpp"
#include "daeo/linalg.hpp"

namespace daeo {

/// Known solution of a problem. @c x_of_t may be empty when only the event
/// times are known.
struct ReferenceSolution {
  std::function<Vector(double)> x_of_t;
  std::vector<double> event_times;
};

struct DAEOProblem {
  std::string name;
  std::size_t nx = 0;
  std::size_t ny = 0;
  Dynamics f;
  Objective h;
  Vector x0;
  double t0 = 0.0;
  double t_end = 0.0;
  /// Search box for the global optimizer.
  IntervalVector ydomain;
  std::optional<ReferenceSolution> reference;

  /// Throws ConstructionError on inconsistent dimensions or t0 >= t_end.
  void validate() const;
};

/// h(x, y) = (1 - y^2)^2 - (x - 1/2) sin(pi y / 2), f = -(2 + y) x.
/// Minima stay at y = +-1 and swap at x = 1/2.
DAEOProblem example1();

/// h(x, y) = (y - x)^2 + sin(5 y), f = y.
DAEOProblem example2();

template <typename S> struct Evaluation {
  std::vector<S> f;
  S h;
};

/// f and h at (x, y) in the scalar algebra @p S.
template <typename S>
Evaluation<S> evaluate(const DAEOProblem &p, std::span<const S> x,
                       std::span<const S> y) {
  Evaluation<S> out{std::vector<S>(p.nx), p.h(x, y)};
  p.f(x, y, std::span<S>(out.f));
  return out;
}

/// Throws UnknownProblem.
DAEOProblem make_problem(const std::string &name);
/// Registered names in lexicographic order.
std::vector<std::string> problem_names();
/// Adds a problem factory. Throws ConstructionError if @p name is taken.
void register_problem(const std::string &name,
                      std::function<DAEOProblem()> factory);

} // namespace daeo

#endif // DAEO_PROBLEM_HPP

/**
 * @file algebra.hpp
 * @brief Type-erased problem functions that can be evaluated over every
 * supported scalar algebra.
 *
 * A problem function is written once as a generic callable and instantiated
 * for each algebra when wrapped, so real, interval and derivative
 * evaluations all see the same expression.
 */
#ifndef DAEO_ALGEBRA_HPP
#define DAEO_ALGEBRA_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <tuple>

#include "daeo/dual.hpp"
#include "daeo/interval.hpp"

namespace daeo {

template <typename... Ts> struct ScalarList {};

/// Real, interval, and first/second order forward mode over both.
using SupportedScalars =
    ScalarList<double, Interval, Dual1<double>, Dual1<Interval>,
               Dual2<double>, Dual2<Interval>>;

template <typename S>
using ScalarFunction = std::function<S(std::span<const S>, std::span<const S>)>;

template <typename S>
using VectorFunction =
    std::function<void(std::span<const S>, std::span<const S>, std::span<S>)>;

namespace detail {
template <template <typename> class F, typename List> struct FunctionTuple;
template <template <typename> class F, typename... Ts>
struct FunctionTuple<F, ScalarList<Ts...>> {
  using type = std::tuple<F<Ts>...>;
  template <typename G> static type make(const G &g) { return type{F<Ts>(g)...}; }
};
} // namespace detail

/**
 * @brief Scalar objective h(x, y) evaluable over every supported scalar.
 *
 * Construct from a generic callable `g(std::span<const S> x,
 * std::span<const S> y) -> S`.
 */
class Objective {
  using Tuple = detail::FunctionTuple<ScalarFunction, SupportedScalars>;

public:
  Objective() = default;
  template <typename Generic>
  explicit Objective(const Generic &g) : m_fns(Tuple::make(g)) {}

  template <typename S>
  S operator()(std::span<const S> x, std::span<const S> y) const {
    return std::get<ScalarFunction<S>>(m_fns)(x, y);
  }

private:
  Tuple::type m_fns;
};

/**
 * @brief Vector-valued dynamics f(x, y) with n_x outputs.
 *
 * Construct from a generic callable `g(x, y, out)` writing into @c out.
 */
class Dynamics {
  using Tuple = detail::FunctionTuple<VectorFunction, SupportedScalars>;

public:
  Dynamics() = default;
  template <typename Generic>
  explicit Dynamics(const Generic &g) : m_fns(Tuple::make(g)) {}

  template <typename S>
  void operator()(std::span<const S> x, std::span<const S> y,
                  std::span<S> out) const {
    std::get<VectorFunction<S>>(m_fns)(x, y, out);
  }

private:
  Tuple::type m_fns;
};

} // namespace daeo

#endif // DAEO_ALGEBRA_HPP

/**
 * @file interval.hpp
 * @brief Closed floating-point intervals with outward rounding.
 *
 * Arithmetic results are rounded outward exactly (error-free transformations
 * decide the rounding direction of every bound), so each result contains the
 * real result for any members of the operands. Transcendental elementals are
 * evaluated in round-to-nearest and widened by a fixed number of ulps.
 *
 * Intervals that overlap cannot be compared meaningfully, so no ordering
 * operators are provided. Use the explicit bounds or the predicates in
 * box.hpp.
 */
#ifndef DAEO_INTERVAL_HPP
#define DAEO_INTERVAL_HPP

#include <cmath>
#include <iosfwd>

namespace daeo {

namespace rounding {
double add_down(double a, double b);
double add_up(double a, double b);
double sub_down(double a, double b);
double sub_up(double a, double b);
double mul_down(double a, double b);
double mul_up(double a, double b);
double div_down(double a, double b);
double div_up(double a, double b);
double sqrt_down(double a);
double sqrt_up(double a);
/// Step @p ulps floating-point numbers towards -inf / +inf.
double widen_down(double v, int ulps);
double widen_up(double v, int ulps);
} // namespace rounding

class Interval {
public:
  /// The degenerate interval [0, 0].
  constexpr Interval() noexcept = default;
  /// Degenerate interval [v, v]. Throws ConstructionError for NaN.
  explicit Interval(double point);
  /// Throws ConstructionError if lo > hi or either bound is NaN.
  Interval(double lo, double hi);

  double lo() const noexcept { return m_lo; }
  double hi() const noexcept { return m_hi; }

  /// hi - lo, rounded up.
  double width() const noexcept;
  double mid() const noexcept;
  /// max(|lo|, |hi|)
  double mag() const noexcept;
  /// min |v| over the interval
  double mig() const noexcept;

  bool contains(double v) const noexcept { return m_lo <= v && v <= m_hi; }
  /// true iff @p other is a subset of this interval
  bool contains(const Interval &other) const noexcept {
    return m_lo <= other.m_lo && other.m_hi <= m_hi;
  }
  bool is_point() const noexcept { return m_lo == m_hi; }

  Interval &operator+=(const Interval &rhs);
  Interval &operator-=(const Interval &rhs);
  Interval &operator*=(const Interval &rhs);
  Interval &operator/=(const Interval &rhs);

  friend bool operator==(const Interval &, const Interval &) = default;

private:
  struct unchecked_tag {};
  constexpr Interval(double lo, double hi, unchecked_tag) noexcept
      : m_lo(lo), m_hi(hi) {}
  friend Interval make_unchecked(double lo, double hi) noexcept;

  double m_lo = 0.0;
  double m_hi = 0.0;
};

/// Checked construction of [lo, hi].
Interval make_interval(double lo, double hi);

Interval operator-(const Interval &a);
Interval operator+(const Interval &a, const Interval &b);
Interval operator-(const Interval &a, const Interval &b);
Interval operator*(const Interval &a, const Interval &b);
/// Throws DomainError if @p b contains zero.
Interval operator/(const Interval &a, const Interval &b);

Interval operator+(const Interval &a, double b);
Interval operator+(double a, const Interval &b);
Interval operator-(const Interval &a, double b);
Interval operator-(double a, const Interval &b);
Interval operator*(const Interval &a, double b);
Interval operator*(double a, const Interval &b);
Interval operator/(const Interval &a, double b);
Interval operator/(double a, const Interval &b);

/// Smallest interval containing both arguments.
Interval hull(const Interval &a, const Interval &b);

// Elementals. Each returns the range of the function over the argument,
// rounded outward.
Interval sqr(const Interval &a);
Interval pow_int(const Interval &a, int n);
Interval sqrt(const Interval &a);
Interval exp(const Interval &a);
Interval log(const Interval &a);
Interval sin(const Interval &a);
Interval cos(const Interval &a);

std::ostream &operator<<(std::ostream &os, const Interval &a);

// The real algebra. Generic problem code calls these unqualified; the
// using-declarations keep the std overloads visible next to the interval ones.
using std::cos;
using std::exp;
using std::log;
using std::sin;
using std::sqrt;

inline double sqr(double a) { return a * a; }

inline double pow_int(double a, int n) {
  if (n < 0) {
    return 1.0 / pow_int(a, -n);
  }
  double result = 1.0;
  double base = a;
  while (n > 0) {
    if (n & 1) {
      result *= base;
    }
    base *= base;
    n >>= 1;
  }
  return result;
}

} // namespace daeo

#endif // DAEO_INTERVAL_HPP

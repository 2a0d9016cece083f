#include "daeo/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "daeo/errors.hpp"

namespace daeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMax = std::numeric_limits<double>::max();
constexpr double kEps = std::numeric_limits<double>::epsilon();
// Below this magnitude the residual of an error-free transformation may
// underflow, so the rounding direction is not trusted.
constexpr double kTiny = 0x1p-960;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// libm transcendental results are widened by this many ulps.
constexpr int kTranscendentalUlps = 2;

double next_down(double v) { return std::nextafter(v, -kInf); }
double next_up(double v) { return std::nextafter(v, kInf); }

// Exact error of s = fl(a + b), i.e. (a + b) - s.
double two_sum_error(double a, double b, double s) {
  double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}

} // namespace

namespace rounding {

double add_down(double a, double b) {
  double s = a + b;
  if (std::isinf(s)) {
    return (s > 0 && std::isfinite(a) && std::isfinite(b)) ? kMax : s;
  }
  return two_sum_error(a, b, s) < 0 ? next_down(s) : s;
}

double add_up(double a, double b) {
  double s = a + b;
  if (std::isinf(s)) {
    return (s < 0 && std::isfinite(a) && std::isfinite(b)) ? -kMax : s;
  }
  return two_sum_error(a, b, s) > 0 ? next_up(s) : s;
}

double sub_down(double a, double b) { return add_down(a, -b); }
double sub_up(double a, double b) { return add_up(a, -b); }

double mul_down(double a, double b) {
  if (a == 0.0 || b == 0.0) {
    return 0.0;
  }
  double p = a * b;
  if (std::isinf(p)) {
    return (p > 0 && std::isfinite(a) && std::isfinite(b)) ? kMax : p;
  }
  if (std::abs(p) < kTiny) {
    return next_down(p);
  }
  return std::fma(a, b, -p) < 0 ? next_down(p) : p;
}

double mul_up(double a, double b) {
  if (a == 0.0 || b == 0.0) {
    return 0.0;
  }
  double p = a * b;
  if (std::isinf(p)) {
    return (p < 0 && std::isfinite(a) && std::isfinite(b)) ? -kMax : p;
  }
  if (std::abs(p) < kTiny) {
    return next_up(p);
  }
  return std::fma(a, b, -p) > 0 ? next_up(p) : p;
}

namespace {
// Sign of (a / b - q) for q = fl(a / b); 0 when exact.
int quotient_error_sign(double a, double b, double q) {
  double r = std::fma(-q, b, a);
  if (r == 0.0) {
    return 0;
  }
  return ((r > 0) == (b > 0)) ? 1 : -1;
}
} // namespace

double div_down(double a, double b) {
  if (a == 0.0) {
    return 0.0;
  }
  double q = a / b;
  if (std::isinf(q)) {
    return (q > 0 && std::isfinite(a)) ? kMax : q;
  }
  if (std::abs(q) < kTiny || std::abs(a) < kTiny) {
    return next_down(q);
  }
  return quotient_error_sign(a, b, q) < 0 ? next_down(q) : q;
}

double div_up(double a, double b) {
  if (a == 0.0) {
    return 0.0;
  }
  double q = a / b;
  if (std::isinf(q)) {
    return (q < 0 && std::isfinite(a)) ? -kMax : q;
  }
  if (std::abs(q) < kTiny || std::abs(a) < kTiny) {
    return next_up(q);
  }
  return quotient_error_sign(a, b, q) > 0 ? next_up(q) : q;
}

double sqrt_down(double a) {
  if (a == 0.0) {
    return 0.0;
  }
  double r = std::sqrt(a);
  if (a < kTiny) {
    return std::max(0.0, next_down(r));
  }
  // a - r^2 < 0 means r overshoots
  return std::fma(-r, r, a) < 0 ? next_down(r) : r;
}

double sqrt_up(double a) {
  if (a == 0.0) {
    return 0.0;
  }
  double r = std::sqrt(a);
  if (a < kTiny) {
    return next_up(r);
  }
  return std::fma(-r, r, a) > 0 ? next_up(r) : r;
}

double widen_down(double v, int ulps) {
  for (int i = 0; i < ulps && std::isfinite(v); ++i) {
    v = next_down(v);
  }
  return v;
}

double widen_up(double v, int ulps) {
  for (int i = 0; i < ulps && std::isfinite(v); ++i) {
    v = next_up(v);
  }
  return v;
}

} // namespace rounding

using namespace rounding;

Interval make_unchecked(double lo, double hi) noexcept {
  return Interval(lo, hi, Interval::unchecked_tag{});
}

Interval::Interval(double point) : m_lo(point), m_hi(point) {
  if (std::isnan(point)) {
    throw ConstructionError("interval bound is NaN");
  }
}

Interval::Interval(double lo, double hi) : m_lo(lo), m_hi(hi) {
  if (std::isnan(lo) || std::isnan(hi)) {
    throw ConstructionError("interval bound is NaN");
  }
  if (lo > hi) {
    throw ConstructionError("interval bounds are reversed");
  }
}

Interval make_interval(double lo, double hi) { return Interval(lo, hi); }

double Interval::width() const noexcept { return sub_up(m_hi, m_lo); }

double Interval::mid() const noexcept {
  if (std::isinf(m_lo) || std::isinf(m_hi)) {
    return std::isinf(m_lo) && std::isinf(m_hi) ? 0.0
           : std::isinf(m_lo)                   ? -kMax
                                                : kMax;
  }
  double m = 0.5 * m_lo + 0.5 * m_hi;
  return std::clamp(m, m_lo, m_hi);
}

double Interval::mag() const noexcept {
  return std::max(std::abs(m_lo), std::abs(m_hi));
}

double Interval::mig() const noexcept {
  if (contains(0.0)) {
    return 0.0;
  }
  return std::min(std::abs(m_lo), std::abs(m_hi));
}

Interval &Interval::operator+=(const Interval &rhs) {
  return *this = *this + rhs;
}
Interval &Interval::operator-=(const Interval &rhs) {
  return *this = *this - rhs;
}
Interval &Interval::operator*=(const Interval &rhs) {
  return *this = *this * rhs;
}
Interval &Interval::operator/=(const Interval &rhs) {
  return *this = *this / rhs;
}

Interval operator-(const Interval &a) { return make_unchecked(-a.hi(), -a.lo()); }

Interval operator+(const Interval &a, const Interval &b) {
  return make_unchecked(add_down(a.lo(), b.lo()), add_up(a.hi(), b.hi()));
}

Interval operator-(const Interval &a, const Interval &b) {
  return make_unchecked(sub_down(a.lo(), b.hi()), sub_up(a.hi(), b.lo()));
}

Interval operator*(const Interval &a, const Interval &b) {
  double lo = std::min({mul_down(a.lo(), b.lo()), mul_down(a.lo(), b.hi()),
                        mul_down(a.hi(), b.lo()), mul_down(a.hi(), b.hi())});
  double hi = std::max({mul_up(a.lo(), b.lo()), mul_up(a.lo(), b.hi()),
                        mul_up(a.hi(), b.lo()), mul_up(a.hi(), b.hi())});
  return make_unchecked(lo, hi);
}

Interval operator/(const Interval &a, const Interval &b) {
  if (b.contains(0.0)) {
    throw DomainError("interval division by an interval containing zero");
  }
  double lo = std::min({div_down(a.lo(), b.lo()), div_down(a.lo(), b.hi()),
                        div_down(a.hi(), b.lo()), div_down(a.hi(), b.hi())});
  double hi = std::max({div_up(a.lo(), b.lo()), div_up(a.lo(), b.hi()),
                        div_up(a.hi(), b.lo()), div_up(a.hi(), b.hi())});
  return make_unchecked(lo, hi);
}

Interval operator+(const Interval &a, double b) { return a + Interval(b); }
Interval operator+(double a, const Interval &b) { return Interval(a) + b; }
Interval operator-(const Interval &a, double b) { return a - Interval(b); }
Interval operator-(double a, const Interval &b) { return Interval(a) - b; }
Interval operator*(const Interval &a, double b) { return a * Interval(b); }
Interval operator*(double a, const Interval &b) { return Interval(a) * b; }
Interval operator/(const Interval &a, double b) { return a / Interval(b); }
Interval operator/(double a, const Interval &b) { return Interval(a) / b; }

Interval hull(const Interval &a, const Interval &b) {
  return make_unchecked(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

Interval sqr(const Interval &a) {
  if (a.lo() >= 0.0) {
    return make_unchecked(mul_down(a.lo(), a.lo()), mul_up(a.hi(), a.hi()));
  }
  if (a.hi() <= 0.0) {
    return make_unchecked(mul_down(a.hi(), a.hi()), mul_up(a.lo(), a.lo()));
  }
  double m = a.mag();
  return make_unchecked(0.0, mul_up(m, m));
}

namespace {

// v^n for v >= 0 with the given rounding; all factors are non-negative so
// rounding every product in one direction bounds the result.
double pow_nonneg_down(double v, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) {
    r = mul_down(r, v);
  }
  return r;
}

double pow_nonneg_up(double v, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) {
    r = mul_up(r, v);
  }
  return r;
}

double odd_pow_down(double v, int n) {
  return v >= 0.0 ? pow_nonneg_down(v, n) : -pow_nonneg_up(-v, n);
}

double odd_pow_up(double v, int n) {
  return v >= 0.0 ? pow_nonneg_up(v, n) : -pow_nonneg_down(-v, n);
}

} // namespace

Interval pow_int(const Interval &a, int n) {
  if (n == 0) {
    return Interval(1.0);
  }
  if (n == 1) {
    return a;
  }
  if (n < 0) {
    if (a.contains(0.0)) {
      throw DomainError("negative power of an interval containing zero");
    }
    return Interval(1.0) / pow_int(a, -n);
  }
  if (n % 2 == 0) {
    return make_unchecked(pow_nonneg_down(a.mig(), n),
                          pow_nonneg_up(a.mag(), n));
  }
  return make_unchecked(odd_pow_down(a.lo(), n), odd_pow_up(a.hi(), n));
}

Interval sqrt(const Interval &a) {
  if (a.lo() < 0.0) {
    throw DomainError("sqrt of an interval with negative members");
  }
  return make_unchecked(sqrt_down(a.lo()), sqrt_up(a.hi()));
}

Interval exp(const Interval &a) {
  double lo = widen_down(std::exp(a.lo()), kTranscendentalUlps);
  double hi = widen_up(std::exp(a.hi()), kTranscendentalUlps);
  return make_unchecked(std::max(0.0, lo), hi);
}

Interval log(const Interval &a) {
  if (a.lo() <= 0.0) {
    throw DomainError("log of an interval with non-positive members");
  }
  return make_unchecked(widen_down(std::log(a.lo()), kTranscendentalUlps),
                        widen_up(std::log(a.hi()), kTranscendentalUlps));
}

namespace {

// Whether some point c + 2k*pi may lie in [lo, hi]. Errs towards true.
bool may_contain_critical_point(double lo, double hi, double c) {
  double slack = 8.0 * kEps * std::max({1.0, std::abs(lo), std::abs(hi)});
  double k = std::ceil((lo - slack - c) / kTwoPi);
  for (double j : {k - 1.0, k}) {
    double p = c + j * kTwoPi;
    if (p >= lo - slack && p <= hi + slack) {
      return true;
    }
  }
  return false;
}

Interval periodic_range(const Interval &a, double (*f)(double), double peak,
                        double trough) {
  if (!(a.width() < kTwoPi)) {
    return make_unchecked(-1.0, 1.0);
  }
  double v1 = f(a.lo());
  double v2 = f(a.hi());
  double lo = widen_down(std::min(v1, v2), kTranscendentalUlps);
  double hi = widen_up(std::max(v1, v2), kTranscendentalUlps);
  if (may_contain_critical_point(a.lo(), a.hi(), peak)) {
    hi = 1.0;
  }
  if (may_contain_critical_point(a.lo(), a.hi(), trough)) {
    lo = -1.0;
  }
  return make_unchecked(std::max(lo, -1.0), std::min(hi, 1.0));
}

} // namespace

Interval sin(const Interval &a) {
  return periodic_range(
      a, [](double v) { return std::sin(v); }, 0.5 * std::numbers::pi,
      -0.5 * std::numbers::pi);
}

Interval cos(const Interval &a) {
  return periodic_range(
      a, [](double v) { return std::cos(v); }, 0.0, std::numbers::pi);
}

std::ostream &operator<<(std::ostream &os, const Interval &a) {
  auto old = os.precision(17);
  os << '[' << a.lo() << ", " << a.hi() << ']';
  os.precision(old);
  return os;
}

} // namespace daeo
